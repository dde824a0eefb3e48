#pragma once

// Cone partitions around a vertex and the predicates built on them.
//
// Conventions used throughout the library:
//   * headings are measured clockwise from the positive y axis ("up") and
//     live in [0, 2*pi);
//   * cone i of a vertex covers headings [i*theta - theta/2, i*theta + theta/2)
//     so cone 0 is bisected by the vertical half-line above the apex and the
//     indices increase clockwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otheta/errors.hpp"

namespace otheta {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Headings closer than this (radians) to a cone boundary or to a
/// bisector-perpendicular direction are treated as degenerate.
inline constexpr double kAngularTolerance = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Unit vector with the given clockwise-from-up heading.
inline Point unit(double heading) { return {std::sin(heading), std::cos(heading)}; }

/// Wraps an angle into [0, 2*pi).
inline double wrap_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_signed(double a) {
    double r = wrap_two_pi(a);
    return r > kPi ? r - kTwoPi : r;
}

/// Clockwise-from-up heading of the vector from `from` to `to`.
inline double heading(Point from, Point to) {
    const Point d = to - from;
    return wrap_two_pi(std::atan2(d.x, d.y));
}

/// Unsigned angle at `vertex` between rays vertex->a and vertex->b, in [0, pi].
inline double angle_at(Point vertex, Point a, Point b) {
    const Point da = a - vertex;
    const Point db = b - vertex;
    return std::abs(std::atan2(cross(da, db), dot(da, db)));
}

/// Cone count m together with its aperture theta = 2*pi/m.
class ConeSystem {
public:
    explicit ConeSystem(int cones) : cones_(cones) {
        if (cones < 3) {
            throw Error(ErrorKind::InvalidConeCount,
                        "a cone system needs at least 3 cones, got " + std::to_string(cones));
        }
        theta_ = kTwoPi / cones;
    }

    int cones() const noexcept { return cones_; }
    double theta() const noexcept { return theta_; }
    double half_theta() const noexcept { return 0.5 * theta_; }

    double bisector_heading(int cone) const { return wrap_two_pi(cone * theta_); }
    /// Heading of the boundary ray counterclockwise of the bisector.
    double ccw_boundary_heading(int cone) const { return wrap_two_pi(cone * theta_ - half_theta()); }
    /// Heading of the boundary ray clockwise of the bisector.
    double cw_boundary_heading(int cone) const { return wrap_two_pi(cone * theta_ + half_theta()); }
    Point bisector(int cone) const { return unit(cone * theta_); }

    /// Cone containing the given heading, without any degeneracy checks.
    int cone_of_heading(double h) const {
        const int i = static_cast<int>(std::floor((wrap_two_pi(h) + half_theta()) / theta_));
        return i % cones_;
    }

    /// Angular distance from `h` to the nearest cone boundary ray.
    double boundary_clearance(double h) const {
        const double pos = (wrap_two_pi(h) + half_theta()) / theta_;
        return std::abs(pos - std::round(pos)) * theta_;
    }

    friend bool operator==(const ConeSystem& a, const ConeSystem& b) { return a.cones_ == b.cones_; }

private:
    int cones_;
    double theta_;
};

namespace detail {

inline bool coincident(Point a, Point b) {
    const double scale = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
    return distance(a, b) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

inline void require_finite(Point p) {
    if (!is_finite(p)) throw Error(ErrorKind::InvalidArgument, "point coordinates must be finite");
}

}  // namespace detail

/// Index of the cone of `apex` that strictly contains `target`.
inline int cone_index(const ConeSystem& system, Point apex, Point target) {
    detail::require_finite(apex);
    detail::require_finite(target);
    if (apex == target || detail::coincident(apex, target)) {
        throw Error(ErrorKind::DuplicatePoint, "apex and target coincide");
    }
    const double h = heading(apex, target);
    if (system.boundary_clearance(h) < kAngularTolerance) {
        throw Error(ErrorKind::BoundaryDegeneracy, "target lies on a cone boundary ray of the apex");
    }
    return system.cone_of_heading(h);
}

/// Length of the projection of apex->target onto the bisector of the cone
/// containing target. Always positive.
inline double bisector_distance(const ConeSystem& system, Point apex, Point target) {
    const int cone = cone_index(system, apex, target);
    return dot(target - apex, system.bisector(cone));
}

/// Triangle bounded by the two boundary rays of the apex's cone containing
/// the target and the line through the target perpendicular to that cone's
/// bisector.
struct CanonicalTriangle {
    Point apex;
    Point target;
    int cone_index = 0;
    Point corner_left;   // counterclockwise of the bisector, seen from the apex
    Point corner_right;  // clockwise of the bisector
    Point midpoint;      // midpoint of the side opposite the apex
    double alpha = 0.0;  // unsigned angle between apex->target and apex->midpoint

    /// Apex-to-bisector-foot distance (the projection length).
    double height() const { return distance(apex, midpoint); }

    /// Whether p lies in the closed triangle, up to a relative tolerance.
    bool contains(Point p, double rel_tol = 1e-12) const {
        const double scale = std::max(distance(apex, corner_left), distance(apex, corner_right));
        const double tol = rel_tol * scale * scale;
        const double c1 = cross(corner_left - apex, p - apex);
        const double c2 = cross(corner_right - corner_left, p - corner_left);
        const double c3 = cross(apex - corner_right, p - corner_right);
        const bool neg = c1 < -tol || c2 < -tol || c3 < -tol;
        const bool pos = c1 > tol || c2 > tol || c3 > tol;
        return !(neg && pos);
    }
};

inline CanonicalTriangle canonical_triangle(const ConeSystem& system, Point apex, Point target) {
    const int cone = cone_index(system, apex, target);
    const double height = dot(target - apex, system.bisector(cone));
    const double side = height / std::cos(system.half_theta());
    CanonicalTriangle t;
    t.apex = apex;
    t.target = target;
    t.cone_index = cone;
    t.corner_left = apex + side * unit(cone * system.theta() - system.half_theta());
    t.corner_right = apex + side * unit(cone * system.theta() + system.half_theta());
    t.midpoint = apex + height * system.bisector(cone);
    t.alpha = std::abs(wrap_signed(heading(apex, target) - cone * system.theta()));
    return t;
}

enum class ViolationKind { BoundaryParallel, BisectorPerpendicular, Duplicate };

constexpr std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::BoundaryParallel: return "boundary-parallel";
        case ViolationKind::BisectorPerpendicular: return "bisector-perpendicular";
        case ViolationKind::Duplicate: return "duplicate";
    }
    return "unknown";
}

struct Violation {
    std::size_t first = 0;
    std::size_t second = 0;
    ViolationKind kind = ViolationKind::Duplicate;
};

struct GeneralPositionReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Classifies the undirected line through a and b; empty optional when the
/// direction is in general position for the system.
inline std::optional<ViolationKind> classify_pair(const ConeSystem& system, Point a, Point b) {
    if (a == b || detail::coincident(a, b)) return ViolationKind::Duplicate;
    // Both families of forbidden directions are taken modulo pi (lines, not rays).
    const double line = std::fmod(heading(a, b), kPi);
    const auto clearance = [&](double offset) {
        double best = kPi;
        for (int i = 0; i < system.cones(); ++i) {
            const double forbidden = std::fmod(wrap_two_pi(i * system.theta() + offset), kPi);
            double d = std::abs(line - forbidden);
            d = std::min(d, kPi - d);
            best = std::min(best, d);
        }
        return best;
    };
    if (clearance(0.5 * kPi) < kAngularTolerance) return ViolationKind::BisectorPerpendicular;
    if (clearance(system.half_theta()) < kAngularTolerance) return ViolationKind::BoundaryParallel;
    return std::nullopt;
}

inline GeneralPositionReport check_general_position(const ConeSystem& system, std::span<const Point> points) {
    GeneralPositionReport report;
    for (std::size_t i = 0; i < points.size(); ++i) {
        detail::require_finite(points[i]);
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (auto kind = classify_pair(system, points[i], points[j])) {
                report.violations.push_back({i, j, *kind});
            }
        }
    }
    return report;
}

/// Thrown when an operation requires general position and the input lacks it.
class GeneralPositionError : public Error {
public:
    explicit GeneralPositionError(GeneralPositionReport report)
        : Error(ErrorKind::GeneralPositionViolation, describe(report)), report_(std::move(report)) {}

    const GeneralPositionReport& report() const noexcept { return report_; }

private:
    static std::string describe(const GeneralPositionReport& r) {
        std::string s = std::to_string(r.violations.size()) + " violation(s)";
        if (!r.violations.empty()) {
            const auto& v = r.violations.front();
            s += ", first: vertices " + std::to_string(v.first) + " and " + std::to_string(v.second) + " (" +
                 std::string(to_string(v.kind)) + ")";
        }
        return s;
    }

    GeneralPositionReport report_;
};

}  // namespace otheta
