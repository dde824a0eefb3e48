#pragma once

// Adversarial point sets and insertion orders, plus seeded random instances.
//
// All constructions use |uw| = 1. "Arbitrarily close" placements are offset
// by eps (relative to the local scale) into the permitted region, then every
// point receives a seeded jitter of eps/100 of its local scale.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "otheta/bounds.hpp"
#include "otheta/construction.hpp"
#include "otheta/errors.hpp"
#include "otheta/geometry.hpp"

namespace otheta {

inline constexpr double kDefaultEps = 1e-6;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kResampleBudget = 1'000'000;

/// Parameters a generator was called with. Only the relevant ones are set.
struct GeneratorParams {
    std::string generator;
    std::optional<int> steps;
    std::optional<int> reps;
    std::optional<int> n;
    std::optional<double> eps;
    std::optional<std::uint64_t> seed;
    std::optional<double> box;

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct GeneratedInstance {
    ConeSystem system{3};
    std::vector<Point> points;
    InsertionOrder order;
    BoundFamily family;
    GeneratorParams params;
    std::vector<std::string> labels;

    std::size_t index_of(const std::string& label) const {
        const auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw Error(ErrorKind::InvalidVertex, "no vertex labelled '" + label + "'");
        return static_cast<std::size_t>(it - labels.begin());
    }
};

namespace detail {

inline Point intersect(Point p, Point d, Point q, Point e) {
    const double det = cross(d, e);
    if (std::abs(det) < 1e-300) throw Error(ErrorKind::DegenerateAngle, "construction lines are parallel");
    return p + (cross(q - p, e) / det) * d;
}

inline void require_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1e-3)) {
        throw Error(ErrorKind::BadEps, "eps must lie in (0, 1e-3], got " + std::to_string(eps));
    }
}

inline void require_positive(int count, const char* what) {
    if (count < 1) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be at least 1");
}

/// Point near one corner of T(apex, target), pulled inside by delta both in
/// projection and in angle. side = -1 picks the counterclockwise corner,
/// side = +1 the clockwise one.
inline Point near_corner(const ConeSystem& s, Point apex, Point target, int side, double delta) {
    const int cone = cone_index(s, apex, target);
    const double proj = dot(target - apex, s.bisector(cone)) * (1.0 - delta);
    const double h = cone * s.theta() + side * (s.half_theta() - delta);
    return apex + (proj / std::cos(s.half_theta() - delta)) * unit(h);
}

/// Collects labelled points and the insertion order by label.
class Builder {
public:
    void add(std::string label, Point p, double scale) {
        index_[label] = points_.size();
        labels_.push_back(std::move(label));
        points_.push_back(p);
        scales_.push_back(scale);
    }
    Point at(const std::string& label) const { return points_[index_.at(label)]; }

    void jitter(double eps, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit_box(-1.0, 1.0);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double r = eps / 100.0 * scales_[i];
            const double dx = unit_box(rng);
            const double dy = unit_box(rng);
            points_[i] = points_[i] + r * Point{dx, dy};
        }
    }

    GeneratedInstance finish(const ConeSystem& system, const std::vector<std::string>& order_labels,
                             BoundFamily family, GeneratorParams params) const {
        std::vector<std::size_t> order;
        order.reserve(order_labels.size());
        for (const auto& l : order_labels) order.push_back(index_.at(l));
        GeneratedInstance inst{system, points_, InsertionOrder(std::move(order)), family, std::move(params), labels_};
        auto report = check_general_position(system, inst.points);
        if (!report.ok()) throw GeneralPositionError(std::move(report));
        return inst;
    }

private:
    std::vector<Point> points_;
    std::vector<double> scales_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline std::string v(int i) { return "v" + std::to_string(i); }
inline std::string l(int i) { return "l" + std::to_string(i); }
inline std::string r(int i) { return "r" + std::to_string(i); }

/// Staircase between line A (through u, at the left boundary of C0 of u)
/// and line B (through w, at angle beta above wu's supplement). v1 sits in
/// the left corner of T(u, w), v2 in the upper corner of T(w, v1) on line B;
/// the remaining steps are images of (v1, v2) under the homothety centred at
/// the lines' intersection x that maps (u, w) to (v1, v2). Coordinates are
/// returned relative to x.
struct TwoLineStaircase {
    Point u, w, v1, v2;
    double ratio;
};

inline TwoLineStaircase two_line_staircase(const ConeSystem& s, double beta, double delta) {
    const double h = s.half_theta();
    const Point u{0.0, 0.0};
    const Point w = unit(h - delta);
    const Point line_a = unit(-h + delta);
    const Point v1 = intersect(u, line_a, w, unit(1.5 * kPi - delta));
    const Point line_b = unit(1.5 * kPi + beta - delta);
    const Point bis = s.bisector(cone_index(s, w, v1));
    const double t = (1.0 - delta) * dot(v1 - w, bis) / dot(line_b, bis);
    const Point v2 = w + t * line_b;
    const Point x = intersect(u, line_a, w, line_b);
    return {u - x, w - x, v1 - x, v2 - x, distance(x, v2) / distance(x, w)};
}

}  // namespace detail

namespace detail {

inline GeneratedInstance staircase_instance(const ConeSystem& s, BoundFamily family, double beta, int steps,
                                            double eps, std::uint64_t seed, const char* name) {
    const auto st = two_line_staircase(s, beta, eps);
    Builder b;
    b.add("u", st.u, 1.0);
    b.add("w", st.w, 1.0);
    double f = 1.0;
    for (int j = 0; j < steps; ++j) {
        b.add(v(2 * j + 1), f * st.v1, f * norm(st.v1));
        b.add(v(2 * j + 2), f * st.v2, f * norm(st.v2));
        f *= st.ratio;
    }
    b.jitter(eps, seed);
    std::vector<std::string> order;
    for (int i = 2 * steps; i >= 1; --i) order.push_back(v(i));
    order.push_back("w");
    order.push_back("u");
    GeneratorParams params{name, steps, std::nullopt, std::nullopt, eps, seed, std::nullopt};
    return b.finish(s, order, family, std::move(params));
}

}  // namespace detail

/// Angle at w between line B and the ray w->u, minus (pi - theta)/2, as
/// realised by the vertices u, w, v2 of a staircase instance.
inline double realized_beta(const GeneratedInstance& inst) {
    const Point u = inst.points[inst.index_of("u")];
    const Point w = inst.points[inst.index_of("w")];
    const Point v2 = inst.points[inst.index_of("v2")];
    return angle_at(w, u, v2) - (kPi - inst.system.theta()) / 2;
}

inline GeneratedInstance gen_staircase_4k4(int m, int steps, double eps = kDefaultEps,
                                           std::uint64_t seed = kDefaultSeed) {
    const BoundFamily family = classify(m);
    if (family.family != Family::F4k4) {
        throw Error(ErrorKind::InvalidFamily, "the 4k+4 staircase needs m = 0 mod 4 and m >= 8");
    }
    detail::require_positive(steps, "steps");
    detail::require_eps(eps);
    const ConeSystem s(m);
    return detail::staircase_instance(s, family, s.half_theta(), steps, eps, seed, "staircase_4k4");
}

/// Tolerance on the realised staircase angle of the odd-family generators.
inline constexpr double kBetaTolerance = 1e-6;

inline GeneratedInstance gen_staircase_odd(int m, int steps, double eps = kDefaultEps,
                                           std::uint64_t seed = kDefaultSeed) {
    const BoundFamily family = classify(m);
    if (family.family != Family::F4k3 && family.family != Family::F4k5) {
        throw Error(ErrorKind::InvalidFamily, "the odd staircase needs m = 3 or 1 mod 4 and m >= 7");
    }
    detail::require_positive(steps, "steps");
    detail::require_eps(eps);
    const ConeSystem s(m);
    const double beta = staircase_beta(m);
    auto inst = detail::staircase_instance(s, family, beta, steps, eps, seed, "staircase_odd");
    const double got = realized_beta(inst);
    if (!(std::abs(got - beta) <= kBetaTolerance)) {
        throw Error(ErrorKind::BetaRealizationFailure,
                    "realised beta " + std::to_string(got) + " differs from " + std::to_string(beta));
    }
    return inst;
}

/// Offsets of the six-point configuration in units of eps (lengths also in
/// units of |w v1|). With eps = 1e-6 the ordered graph keeps every staircase
/// edge for m = 10 ... 98; the smallest offset sits a few times above the
/// angular tolerance, so eps below 1e-6 is rejected as degenerate.
struct Gadget4k2 {
    double line_margin = 438.95;  // angular margin of lines A and B
    double v1_drop = 2.4591e-3;   // v1 below w
    double l1_dist = 0.250283;    // |v1 l1|
    double l1_turn = 0.492902;    // direction of l1 inside its cone, in units of theta
    double v2_pull = 0.111678;    // v2 projection shortfall
    double l2_dist = 1.55093e-2;  // |v1 l2|
    double l2_turn = 0.858774;
    double r1_dist = 3.3644;      // |v2 r1|
    double r1_turn = 0.871237;
    double v3_drop = 1.96736e-3;  // v3 below r1
    double r2_pull = 16.7111;     // r2 shortfall from line B
};

namespace detail {

struct SixPoint {
    Point u, w, v1, l1, v2, l2, r1, v3, r2;
    double ratio;
};

inline SixPoint six_point_configuration(const ConeSystem& s, double eps, const Gadget4k2& g) {
    const double th = s.theta();
    const double h = s.half_theta();
    const double margin = g.line_margin * eps;
    const Point u{0.0, 0.0};
    const Point w = unit(h - margin);
    const Point line_a = unit(-h + margin);
    const Point line_b = unit(1.5 * kPi + th - margin);
    const auto on_line_a = [&](double height) { return (height / line_a.y) * line_a; };
    const auto inside = [&](Point apex, Point target, double turn) {
        return unit(cone_index(s, apex, target) * th - h + turn * th);
    };

    const double scale = 2.0 * std::sin(h);  // |w v1| up to O(eps)
    const Point v1 = on_line_a(w.y - g.v1_drop * eps * scale);
    const Point l1 = v1 + (g.l1_dist * eps * scale) * inside(v1, w, g.l1_turn);
    const Point bis = s.bisector(cone_index(s, w, l1));
    const Point v2 = w + ((1.0 - g.v2_pull * eps) * dot(l1 - w, bis) / dot(line_b, bis)) * line_b;
    const Point l2 = v1 + (g.l2_dist * eps * scale) * inside(v1, v2, g.l2_turn);
    const Point r1 = v2 + (g.r1_dist * eps * scale) * inside(v2, l2, g.r1_turn);
    const Point v3 = on_line_a(r1.y - g.v3_drop * eps * scale);
    const Point dir = (1.0 / scale) * (w - v1);
    const Point hit = intersect(v3, dir, w, line_b);
    const Point r2 = v3 + ((1.0 - g.r2_pull * eps) * distance(v3, hit)) * dir;
    // Homothety centre: maps v1 to v3 and w to r2.
    const Point x = intersect(w, r2 - w, v1, v3 - v1);
    return {u - x, w - x, v1 - x, l1 - x, v2 - x, l2 - x, r1 - x, v3 - x, r2 - x,
            distance(x, v3) / distance(x, v1)};
}

}  // namespace detail

inline GeneratedInstance gen_staircase_4k2(int m, int reps, double eps = kDefaultEps,
                                           std::uint64_t seed = kDefaultSeed, const Gadget4k2& gadget = {}) {
    const BoundFamily family = classify(m);
    if (family.family != Family::F4k2) {
        throw Error(ErrorKind::InvalidFamily, "the 4k+2 staircase needs m = 2 mod 4 and m >= 10");
    }
    detail::require_positive(reps, "reps");
    detail::require_eps(eps);
    const ConeSystem s(m);
    const auto c = detail::six_point_configuration(s, eps, gadget);
    using detail::l, detail::r, detail::v;
    detail::Builder b;
    b.add("u", c.u, 1.0);
    b.add("w", c.w, 1.0);
    b.add("v1", c.v1, 1.0);
    double f = 1.0;
    for (int i = 1; i <= reps; ++i) {
        const double sc = f * norm(c.v1);
        b.add(l(2 * i - 1), f * c.l1, sc);
        b.add(v(2 * i), f * c.v2, sc);
        b.add(l(2 * i), f * c.l2, sc);
        b.add(r(2 * i - 1), f * c.r1, sc);
        b.add(v(2 * i + 1), f * c.v3, sc);
        b.add(r(2 * i), f * c.r2, sc);
        f *= c.ratio;
    }
    // The smallest offset is far below eps; the jitter is scaled to it.
    b.jitter(gadget.v1_drop * eps, seed);
    std::vector<std::string> order;
    for (int i = reps; i >= 1; --i) {
        for (auto lab : {r(2 * i), r(2 * i - 1), v(2 * i + 1), l(2 * i), l(2 * i - 1), v(2 * i)}) {
            order.push_back(lab);
        }
    }
    order.insert(order.end(), {"w", "v1", "u"});
    GeneratorParams params{"staircase_4k2", std::nullopt, reps, std::nullopt, eps, seed, std::nullopt};
    return b.finish(s, order, family, std::move(params));
}

namespace detail {

inline GeneratedInstance corner_tower(const ConeSystem& s, double phi, int n, double eps, std::uint64_t seed) {
    Builder b;
    const Point u{0.0, 0.0};
    const Point w = unit(phi);
    b.add("u", u, 1.0);
    b.add("w", w, 1.0);
    Point prev2 = u, prev1 = w;
    for (int i = 1; i <= n; ++i) {
        const Point p = near_corner(s, prev2, prev1, i % 2 == 1 ? -1 : +1, eps);
        b.add(v(i), p, distance(p, prev1));
        prev2 = prev1;
        prev1 = p;
    }
    b.jitter(eps, seed);
    std::vector<std::string> order;
    for (int i = n; i >= 1; --i) order.push_back(v(i));
    order.insert(order.end(), {"w", "u"});
    return b.finish(s, order, classify(s.cones()), {"tower", std::nullopt, std::nullopt, n, eps, seed, std::nullopt});
}

// Three cones: the corner rule would multiply lengths, so the steps are laid
// out directly. Odd vertices walk from u and even ones from w along
// (nearly) the same direction, each step of length sqrt(3)/2; w is chosen
// with |uw| = 1 and |w v1| = 1 so that every hop of the path is sqrt(3)/2
// except the first.
inline GeneratedInstance tower3(const ConeSystem& s, int n, double eps, std::uint64_t seed) {
    const double a = (-3.0 + std::sqrt(13.0)) / 8.0;
    const Point u{0.0, 0.0};
    const Point w{a, std::sqrt(3.0) * a + std::sqrt(3.0) / 2.0};
    const double step = std::sqrt(3.0) / 2.0;
    const Point from_u = step * unit(-kPi / 3 + eps);
    const Point from_w = step * unit(-kPi / 3 - eps);
    Builder b;
    b.add("u", u, 1.0);
    b.add("w", w, 1.0);
    for (int i = 1; i <= n; ++i) {
        const int j = (i + 1) / 2;
        b.add(v(i), i % 2 == 1 ? u + j * from_u : w + j * from_w, 1.0);
    }
    b.jitter(eps, seed);
    std::vector<std::string> order;
    for (int i = n; i >= 1; --i) order.push_back(v(i));
    order.insert(order.end(), {"w", "u"});
    return b.finish(s, order, classify(3), {"tower", std::nullopt, std::nullopt, n, eps, seed, std::nullopt});
}

inline GeneratedInstance tower6(const ConeSystem& s, int n, double eps, std::uint64_t seed) {
    const double th = s.theta();
    const double nudge = 5.0 * eps;
    const Point u{0.0, 0.0};
    const Point w = unit(s.half_theta() - eps);
    const Point v1 = near_corner(s, u, w, -1, eps);
    Builder b;
    b.add("u", u, 1.0);
    b.add("w", w, 1.0);
    b.add("v1", v1, 1.0);
    Point top_right = w, top_left = v1;
    for (int i = 1; i <= n; ++i) {
        const Point li = top_left + nudge * unit(cone_index(s, top_left, top_right) * th);
        const Point even = near_corner(s, top_right, li, +1, eps);
        const Point ri = even + nudge * unit(cone_index(s, even, li) * th);
        const Point odd = near_corner(s, li, ri, -1, eps);
        b.add(l(i), li, 1.0);
        b.add(v(2 * i), even, 1.0);
        b.add(r(i), ri, 1.0);
        b.add(v(2 * i + 1), odd, 1.0);
        top_right = ri;
        top_left = odd;
    }
    b.jitter(eps, seed);
    std::vector<std::string> order;
    for (int i = n; i >= 1; --i) {
        for (auto lab : {r(i), v(2 * i + 1), l(i), v(2 * i)}) order.push_back(lab);
    }
    order.insert(order.end(), {"w", "v1", "u"});
    return b.finish(s, order, classify(6), {"tower", std::nullopt, std::nullopt, n, eps, seed, std::nullopt});
}

}  // namespace detail

/// Non-spanner tower with n steps (n four-vertex configurations for m = 6).
inline GeneratedInstance gen_tower(int m, int n, double eps = kDefaultEps, std::uint64_t seed = kDefaultSeed) {
    if (m < 3) throw Error(ErrorKind::InvalidConeCount, "cone count must be at least 3");
    if (m > 6) throw Error(ErrorKind::NotATower, "towers exist only for 3 to 6 cones, got " + std::to_string(m));
    detail::require_positive(n, "n");
    detail::require_eps(eps);
    const ConeSystem s(m);
    switch (m) {
        case 3: return detail::tower3(s, n, eps, seed);
        case 4: return detail::corner_tower(s, 10.0 * eps, n, eps, seed);
        // uw at pi/10 from the bisector is itself perpendicular to a bisector
        // for five cones, so it is moved off by eps.
        case 5: return detail::corner_tower(s, kPi / 10 - eps, n, eps, seed);
        default: return detail::tower6(s, n, eps, seed);
    }
}

/// n uniform points in [0, box]^2 in general position, inserted in a seeded
/// random order. Offending points are redrawn individually.
inline GeneratedInstance gen_random(int m, int n, std::uint64_t seed, double box = 1.0) {
    const ConeSystem s(m);
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "random instances need at least 2 points");
    if (!(box > 0.0) || !std::isfinite(box)) throw Error(ErrorKind::InvalidArgument, "box must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, box);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    std::size_t attempts = 0;
    while (pts.size() < static_cast<std::size_t>(n)) {
        if (++attempts > kResampleBudget) {
            throw Error(ErrorKind::ResampleBudgetExceeded, "could not place points in general position");
        }
        const double x = coord(rng);
        const double y = coord(rng);
        const Point p{x, y};
        const bool ok = std::none_of(pts.begin(), pts.end(), [&](Point q) { return classify_pair(s, p, q); });
        if (ok) pts.push_back(p);
    }
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return {s, std::move(pts), InsertionOrder(std::move(order)), classify(m),
            {"random", std::nullopt, std::nullopt, n, std::nullopt, seed, box}, std::move(labels)};
}

}  // namespace otheta
