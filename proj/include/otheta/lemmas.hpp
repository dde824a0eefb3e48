#pragma once

// Numeric checks of the two four-point inequalities used by the 4k+4 path
// bound. Configurations: u at the origin, w in cone 0 of u with |uw| = 1,
// and v uniform in T(u, w) strictly left of w. The point a is where the left
// boundary of cone 0 of v meets the side of T(u, w) opposite u; c and d are
// the corners of T(v, w) opposite v (c counterclockwise, i.e. upper).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>

#include "otheta/errors.hpp"
#include "otheta/geometry.hpp"

namespace otheta {

struct FourPointConfiguration {
    int m = 0;
    Point u, w, v, a, c, d;
    int cone = 0;       // cone of v containing w
    double beta = 0.0;  // angle a-w-v
    double gamma = 0.0; // angle between vw and the bisector of T(v, w)
};

/// Builds the configuration for given m, heading of w and position of v.
/// Empty when v is not strictly inside T(u, w) left of w, or when w sits on a
/// cone boundary of v.
inline std::optional<FourPointConfiguration> four_point_configuration(int m, double w_heading, Point v) {
    const ConeSystem s(m);
    FourPointConfiguration f;
    f.m = m;
    f.w = unit(w_heading);
    f.v = v;
    const double top = f.w.y;
    if (!(v.y > 0.0 && v.y < top && std::abs(v.x) < v.y * std::tan(s.half_theta()) && v.x < f.w.x)) {
        return std::nullopt;
    }
    try {
        const auto tri = canonical_triangle(s, v, f.w);
        f.cone = tri.cone_index;
        f.c = tri.corner_left;
        f.d = tri.corner_right;
        f.gamma = tri.alpha;
    } catch (const Error&) {
        return std::nullopt;
    }
    const Point left = unit(-s.half_theta());
    f.a = v + ((top - v.y) / left.y) * left;
    f.beta = angle_at(f.w, f.a, f.v);
    return f;
}

namespace detail {
inline constexpr double kLemmaTolerance = 1e-9;
}

/// Index k with m = 4k+2, 4k+3, 4k+4 or 4k+5.
inline int family_k(int m) { return (m - 2) / 4; }

inline bool path_inequality_applies(const FourPointConfiguration& f) {
    const int k = family_k(f.m);
    return (f.cone >= 1 && f.cone <= k - 1) ||
           (f.cone == k && distance(f.c, f.w) <= distance(f.d, f.w));
}

/// Slack of both conclusions (negative means violated beyond rounding).
struct PathInequalitySlack {
    double path = 0.0;    // |va| + |aw| - max{|vc| + |cw|, |vd| + |dw|}
    double corner = 0.0;  // |aw| - max{|cw|, |dw|}
};

inline PathInequalitySlack path_inequality_slack(const FourPointConfiguration& f) {
    const double cw = distance(f.c, f.w), dw = distance(f.d, f.w);
    const double lhs = std::max(distance(f.v, f.c) + cw, distance(f.v, f.d) + dw);
    const double aw = distance(f.a, f.w);
    return {distance(f.v, f.a) + aw - lhs, aw - std::max(cw, dw)};
}

/// Smallest constant the second inequality asks for; empty when no positive
/// constant is admissible (non-positive denominator).
inline std::optional<double> weighted_threshold(const FourPointConfiguration& f) {
    const double h = kPi / f.m;
    const double den = std::cos(h - f.beta) - std::sin(h + f.gamma);
    if (!(den > 0.0)) return std::nullopt;
    return (std::cos(f.gamma) - std::sin(f.beta)) / den;
}

inline double weighted_slack(const FourPointConfiguration& f, double c) {
    const double lhs = std::max(distance(f.v, f.c) + c * distance(f.c, f.w), distance(f.v, f.d) + c * distance(f.d, f.w));
    return distance(f.v, f.a) + c * distance(f.a, f.w) - lhs;
}

struct LemmaSuiteResult {
    int checked = 0;
    int violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
};

/// Draws a configuration for a uniformly chosen m in [m_lo, m_hi].
template <class Rng>
FourPointConfiguration sample_four_point(Rng& rng, int m_lo, int m_hi) {
    std::uniform_int_distribution<int> pick_m(m_lo, m_hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (;;) {
        const int m = pick_m(rng);
        const double h = kPi / m;
        const double phi = -h + 2.0 * h * u01(rng);
        const double top = std::cos(phi);
        const double y = top * u01(rng);
        const double x = top * std::tan(h) * (2.0 * u01(rng) - 1.0);
        if (auto f = four_point_configuration(m, phi, {x, y})) return *f;
    }
}

/// Samples until `samples` configurations satisfy the first inequality's
/// hypotheses and checks both of its conclusions on each.
inline LemmaSuiteResult run_path_inequality_suite(int samples, std::uint64_t seed, int m_lo = 6, int m_hi = 30) {
    std::mt19937_64 rng(seed);
    LemmaSuiteResult r;
    while (r.checked < samples) {
        const auto f = sample_four_point(rng, m_lo, m_hi);
        if (!path_inequality_applies(f)) continue;
        const auto s = path_inequality_slack(f);
        const double worst = std::min(s.path, s.corner);
        ++r.checked;
        r.worst_slack = std::min(r.worst_slack, worst);
        if (worst < -detail::kLemmaTolerance) ++r.violations;
    }
    return r;
}

/// Samples configurations with w outside cone 0 of v and an admissible
/// threshold, draws a constant between max(threshold, 1e-3) and twice that,
/// and checks the weighted inequality.
inline LemmaSuiteResult run_weighted_inequality_suite(int samples, std::uint64_t seed, int m_lo = 6, int m_hi = 30) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    LemmaSuiteResult r;
    while (r.checked < samples) {
        const auto f = sample_four_point(rng, m_lo, m_hi);
        if (f.cone == 0) continue;
        const auto thr = weighted_threshold(f);
        if (!thr) continue;
        const double c = std::max(*thr, 1e-3) * (1.0 + u01(rng));
        const double slack = weighted_slack(f, c);
        ++r.checked;
        r.worst_slack = std::min(r.worst_slack, slack);
        if (slack < -detail::kLemmaTolerance) ++r.violations;
    }
    return r;
}

}  // namespace otheta
