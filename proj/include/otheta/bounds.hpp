#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "otheta/errors.hpp"
#include "otheta/geometry.hpp"

namespace otheta {

enum class Family { F4k2, F4k3, F4k4, F4k5, NonSpanner };

constexpr std::string_view to_string(Family f) {
    switch (f) {
        case Family::F4k2: return "4k+2";
        case Family::F4k3: return "4k+3";
        case Family::F4k4: return "4k+4";
        case Family::F4k5: return "4k+5";
        case Family::NonSpanner: return "non-spanner";
    }
    return "unknown";
}

inline std::optional<Family> family_from_string(std::string_view s) {
    for (Family f : {Family::F4k2, Family::F4k3, Family::F4k4, Family::F4k5, Family::NonSpanner}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

struct BoundFamily {
    Family family = Family::NonSpanner;
    int k = 0;  // 0 for non-spanners
    int m = 0;

    friend bool operator==(const BoundFamily&, const BoundFamily&) = default;
};

inline BoundFamily classify(int m) {
    if (m < 3) throw Error(ErrorKind::InvalidConeCount, "cone count must be at least 3, got " + std::to_string(m));
    if (m <= 6) return {Family::NonSpanner, 0, m};
    switch (m % 4) {
        case 2: return {Family::F4k2, (m - 2) / 4, m};
        case 3: return {Family::F4k3, (m - 3) / 4, m};
        case 0: return {Family::F4k4, (m - 4) / 4, m};
        default: return {Family::F4k5, (m - 5) / 4, m};
    }
}

namespace detail {
inline double theta_of(int m) { return kTwoPi / m; }
}  // namespace detail

inline std::optional<double> upper_bound(int m) {
    const BoundFamily f = classify(m);
    const double t = detail::theta_of(m);
    const double s = std::sin(t / 2), c = std::cos(t / 2);
    switch (f.family) {
        case Family::F4k4: return 1.0 + 2.0 * s / (c - s);
        case Family::F4k2:
        case Family::F4k3:
        case Family::F4k5: return 1.0 / (1.0 - 2.0 * s);
        case Family::NonSpanner: return std::nullopt;
    }
    return std::nullopt;
}

inline std::optional<double> lower_bound(int m) {
    const BoundFamily f = classify(m);
    const double t = detail::theta_of(m);
    switch (f.family) {
        case Family::F4k2: return 1.0 / (1.0 - 2.0 * std::sin(t / 2));
        case Family::F4k3: return (std::cos(t / 4) + std::sin(t)) / std::cos(3 * t / 4);
        case Family::F4k4: return 1.0 + 2.0 * std::sin(t / 2) / (std::cos(t / 2) - std::sin(t / 2));
        case Family::F4k5:
            return 1.0 + 2.0 * std::sin(t / 2) * std::cos(t / 4) / (std::cos(t / 2) - std::sin(3 * t / 4));
        case Family::NonSpanner: return std::nullopt;
    }
    return std::nullopt;
}

/// Tight spanning ratio of the unordered graph with 4k+2 cones.
inline double unordered_4k2_ratio(int m) { return 1.0 + 2.0 * std::sin(detail::theta_of(m) / 2); }

/// Limit of |ux| + |xw| for a two-line staircase with apex angle theta at u
/// and angle beta at w, relative to |uw| = 1.
inline double staircase_limit(double theta, double beta) {
    const double half = (kPi - theta) / 2;
    const double den = std::sin(half - beta);
    if (!(den > 1e-12)) throw Error(ErrorKind::DegenerateAngle, "staircase lines do not meet");
    return (std::sin(half + beta) + std::sin(theta)) / den;
}

inline double staircase_limit_4k2(double theta) {
    const double den = std::sin((kPi - 3 * theta) / 2);
    if (!(den > 1e-12)) throw Error(ErrorKind::DegenerateAngle, "staircase lines do not meet");
    return (std::sin((kPi + theta) / 2) + std::sin(theta)) / den;
}

/// Staircase angle at w realised by the odd and 4k+4 generators.
inline double staircase_beta(int m) {
    const double t = detail::theta_of(m);
    switch (classify(m).family) {
        case Family::F4k3: return t / 4;
        case Family::F4k4: return t / 2;
        case Family::F4k5: return 3 * t / 4;
        default: throw Error(ErrorKind::InvalidFamily, "no two-line staircase for m = " + std::to_string(m));
    }
}

/// Path-length increment per tower step, with |uw| = 1. For m = 6 one step
/// is a whole four-vertex configuration.
inline double tower_growth(int m) {
    switch (m) {
        case 3: return std::sqrt(3.0) / 2;
        case 4: return std::sqrt(2.0);
        case 5: return std::cos(kPi / 10) / std::cos(kPi / 5);
        case 6: return 2.0;
        default: throw Error(ErrorKind::NotATower, "towers exist only for 3 to 6 cones, got " + std::to_string(m));
    }
}

/// Path bound factor for a pair whose canonical triangle has angle alpha,
/// in the 4k+4 family.
inline double path_bound_factor(double theta, double alpha) {
    const double h = theta / 2;
    const double c = 1.0 / (std::cos(h) - std::sin(h));
    return std::cos(alpha) / std::cos(h) + c * (std::cos(alpha) * std::tan(h) + std::sin(alpha));
}

}  // namespace otheta
