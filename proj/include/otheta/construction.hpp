#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otheta/errors.hpp"
#include "otheta/geometry.hpp"

namespace otheta {

/// order[t] is the vertex inserted at time t.
class InsertionOrder {
public:
    InsertionOrder() = default;

    explicit InsertionOrder(std::vector<std::size_t> order) : order_(std::move(order)) {
        std::vector<bool> seen(order_.size(), false);
        for (std::size_t v : order_) {
            if (v >= order_.size() || seen[v]) {
                throw Error(ErrorKind::InvalidOrder, "insertion order is not a permutation of 0..n-1");
            }
            seen[v] = true;
        }
    }

    static InsertionOrder identity(std::size_t n) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        return InsertionOrder(std::move(order));
    }

    std::size_t size() const noexcept { return order_.size(); }
    std::size_t operator[](std::size_t t) const { return order_[t]; }
    auto begin() const noexcept { return order_.begin(); }
    auto end() const noexcept { return order_.end(); }
    const std::vector<std::size_t>& values() const noexcept { return order_; }

    /// rank()[v] is the insertion time of vertex v.
    std::vector<std::size_t> rank() const {
        std::vector<std::size_t> r(order_.size());
        for (std::size_t t = 0; t < order_.size(); ++t) r[order_[t]] = t;
        return r;
    }

    friend bool operator==(const InsertionOrder&, const InsertionOrder&) = default;

private:
    std::vector<std::size_t> order_;
};

struct Provenance {
    std::size_t owner = 0;
    int cone = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;
    std::optional<Provenance> provenance;
};

/// Undirected weighted graph on a fixed point set.
class SpannerGraph {
public:
    SpannerGraph() = default;
    explicit SpannerGraph(std::vector<Point> points) : points_(std::move(points)), adjacency_(points_.size()) {}

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    struct Arc {
        std::size_t to;
        double weight;
    };
    const std::vector<Arc>& neighbors(std::size_t v) const { return adjacency_.at(v); }

    bool has_edge(std::size_t a, std::size_t b) const {
        return keys_.contains(std::minmax(a, b));
    }

    /// Adds edge a-b weighted by Euclidean length. Returns false and keeps the
    /// existing edge (and its provenance) when the pair is already connected.
    bool add_edge(std::size_t a, std::size_t b, std::optional<Provenance> provenance = std::nullopt) {
        if (a >= size() || b >= size()) throw Error(ErrorKind::InvalidVertex, "edge endpoint out of range");
        if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loops are not allowed");
        if (!keys_.insert(std::minmax(a, b)).second) return false;
        const double w = distance(points_[a], points_[b]);
        edges_.push_back({a, b, w, provenance});
        adjacency_[a].push_back({b, w});
        adjacency_[b].push_back({a, w});
        return true;
    }

private:
    std::vector<Point> points_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adjacency_;
    std::set<std::pair<std::size_t, std::size_t>> keys_;
};

struct IndexedPoint {
    std::size_t index = 0;
    Point position;
};

/// Candidate strictly inside `cone` of `apex` with the smallest bisector
/// distance, or none when the cone holds no candidate.
inline std::optional<std::size_t> closest_in_cone(const ConeSystem& system, Point apex,
                                                  std::span<const IndexedPoint> candidates, int cone) {
    if (cone < 0 || cone >= system.cones()) throw Error(ErrorKind::InvalidArgument, "cone index out of range");
    const Point bisector = system.bisector(cone);
    std::optional<std::size_t> best;
    double best_distance = 0.0;
    bool tied = false;
    for (const auto& c : candidates) {
        if (cone_index(system, apex, c.position) != cone) continue;
        const double d = dot(c.position - apex, bisector);
        if (!best || d < best_distance) {
            tied = best && std::abs(best_distance - d) <= 1e-12 * best_distance;
            best = c.index;
            best_distance = d;
        } else if (std::abs(d - best_distance) <= 1e-12 * best_distance) {
            tied = true;
        }
    }
    if (tied) {
        throw Error(ErrorKind::AmbiguousClosest,
                    "two candidates tie on bisector distance in cone " + std::to_string(cone));
    }
    return best;
}

struct BuildOptions {
    /// When set, every point is moved by a seeded uniform offset in
    /// [-r, r]^2 before validation.
    std::optional<double> perturbation;
    std::uint64_t seed = 0;
};

inline std::vector<Point> perturbed(std::span<const Point> points, double radius, std::uint64_t seed) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorKind::InvalidArgument, "perturbation radius must be positive and finite");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-radius, radius);
    std::vector<Point> out(points.begin(), points.end());
    for (auto& p : out) {
        const double dx = jitter(rng);
        const double dy = jitter(rng);
        p = p + Point{dx, dy};
    }
    return out;
}

namespace detail {

inline std::vector<Point> prepare(const ConeSystem& system, std::span<const Point> points,
                                  const BuildOptions& options) {
    std::vector<Point> pts = options.perturbation ? perturbed(points, *options.perturbation, options.seed)
                                                  : std::vector<Point>(points.begin(), points.end());
    auto report = check_general_position(system, pts);
    if (!report.ok()) throw GeneralPositionError(std::move(report));
    return pts;
}

/// Per-cone projection-closest vertex among `pool`, as (cone, vertex) pairs.
inline std::vector<std::pair<int, std::size_t>> closest_per_cone(const ConeSystem& system,
                                                                 const std::vector<Point>& pts, std::size_t apex,
                                                                 std::span<const std::size_t> pool) {
    const int m = system.cones();
    std::vector<std::optional<std::size_t>> best(m);
    std::vector<double> best_distance(m, 0.0);
    std::vector<bool> tied(m, false);
    for (std::size_t v : pool) {
        if (v == apex) continue;
        const int cone = cone_index(system, pts[apex], pts[v]);
        const double d = dot(pts[v] - pts[apex], system.bisector(cone));
        if (!best[cone] || d < best_distance[cone]) {
            tied[cone] = best[cone] && std::abs(best_distance[cone] - d) <= 1e-12 * best_distance[cone];
            best[cone] = v;
            best_distance[cone] = d;
        } else if (std::abs(d - best_distance[cone]) <= 1e-12 * best_distance[cone]) {
            tied[cone] = true;
        }
    }
    std::vector<std::pair<int, std::size_t>> out;
    for (int c = 0; c < m; ++c) {
        if (tied[c]) {
            throw Error(ErrorKind::AmbiguousClosest, "vertex " + std::to_string(apex) +
                                                         " has two projection-closest vertices in cone " +
                                                         std::to_string(c));
        }
        if (best[c]) out.emplace_back(c, *best[c]);
    }
    return out;
}

}  // namespace detail

/// Ordered theta-graph: each inserted vertex connects to the
/// projection-closest previously inserted vertex in each of its cones.
inline SpannerGraph build_ordered(const ConeSystem& system, std::span<const Point> points,
                                  const InsertionOrder& order, const BuildOptions& options = {}) {
    if (order.size() != points.size()) {
        throw Error(ErrorKind::InvalidOrder, "insertion order length differs from the number of points");
    }
    SpannerGraph graph(detail::prepare(system, points, options));
    std::vector<std::size_t> inserted;
    inserted.reserve(points.size());
    for (std::size_t v : order) {
        for (auto [cone, target] : detail::closest_per_cone(system, graph.points(), v, inserted)) {
            graph.add_edge(v, target, Provenance{v, cone});
        }
        inserted.push_back(v);
    }
    return graph;
}

/// Classic theta-graph: every vertex connects to the projection-closest
/// vertex in each nonempty cone; mutual choices are stored once.
inline SpannerGraph build_unordered(const ConeSystem& system, std::span<const Point> points,
                                    const BuildOptions& options = {}) {
    SpannerGraph graph(detail::prepare(system, points, options));
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::size_t v = 0; v < all.size(); ++v) {
        for (auto [cone, target] : detail::closest_per_cone(system, graph.points(), v, all)) {
            graph.add_edge(v, target, Provenance{v, cone});
        }
    }
    return graph;
}

}  // namespace otheta
