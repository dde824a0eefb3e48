#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include "otheta/bounds.hpp"
#include "otheta/construction.hpp"
#include "otheta/errors.hpp"
#include "otheta/geometry.hpp"

namespace otheta {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Single-source shortest path lengths; unreachable vertices get kUnreachable.
inline std::vector<double> dijkstra(const SpannerGraph& graph, std::size_t source) {
    if (source >= graph.size()) throw Error(ErrorKind::InvalidVertex, "source vertex out of range");
    std::vector<double> dist(graph.size(), kUnreachable);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        for (const auto& arc : graph.neighbors(v)) {
            const double nd = d + arc.weight;
            if (nd < dist[arc.to]) {
                dist[arc.to] = nd;
                queue.emplace(nd, arc.to);
            }
        }
    }
    return dist;
}

inline std::optional<double> shortest_path_distance(const SpannerGraph& graph, std::size_t u, std::size_t w) {
    if (w >= graph.size()) throw Error(ErrorKind::InvalidVertex, "target vertex out of range");
    const double d = dijkstra(graph, u)[w];
    if (d == kUnreachable) return std::nullopt;
    return d;
}

/// Vertex sequence of one shortest u-w path, empty when w is unreachable.
inline std::vector<std::size_t> shortest_path(const SpannerGraph& graph, std::size_t u, std::size_t w) {
    const auto dist = dijkstra(graph, u);
    if (w >= graph.size()) throw Error(ErrorKind::InvalidVertex, "target vertex out of range");
    if (dist[w] == kUnreachable) return {};
    std::vector<std::size_t> path{w};
    while (path.back() != u) {
        const std::size_t v = path.back();
        std::size_t prev = v;
        for (const auto& arc : graph.neighbors(v)) {
            if (dist[arc.to] < dist[v] && std::abs(dist[arc.to] + arc.weight - dist[v]) <= 1e-12 * dist[v]) {
                prev = arc.to;
                break;
            }
        }
        if (prev == v) break;
        path.push_back(prev);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

struct PairStretch {
    std::size_t u = 0;
    std::size_t w = 0;
    std::optional<double> graph_distance;  // none when disconnected
    double euclidean = 0.0;
    std::optional<double> ratio;
};

struct StretchReport {
    double max_stretch = 1.0;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    bool disconnected = false;
    std::optional<std::vector<PairStretch>> per_pair;
};

struct StretchOptions {
    bool per_pair = false;
    unsigned threads = 1;
};

/// Ratios within this relative distance of the maximum count as ties for the
/// witness, which is then the lexicographically smallest such pair.
inline constexpr double kWitnessTieTolerance = 1e-12;

namespace detail {

// Row i summarises pairs (i, j) with j > i.
struct StretchRow {
    double max = 0.0;
    std::vector<std::pair<std::size_t, double>> near_max;  // (j, ratio), j ascending
    bool disconnected = false;
    std::vector<PairStretch> pairs;
};

inline StretchRow summarise_row(const SpannerGraph& graph, std::size_t i, const std::vector<double>& dist,
                                bool keep_pairs) {
    StretchRow row;
    const auto& pts = graph.points();
    std::vector<std::pair<std::size_t, double>> ratios;
    for (std::size_t j = i + 1; j < graph.size(); ++j) {
        const double e = distance(pts[i], pts[j]);
        PairStretch p{i, j, std::nullopt, e, std::nullopt};
        if (dist[j] == kUnreachable) {
            row.disconnected = true;
        } else {
            const double r = dist[j] / e;
            p.graph_distance = dist[j];
            p.ratio = r;
            ratios.emplace_back(j, r);
            row.max = std::max(row.max, r);
        }
        if (keep_pairs) row.pairs.push_back(p);
    }
    for (const auto& [j, r] : ratios) {
        if (r >= row.max * (1.0 - kWitnessTieTolerance)) row.near_max.emplace_back(j, r);
    }
    return row;
}

inline StretchReport merge_rows(std::vector<StretchRow>& rows, bool keep_pairs) {
    StretchReport report;
    double best = 0.0;
    for (const auto& row : rows) {
        best = std::max(best, row.max);
        report.disconnected = report.disconnected || row.disconnected;
    }
    if (best > 0.0) {
        report.max_stretch = best;
        for (std::size_t i = 0; i < rows.size() && !report.witness; ++i) {
            for (const auto& [j, r] : rows[i].near_max) {
                if (r >= best * (1.0 - kWitnessTieTolerance)) {
                    report.witness = std::make_pair(i, j);
                    break;
                }
            }
        }
    }
    if (keep_pairs) {
        std::vector<PairStretch> all;
        for (auto& row : rows) all.insert(all.end(), row.pairs.begin(), row.pairs.end());
        report.per_pair = std::move(all);
    }
    return report;
}

}  // namespace detail

/// Spanning ratio over all vertex pairs via one Dijkstra run per source.
/// Sources are split across `threads` workers; the merge is order independent.
inline StretchReport all_pairs_stretch(const SpannerGraph& graph, const StretchOptions& options = {}) {
    const std::size_t n = graph.size();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "stretch needs at least two vertices");
    std::vector<detail::StretchRow> rows(n);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < n; i += stride) {
            rows[i] = detail::summarise_row(graph, i, dijkstra(graph, i), options.per_pair);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, n);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    }
    return detail::merge_rows(rows, options.per_pair);
}

/// Maximum vertex count accepted by stretch_oracle.
inline constexpr std::size_t kOracleLimit = 512;

/// Independent all-pairs computation (Floyd-Warshall on a dense matrix).
inline StretchReport stretch_oracle(const SpannerGraph& graph, bool per_pair = false) {
    const std::size_t n = graph.size();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "stretch needs at least two vertices");
    if (n > kOracleLimit) {
        throw Error(ErrorKind::TooLarge, "oracle is limited to " + std::to_string(kOracleLimit) + " vertices");
    }
    std::vector<double> d(n * n, kUnreachable);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    for (const auto& e : graph.edges()) {
        d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
        d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.weight);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = d[i * n + k];
            if (dik == kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dik + d[k * n + j];
                if (via < d[i * n + j]) d[i * n + j] = via;
            }
        }
    }
    std::vector<detail::StretchRow> rows(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(d.begin() + static_cast<std::ptrdiff_t>(i * n), d.begin() + static_cast<std::ptrdiff_t>((i + 1) * n),
                  dist.begin());
        rows[i] = detail::summarise_row(graph, i, dist, per_pair);
    }
    return detail::merge_rows(rows, per_pair);
}

struct CertificateEntry {
    std::size_t u = 0;  // inserted after w
    std::size_t w = 0;
    double alpha = 0.0;
    double bound = 0.0;  // absolute length bound
    std::optional<double> graph_distance;
    bool pass = false;
};

/// Checks the 4k+4 path bound for every pair (u, w) with w inserted before u:
/// delta(u, w) <= path_bound_factor(theta, alpha) * |uw| + 1e-9 * |uw|.
inline std::vector<CertificateEntry> ordered_path_certificate(const ConeSystem& system, const SpannerGraph& graph,
                                                              const InsertionOrder& order) {
    if (system.cones() % 4 != 0 || system.cones() < 8) {
        throw Error(ErrorKind::WrongFamily,
                    "the path certificate applies to 4k+4 cones with k >= 1, got m = " +
                        std::to_string(system.cones()));
    }
    if (order.size() != graph.size()) throw Error(ErrorKind::InvalidOrder, "order does not match the graph");
    const auto rank = order.rank();
    const auto& pts = graph.points();
    std::vector<CertificateEntry> out;
    for (std::size_t u = 0; u < graph.size(); ++u) {
        const auto dist = dijkstra(graph, u);
        for (std::size_t w = 0; w < graph.size(); ++w) {
            if (rank[w] >= rank[u]) continue;
            const auto tri = canonical_triangle(system, pts[u], pts[w]);
            const double e = distance(pts[u], pts[w]);
            CertificateEntry c;
            c.u = u;
            c.w = w;
            c.alpha = tri.alpha;
            c.bound = path_bound_factor(system.theta(), tri.alpha) * e;
            if (dist[w] != kUnreachable) c.graph_distance = dist[w];
            c.pass = c.graph_distance && *c.graph_distance <= c.bound + 1e-9 * e;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace otheta
