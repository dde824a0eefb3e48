#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "otheta/construction.hpp"

namespace otheta {
namespace {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

EdgeSet edge_set(const SpannerGraph& g) {
    EdgeSet out;
    for (const auto& e : g.edges()) out.insert(std::minmax(e.u, e.v));
    return out;
}

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    return pts;
}

InsertionOrder shuffled(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(v.begin(), v.end(), rng);
    return InsertionOrder(v);
}

// Quadratic reference: scan predecessors directly with the cone/projection
// definitions, without going through closest_in_cone.
EdgeSet reference_ordered(const ConeSystem& s, const std::vector<Point>& pts, const InsertionOrder& order) {
    EdgeSet out;
    for (std::size_t t = 0; t < order.size(); ++t) {
        const std::size_t v = order[t];
        std::map<int, std::pair<double, std::size_t>> best;
        for (std::size_t p = 0; p < t; ++p) {
            const std::size_t w = order[p];
            const Point d = pts[w] - pts[v];
            const int cone = s.cone_of_heading(heading(pts[v], pts[w]));
            const double proj = d.x * std::sin(cone * s.theta()) + d.y * std::cos(cone * s.theta());
            auto it = best.find(cone);
            if (it == best.end() || proj < it->second.first) best[cone] = {proj, w};
        }
        for (const auto& [cone, hit] : best) out.insert(std::minmax(v, hit.second));
    }
    return out;
}

TEST(InsertionOrder, ValidatesPermutation) {
    EXPECT_NO_THROW(InsertionOrder({2, 0, 1}));
    EXPECT_THROW(InsertionOrder({0, 0, 1}), Error);
    EXPECT_THROW(InsertionOrder({0, 3, 1}), Error);
    const InsertionOrder o({2, 0, 1});
    EXPECT_EQ(o.rank(), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(BuildOrdered, TwoPoints) {
    // A vertical pair is perpendicular to the horizontal bisectors of four
    // cones, so the raw input is rejected and a tiny perturbation is needed.
    const std::vector<Point> pts{{0, 1}, {0, 0}};
    EXPECT_THROW(build_ordered(ConeSystem(4), pts, InsertionOrder({0, 1})), GeneralPositionError);
    BuildOptions opts;
    opts.perturbation = 1e-7;
    const auto g = build_ordered(ConeSystem(4), pts, InsertionOrder({0, 1}), opts);
    ASSERT_EQ(g.edges().size(), 1u);
    const auto& e = g.edges()[0];
    EXPECT_NEAR(e.weight, 1.0, 1e-6);
    ASSERT_TRUE(e.provenance);
    EXPECT_EQ(e.provenance->owner, 1u);
    EXPECT_EQ(e.provenance->cone, 0);
}

TEST(BuildOrdered, ThreePointExample) {
    const ConeSystem s(4);
    const std::vector<Point> pts{{0, 0}, {0.1, 1}, {-0.1, 2}};
    const auto g = build_ordered(s, pts, InsertionOrder({0, 1, 2}));
    EXPECT_EQ(edge_set(g), (EdgeSet{{0, 1}, {1, 2}}));
    EXPECT_EQ(edge_set(g), reference_ordered(s, pts, InsertionOrder({0, 1, 2})));
}

TEST(BuildOrdered, OrderChangesTheGraph) {
    const ConeSystem s(4);
    const std::vector<Point> pts{{0, 0}, {0.1, 1}, {-0.1, 2}};
    const auto forward = edge_set(build_ordered(s, pts, InsertionOrder({0, 1, 2})));
    // Reversing this particular order reproduces the same path.
    EXPECT_EQ(edge_set(build_ordered(s, pts, InsertionOrder({2, 1, 0}))), forward);
    // Inserting the far point second makes it connect to the origin directly.
    const auto swapped = edge_set(build_ordered(s, pts, InsertionOrder({0, 2, 1})));
    EXPECT_EQ(swapped, (EdgeSet{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_NE(swapped, forward);
}

TEST(BuildOrdered, SinglePointAndErrors) {
    const std::vector<Point> one{{0.3, 0.4}};
    EXPECT_TRUE(build_ordered(ConeSystem(5), one, InsertionOrder({0})).edges().empty());

    const std::vector<Point> pts{{0, 0}, {1, 2}};
    EXPECT_THROW(build_ordered(ConeSystem(4), pts, InsertionOrder({0})), Error);

    const std::vector<Point> degenerate{{0, 0}, {1, 1}, {0.2, 3}};
    try {
        build_ordered(ConeSystem(4), degenerate, InsertionOrder::identity(3));
        FAIL();
    } catch (const GeneralPositionError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GeneralPositionViolation);
        ASSERT_EQ(e.report().violations.size(), 1u);
        EXPECT_EQ(e.report().violations[0].first, 0u);
        EXPECT_EQ(e.report().violations[0].second, 1u);
    }
}

TEST(BuildOrdered, PerturbationRepairsDegenerateInput) {
    const std::vector<Point> grid{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    BuildOptions opts;
    opts.perturbation = 1e-3;
    opts.seed = 4;
    const auto a = build_ordered(ConeSystem(4), grid, InsertionOrder::identity(4), opts);
    const auto b = build_ordered(ConeSystem(4), grid, InsertionOrder::identity(4), opts);
    EXPECT_EQ(a.points(), b.points());
    EXPECT_EQ(edge_set(a), edge_set(b));
    EXPECT_FALSE(a.edges().empty());
}

TEST(BuildUnordered, Examples) {
    const ConeSystem s(4);
    const std::vector<Point> two{{0, 0}, {0.3, 1}};
    EXPECT_EQ(build_unordered(s, two).edges().size(), 1u);

    const std::vector<Point> three{{0, 0}, {0.1, 1}, {-0.1, 2}};
    const auto unordered = edge_set(build_unordered(s, three));
    const auto ordered = edge_set(build_ordered(s, three, InsertionOrder({0, 1, 2})));
    EXPECT_TRUE(std::includes(unordered.begin(), unordered.end(), ordered.begin(), ordered.end()));
}

TEST(ClosestInCone, Examples) {
    const ConeSystem s(4);
    EXPECT_FALSE(closest_in_cone(s, {0, 0}, {}, 0));
    const std::vector<IndexedPoint> c{{7, {0.2, 1}}, {9, {-0.3, 2}}};
    EXPECT_EQ(closest_in_cone(s, {0, 0}, c, 0), 7u);
    const std::vector<IndexedPoint> single{{7, {0.2, 1}}};
    EXPECT_FALSE(closest_in_cone(s, {0, 0}, single, 2));
}

TEST(ClosestInCone, TieIsAnError) {
    const ConeSystem s(4);
    const std::vector<IndexedPoint> c{{0, {0.2, 1}}, {1, {-0.3, 1}}};
    try {
        closest_in_cone(s, {0, 0}, c, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AmbiguousClosest);
    }
}

class RandomBuild : public ::testing::TestWithParam<int> {};

TEST_P(RandomBuild, StructuralInvariants) {
    const int m = GetParam();
    const ConeSystem s(m);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto pts = random_points(35, seed * 31 + m);
        const auto order = shuffled(pts.size(), seed);
        const auto g = build_ordered(s, pts, order);

        EXPECT_EQ(edge_set(g), reference_ordered(s, pts, order));
        EXPECT_LE(g.edges().size(), (pts.size() - 1) * m);

        std::set<std::pair<std::size_t, int>> owners;
        std::map<std::size_t, int> per_owner;
        const auto rank = order.rank();
        for (const auto& e : g.edges()) {
            EXPECT_NE(e.u, e.v);
            EXPECT_NEAR(e.weight, distance(pts[e.u], pts[e.v]), 1e-12 * e.weight);
            ASSERT_TRUE(e.provenance);
            EXPECT_TRUE(owners.insert({e.provenance->owner, e.provenance->cone}).second);
            ++per_owner[e.provenance->owner];
            // The owner is the later endpoint.
            const std::size_t other = e.provenance->owner == e.u ? e.v : e.u;
            EXPECT_GT(rank[e.provenance->owner], rank[other]);
        }
        for (const auto& [owner, count] : per_owner) EXPECT_LE(count, m);
        EXPECT_EQ(per_owner.count(order[0]), 0u);

        const auto unordered = build_unordered(s, pts);
        EXPECT_LE(unordered.edges().size(), pts.size() * m);
    }
}

TEST_P(RandomBuild, EmptyCanonicalTriangleForcesEdge) {
    const int m = GetParam();
    const ConeSystem s(m);
    int forced = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto pts = random_points(30, seed * 7 + m);
        const auto order = shuffled(pts.size(), seed + 100);
        const auto g = build_ordered(s, pts, order);
        const auto rank = order.rank();
        for (std::size_t u = 0; u < pts.size(); ++u) {
            for (std::size_t w = 0; w < pts.size(); ++w) {
                if (u == w || rank[w] >= rank[u]) continue;
                const auto tri = canonical_triangle(s, pts[u], pts[w]);
                bool empty = true;
                for (std::size_t x = 0; x < pts.size() && empty; ++x) {
                    if (x != u && x != w && tri.contains(pts[x])) empty = false;
                }
                if (!empty) continue;
                ++forced;
                EXPECT_TRUE(g.has_edge(u, w)) << "m=" << m << " u=" << u << " w=" << w;
            }
        }
    }
    EXPECT_GT(forced, 0);
}

INSTANTIATE_TEST_SUITE_P(ConeCounts, RandomBuild, ::testing::Values(3, 4, 6, 7, 8, 10, 12));

TEST(SpannerGraph, AddEdgeContract) {
    SpannerGraph g({{0, 0}, {3, 4}, {1, 1}});
    EXPECT_TRUE(g.add_edge(0, 1));
    EXPECT_FALSE(g.add_edge(1, 0));
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_DOUBLE_EQ(g.edges()[0].weight, 5.0);
    EXPECT_THROW(g.add_edge(2, 2), Error);
    EXPECT_THROW(g.add_edge(0, 3), Error);
    EXPECT_TRUE(g.has_edge(1, 0));
    EXPECT_FALSE(g.has_edge(0, 2));
}

}  // namespace
}  // namespace otheta
