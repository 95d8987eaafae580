#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "toughham/classifier.hpp"

using namespace toughham;

namespace {

TwoFactor factor(const Graph& g, std::vector<std::vector<Vertex>> cycles) {
    std::vector<OrientedCycle> cs;
    for (auto& c : cycles) cs.emplace_back(g, std::move(c));
    return TwoFactor(g, std::move(cs));
}

Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}); }

// Triangle 0,1,2 and square 3,4,5,6. 3 and 5 see 0,1; 2 sees 4 and 6.
// The square is AB-alternating and 2 is adjacent to exactly its B-vertices.
Graph bad_vertex_instance() {
    Graph g(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 3}});
    for (auto [u, v] : std::vector<Edge>{{3, 0}, {3, 1}, {5, 0}, {5, 1}, {2, 4}, {2, 6}}) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST(Classify, NoCrossEdgesAllB) {
    Graph g = two_triangles();
    auto ctx = classify(g, factor(g, {{0, 1, 2}, {3, 4, 5}}));
    EXPECT_TRUE(ctx.a_vertices.none());
    for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(ctx.edge_type(v), EdgeType::B);
    EXPECT_FALSE(ctx.alternating[0]);
    EXPECT_TRUE(ctx.has_b_edge[0] && ctx.has_b_edge[1]);
    EXPECT_FALSE(ctx.designated_cycle());
}

TEST(Classify, ATypeWitness) {
    Graph g = two_triangles();
    g.add_edge(0, 3);
    g.add_edge(0, 4);
    auto f = factor(g, {{0, 1, 2}, {3, 4, 5}});
    auto ctx = classify(g, f);
    EXPECT_TRUE(ctx.is_a(0));
    ASSERT_TRUE(ctx.witness[0]);
    EXPECT_EQ(*ctx.witness[0], (AWitness{1, 3}));
    EXPECT_EQ(neighbor_profile(g, f, 0, 1), make_set(6, {3, 4}));
    EXPECT_EQ(ctx.edge_type(0), EdgeType::AB);
}

TEST(Classify, AntipodalNeighboursStayB) {
    Graph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {0, 6}});
    auto ctx = classify(g, factor(g, {{0, 1, 2, 3}, {4, 5, 6, 7}}));
    EXPECT_TRUE(ctx.is_b(0));
    EXPECT_TRUE(ctx.a_vertices.none());
}

TEST(Classify, SingleCycleRejected) {
    Graph g = graphs::cycle(5);
    EXPECT_THROW(classify(g, factor(g, {{0, 1, 2, 3, 4}})), SingleCycle);
}

TEST(NeighborProfile, EmptyAndFull) {
    Graph g = two_triangles();
    auto f = factor(g, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_TRUE(neighbor_profile(g, f, 0, 1).none());
    for (Vertex v : {3, 4, 5}) g.add_edge(0, v);
    auto f2 = factor(g, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_EQ(neighbor_profile(g, f2, 0, 1), make_set(6, {3, 4, 5}));
    EXPECT_THROW(neighbor_profile(g, f2, 0, 0), Error);
}

TEST(IXY, NoOutsideNeighbours) {
    Graph g = two_triangles();
    auto f = factor(g, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_EQ(i_xy(g, f, 0, 0, 1), make_set(6, {3, 4, 5}));
    EXPECT_THROW(i_xy(g, f, 0, 0, 4), NotCycleEdge);
}

// Any edge xy and two adjacent vertices of I_xy would form an induced 2K2.
TEST(IXY, IndependentOn2K2FreeStates) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        auto s = fuzz::natural(seed);
        if (!s || s->f.cycle_count() < 2) continue;
        for (int c = 0; c < static_cast<int>(s->f.cycle_count()); ++c)
            for (Vertex x : s->f.cycle(c).order()) {
                ASSERT_TRUE(is_independent(s->g, i_xy(s->g, s->f, c, x, s->f.succ(x)))) << fuzz::describe(s->g, s->f);
                ++checked;
            }
    }
    EXPECT_GT(checked, 100);
}

TEST(BadVertices, NoCrossEdges) {
    Graph g = two_triangles();
    auto f = factor(g, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_TRUE(bad_vertices(g, f, 0, classify(g, f)).none());
}

TEST(BadVertices, NeighbourhoodEqualsBVertices) {
    Graph g = bad_vertex_instance();
    auto f = factor(g, {{0, 1, 2}, {3, 4, 5, 6}});
    auto ctx = classify(g, f);
    EXPECT_EQ(ctx.a_vertices, make_set(7, {3, 5}));
    EXPECT_TRUE(ctx.alternating[1]);
    EXPECT_EQ(ctx.designated_cycle(), 0);
    EXPECT_EQ(bad_wrt(g, ctx, 2), std::vector<int>{1});
    EXPECT_EQ(bad_vertices(g, f, 0, ctx), make_set(7, {2}));
    auto as = anchors(g, ctx, 2);
    EXPECT_EQ(as.size(), 4u);  // u in {4, 6}, both orientations
}

TEST(RotationClosure, NoAdmissiblePivot) {
    Graph g = graphs::cycle(6);
    auto f = factor(g, {{0, 1, 2, 3, 4, 5}});
    auto rc = rotation_closure(g, f, 0, 0, make_set(6, {0}));
    ASSERT_EQ(rc.members.size(), 1u);
    EXPECT_EQ(rc.members[0].vertex, 1);
    EXPECT_EQ(rc.members[0].path.order(), (std::vector<Vertex>{1, 2, 3, 4, 5, 0}));
    EXPECT_TRUE(replay_closure(g, f, rc, make_set(6, {0})));
}

TEST(RotationClosure, ChordRotation) {
    Graph g = graphs::cycle(6);
    g.add_edge(1, 4);
    auto f = factor(g, {{0, 1, 2, 3, 4, 5}});
    auto v_bad = make_set(6, {0});
    auto rc = rotation_closure(g, f, 0, 0, v_bad);
    ASSERT_TRUE(rc.contains(3));
    const auto& m = rc.member(3);
    EXPECT_EQ(m.layer, 1);
    EXPECT_EQ(m.pivot, 4);
    EXPECT_EQ(m.parent, 1);
    EXPECT_EQ(m.path.order(), (std::vector<Vertex>{3, 2, 1, 4, 5, 0}));
    EXPECT_EQ(rc.all, make_set(6, {1, 3}));
    EXPECT_TRUE(replay_closure(g, f, rc, v_bad));
}

TEST(RotationClosure, BadPivotSkipped) {
    Graph g = graphs::cycle(6);
    g.add_edge(1, 4);
    auto f = factor(g, {{0, 1, 2, 3, 4, 5}});
    auto rc = rotation_closure(g, f, 0, 0, make_set(6, {0, 4}));
    EXPECT_EQ(rc.all, make_set(6, {1}));
}

TEST(RotationClosure, ReplayDetectsTampering) {
    Graph g = graphs::cycle(6);
    g.add_edge(1, 4);
    auto f = factor(g, {{0, 1, 2, 3, 4, 5}});
    auto v_bad = make_set(6, {0});
    auto rc = rotation_closure(g, f, 0, 0, v_bad);
    auto bad = rc;
    bad.members[1].pivot = 2;
    EXPECT_FALSE(replay_closure(g, f, bad, v_bad));
    bad = rc;
    bad.members[1].layer = 0;
    EXPECT_FALSE(replay_closure(g, f, bad, v_bad));
}

TEST(RotationClosure, FuzzedClosuresReplay) {
    int closures = 0;
    for (std::uint64_t seed = 0; seed < 3000 && closures < 300; ++seed) {
        auto s = fuzz::planted(seed, 0.3);
        auto ctx = classify(s.g, s.f);
        for (int c = 0; c < static_cast<int>(s.f.cycle_count()); ++c) {
            auto sys_bad = bad_vertices(s.g, s.f, c, ctx);
            for (Vertex x : members(sys_bad)) {
                auto rc = rotation_closure(s.g, s.f, c, x, sys_bad);
                ASSERT_TRUE(replay_closure(s.g, s.f, rc, sys_bad)) << fuzz::describe(s.g, s.f);
                for (const auto& m : rc.members) {
                    EXPECT_EQ(m.path.end(), x);
                    EXPECT_EQ(m.path.length(), s.f.cycle(c).length());
                }
                ++closures;
            }
        }
    }
    EXPECT_GE(closures, 300);
}
