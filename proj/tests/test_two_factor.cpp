#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toughham/matching.hpp"
#include "toughham/recognizers.hpp"
#include "toughham/two_factor.hpp"

using namespace toughham;

namespace {

void expect_valid_factor(const Graph& g, const TwoFactor& f) {
    std::vector<std::vector<Vertex>> cycles;
    for (const auto& c : f.cycles()) cycles.push_back(c.order());
    EXPECT_TRUE(is_two_factor(g, cycles)) << to_text(g);
}

}  // namespace

TEST(Matching, Examples) {
    EXPECT_EQ(max_matching(graphs::cycle(5)).size(), 2u);
    EXPECT_EQ(max_matching(graphs::petersen()).size(), 5u);
    EXPECT_EQ(max_matching(graphs::star(3)).size(), 1u);
    EXPECT_EQ(max_matching(Graph(4)).size(), 0u);
}

// Two triangles joined by a path of length 2: a blossom must be contracted to find the
// perfect matching from a bad start.
TEST(Matching, BlossomNeeded) {
    Graph g(8, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}, {6, 7}});
    auto m = max_matching(g);
    EXPECT_TRUE(is_matching(g, m));
    EXPECT_EQ(m.size(), 4u);
}

TEST(Matching, AgreesWithBruteForce) {
    oracle::for_each_small_graph([&](const Graph& g) {
        auto m = max_matching(g);
        ASSERT_TRUE(is_matching(g, m)) << to_text(g);
        ASSERT_EQ(static_cast<int>(m.size()), oracle::max_matching_size(g)) << to_text(g);
    });
}

TEST(Gadget, FiveCycle) {
    auto gad = build_2factor_gadget(graphs::cycle(5));
    EXPECT_EQ(gad.host.order(), 10);
    for (const auto& t : gad.tags) EXPECT_EQ(t.kind, GadgetGraph::Tag::Kind::EdgeCopy);
    EXPECT_EQ(max_matching(gad.host).size(), 5u);
}

TEST(Gadget, K4) {
    auto gad = build_2factor_gadget(graphs::complete(4));
    EXPECT_EQ(gad.host.order(), 16);
    std::vector<int> copies(4, 0), inner(4, 0);
    for (const auto& t : gad.tags) (t.kind == GadgetGraph::Tag::Kind::Inner ? inner : copies)[t.owner]++;
    EXPECT_EQ(copies, (std::vector<int>{3, 3, 3, 3}));
    EXPECT_EQ(inner, (std::vector<int>{1, 1, 1, 1}));
}

TEST(Gadget, DegreeTooSmall) {
    try {
        build_2factor_gadget(graphs::path(4));
        FAIL();
    } catch (const DegreeTooSmall& e) {
        EXPECT_EQ(e.vertex, 0);
    }
}

TEST(FindTwoFactor, SevenCycle) {
    auto f = find_two_factor(graphs::cycle(7));
    ASSERT_TRUE(f);
    ASSERT_EQ(f->cycle_count(), 1u);
    EXPECT_EQ(f->cycle(0).order(), (std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(FindTwoFactor, BridgedTriangles) {
    Graph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    auto f = find_two_factor(g);
    ASSERT_TRUE(f);
    ASSERT_EQ(f->cycle_count(), 2u);
    EXPECT_EQ(f->cycle(0).order(), (std::vector<Vertex>{0, 1, 2}));
    EXPECT_EQ(f->cycle(1).order(), (std::vector<Vertex>{3, 4, 5}));
}

TEST(FindTwoFactor, StarHasNone) { EXPECT_FALSE(find_two_factor(graphs::star(3))); }

TEST(FindTwoFactor, AgreesWithBruteForce) {
    oracle::for_each_small_graph([&](const Graph& g) {
        auto f = find_two_factor(g);
        ASSERT_EQ(f.has_value(), oracle::has_two_factor(g)) << to_text(g);
        if (f) expect_valid_factor(g, *f);
    });
}

TEST(FindTwoFactor, TwoToughGraphsHaveOne) {
    std::mt19937_64 rng(41);
    int tough = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        Graph g = oracle::random_graph(n, 0.6 + 0.04 * (trial % 10), rng);
        if (!is_t_tough(g, ratio(2, 1), ViolationChoice::First).tough) continue;
        ++tough;
        auto f = find_two_factor(g);
        ASSERT_TRUE(f) << to_text(g);
        expect_valid_factor(g, *f);
    }
    EXPECT_GT(tough, 300);
}

TEST(FindTwoFactor, Deterministic) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = oracle::random_graph(10, 0.5, rng);
        auto a = find_two_factor(g), b = find_two_factor(g);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) EXPECT_EQ(*a, *b);
    }
}
