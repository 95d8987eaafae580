#include <gtest/gtest.h>

#include <sstream>

#include "fuzz.hpp"
#include "oracles.hpp"
#include "toughham/witness.hpp"

using namespace toughham;

namespace {

fuzz::State fixture(int n, const std::string& edges, std::vector<std::vector<Vertex>> cycles) {
    Graph g(n);
    std::istringstream is(edges);
    Vertex u, v;
    char dash;
    while (is >> u >> dash >> v) g.add_edge(u, v);
    std::vector<OrientedCycle> cs;
    for (auto& c : cycles) cs.emplace_back(g, std::move(c));
    TwoFactor f(g, std::move(cs));
    return {std::move(g), std::move(f)};
}

const Rational kThree(3);

// Two squares; 0, 2, 4, 6 each see a consecutive pair across, 1, 3, 5, 7 do not.
fuzz::State all_alternating() {
    return fixture(8, "0-1 1-2 2-3 3-0 4-5 5-6 6-7 7-4 0-4 0-5 2-6 2-7 4-1 6-3", {{0, 1, 2, 3}, {4, 5, 6, 7}});
}

// Stalled states found by running reduce over generated inputs.
fuzz::State two_b_cycles() {
    return fixture(8, "0-2 0-4 0-7 1-2 1-6 2-3 2-5 3-4 3-7 4-6 5-6 6-7", {{6, 5, 2, 1}, {3, 7, 0, 4}});
}

fuzz::State final_cutset() {
    return fixture(7, "0-1 0-3 0-4 0-6 1-2 1-3 1-5 2-3 3-5 4-5 4-6 5-6", {{4, 0, 6, 5}, {1, 3, 2}});
}

fuzz::State adjacent_closure() {
    return fixture(10, "0-2 0-4 0-6 0-7 0-8 1-2 1-8 2-5 2-6 3-6 3-8 3-9 4-5 5-6 5-7 6-9 7-8", {{7, 5, 4, 0}, {1, 8, 3, 9, 6, 2}});
}

// A planted state (not a stall) where the high-degree construction applies.
fuzz::State high_degree() {
    return fixture(10, "0-2 0-3 0-4 0-5 0-6 0-8 1-3 1-8 2-3 2-7 3-4 3-6 4-6 4-8 5-6 5-7 5-8 6-7 6-8 7-9 8-9",
                   {{6, 4, 0, 5}, {8, 1, 3, 2, 7, 9}});
}

void expect_sound(const Graph& g, const ToughnessWitness& w) {
    EXPECT_TRUE(verify_witness(g, w.s, w.threshold));
    EXPECT_EQ(w.components, oracle::component_count(g, w.s));
    EXPECT_EQ(w.ratio, ratio(static_cast<long long>(w.s.count()), w.components));
    if (g.order() > 14) return;
    auto tau = oracle::toughness(g);
    ASSERT_TRUE(tau);
    EXPECT_GE(w.ratio, ratio(tau->first, tau->second));
}

}  // namespace

TEST(VerifyWitness, Examples) {
    EXPECT_TRUE(verify_witness(graphs::cycle(6), make_set(6, {0, 2, 4}), ratio(3, 2)));
    EXPECT_FALSE(verify_witness(graphs::cycle(6), make_set(6, {0, 2, 4}), ratio(1, 1)));
    for (Vertex v = 0; v < 5; ++v) EXPECT_FALSE(verify_witness(graphs::complete(5), make_set(5, {v}), kThree));
    EXPECT_FALSE(verify_witness(graphs::complete(5), VertexSet(5), kThree));
    EXPECT_TRUE(verify_witness(Graph(3), VertexSet(3), ratio(1, 1)));
    EXPECT_FALSE(verify_witness(graphs::cycle(4), VertexSet(4), ratio(1, 1)));
    EXPECT_FALSE(verify_witness(graphs::cycle(6), VertexSet(5), kThree));
}

TEST(AllAlternating, RatioAtMostOne) {
    auto s = all_alternating();
    auto ctx = classify(s.g, s.f);
    ASSERT_TRUE(ctx.alternating[0] && ctx.alternating[1]);
    auto w = witness_all_alternating(s.g, ctx, kThree);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->rule, witnesses::kAllAlternating);
    EXPECT_EQ(w->s, make_set(8, {0, 2, 4, 6}));
    EXPECT_LE(w->ratio, Rational(1));
    expect_sound(s.g, *w);
}

TEST(AllAlternating, AbsentOtherwise) {
    auto s = two_b_cycles();
    EXPECT_FALSE(witness_all_alternating(s.g, classify(s.g, s.f), kThree));
}

TEST(TwoBCycles, StalledState) {
    auto s = two_b_cycles();
    EXPECT_EQ(reduce(s.g, s.f).factor.cycle_count(), 2u);
    auto w = witness_two_b_cycles(s.g, classify(s.g, s.f), kThree);
    ASSERT_TRUE(w);
    EXPECT_LT(w->ratio, kThree);
    EXPECT_EQ(w->ratio, ratio(5, 3));
    expect_sound(s.g, *w);
}

TEST(TwoBCycles, AbsentWithOneBCycle) {
    auto s = final_cutset();
    auto ctx = classify(s.g, s.f);
    ASSERT_TRUE(ctx.designated_cycle());
    EXPECT_FALSE(witness_two_b_cycles(s.g, ctx, kThree));
}

TEST(FinalCutset, StalledState) {
    auto s = final_cutset();
    EXPECT_EQ(reduce(s.g, s.f).factor.cycle_count(), 2u);
    auto ctx = classify(s.g, s.f);
    auto sys = closure_system(s.g, ctx, *ctx.designated_cycle());
    auto w = witness_final(s.g, ctx, sys, kThree);
    ASSERT_TRUE(w);
    EXPECT_LT(w->ratio, Rational(2));
    expect_sound(s.g, *w);
}

TEST(AdjacentClosure, StalledState) {
    auto s = adjacent_closure();
    auto ctx = classify(s.g, s.f);
    auto sys = closure_system(s.g, ctx, *ctx.designated_cycle());
    EXPECT_FALSE(is_independent(s.g, sys.u_infinity));
    auto w = witness_adjacent_closure(s.g, sys, kThree);
    ASSERT_TRUE(w);
    EXPECT_LT(w->ratio, Rational(2));
    expect_sound(s.g, *w);
}

TEST(AdjacentClosure, AbsentWhenIndependent) {
    auto s = final_cutset();
    auto ctx = classify(s.g, s.f);
    auto sys = closure_system(s.g, ctx, *ctx.designated_cycle());
    ASSERT_TRUE(is_independent(s.g, sys.u_infinity));
    EXPECT_FALSE(witness_adjacent_closure(s.g, sys, kThree));
}

TEST(HighDegree, PlantedState) {
    auto s = high_degree();
    auto ctx = classify(s.g, s.f);
    auto sys = closure_system(s.g, ctx, *ctx.designated_cycle());
    auto w = witness_high_degree(s.g, ctx, sys, kThree);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->rule, witnesses::kHighDegree);
    expect_sound(s.g, *w);
}

TEST(HighDegree, AbsentWithoutHighDegreeMember) {
    auto s = final_cutset();
    auto ctx = classify(s.g, s.f);
    auto sys = closure_system(s.g, ctx, *ctx.designated_cycle());
    ClosureSystem empty = sys;
    empty.u_infinity.reset();
    EXPECT_FALSE(witness_high_degree(s.g, ctx, empty, kThree));
}

TEST(WitnessJson, RoundTrip) {
    auto s = two_b_cycles();
    auto w = *witness_two_b_cycles(s.g, classify(s.g, s.f), kThree);
    auto j = to_json(w);
    EXPECT_EQ(j["type"], "toughness_witness");
    EXPECT_EQ(j["ratio"]["num"], "5");
    EXPECT_EQ(j["ratio"]["den"], "3");
    auto back = witness_from_json(j, s.g.order());
    EXPECT_EQ(back.s, w.s);
    EXPECT_EQ(back.ratio, w.ratio);
    EXPECT_EQ(back.threshold, w.threshold);
    EXPECT_EQ(back.rule, w.rule);
}

// Every emitted witness on fuzzed states verifies and never beats the true toughness.
TEST(Witnesses, FuzzedStatesSound) {
    int emitted = 0;
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        auto s = fuzz::planted(seed, 0.1 + 0.05 * static_cast<double>(seed % 6));
        auto ctx = classify(s.g, s.f);
        std::vector<std::optional<ToughnessWitness>> ws{witness_all_alternating(s.g, ctx, kThree), witness_two_b_cycles(s.g, ctx, kThree)};
        if (auto c = ctx.designated_cycle()) {
            auto sys = closure_system(s.g, ctx, *c);
            ws.push_back(witness_final(s.g, ctx, sys, kThree));
            ws.push_back(witness_high_degree(s.g, ctx, sys, kThree));
            ws.push_back(witness_adjacent_closure(s.g, sys, kThree));
        }
        for (const auto& w : ws)
            if (w) {
                ++emitted;
                expect_sound(s.g, *w);
            }
    }
    EXPECT_GT(emitted, 1000);
}
