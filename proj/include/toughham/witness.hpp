#ifndef TOUGHHAM_WITNESS_HPP
#define TOUGHHAM_WITNESS_HPP

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "classifier.hpp"
#include "graph.hpp"
#include "merge_engine.hpp"
#include "rational.hpp"

namespace toughham {

// Rule ids of the cutset constructions.
namespace witnesses {
inline constexpr const char* kAllAlternating = "W1";
inline constexpr const char* kTwoBCycles = "W2";
inline constexpr const char* kHighDegree = "W3";
inline constexpr const char* kAdjacentClosure = "W4";
inline constexpr const char* kFinal = "W5";
}  // namespace witnesses

struct ToughnessWitness {
    std::string rule;
    VertexSet s;
    Rational threshold;
    int components = 0;
    Rational ratio;
};

inline bool verify_witness(const Graph& g, const VertexSet& s, const Rational& t) {
    if (s.size() != static_cast<std::size_t>(g.order())) return false;
    const int c = component_count(g, s);
    if (c < 2) return false;
    return Rational(static_cast<long long>(s.count())) < t * c;
}

// Emission is gated on verification against the actual graph.
inline std::optional<ToughnessWitness> make_witness(const Graph& g, VertexSet s, const Rational& t, const std::string& rule) {
    if (!verify_witness(g, s, t)) return std::nullopt;
    const int c = component_count(g, s);
    ToughnessWitness w{rule, std::move(s), t, c, Rational(0)};
    w.ratio = Rational(static_cast<long long>(w.s.count()), c);
    return w;
}

inline nlohmann::json rational_json(const Rational& r) {
    return {{"num", boost::multiprecision::numerator(r).str()}, {"den", boost::multiprecision::denominator(r).str()}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
    return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

inline nlohmann::json to_json(const ToughnessWitness& w) {
    return {{"type", "toughness_witness"}, {"rule", w.rule}, {"S", members(w.s)}, {"components", w.components},
            {"ratio", rational_json(w.ratio)}, {"threshold", rational_json(w.threshold)}};
}

inline ToughnessWitness witness_from_json(const nlohmann::json& j, int n) {
    if (j.at("type") != "toughness_witness") throw Error("not a toughness witness");
    ToughnessWitness w;
    w.rule = j.at("rule").get<std::string>();
    w.s = VertexSet(static_cast<std::size_t>(n));
    for (int v : j.at("S").get<std::vector<int>>()) {
        if (v < 0 || v >= n) throw Error("witness vertex " + std::to_string(v) + " out of range");
        w.s.set(static_cast<std::size_t>(v));
    }
    w.components = j.at("components").get<int>();
    w.ratio = rational_from_json(j.at("ratio"));
    w.threshold = rational_from_json(j.at("threshold"));
    return w;
}

// Every cycle AB-alternating: S = A leaves A^+ isolated.
inline std::optional<ToughnessWitness> witness_all_alternating(const Graph& g, const TypingContext& ctx, const Rational& t) {
    for (char alt : ctx.alternating)
        if (!alt) return std::nullopt;
    return make_witness(g, ctx.a_vertices, t, witnesses::kAllAlternating);
}

// Two or more cycles carry a B-type edge: S = V(G) − (I_xy ∪ {x}) for a B-type edge xy on
// a shortest such cycle. Edges are tried in cycle-length, cycle-id, then vertex order.
inline std::optional<ToughnessWitness> witness_two_b_cycles(const Graph& g, const TypingContext& ctx, const Rational& t) {
    const auto& f = ctx.factor;
    std::vector<int> b_cycles;
    for (int c = 0; c < static_cast<int>(f.cycle_count()); ++c)
        if (ctx.has_b_edge[c]) b_cycles.push_back(c);
    if (b_cycles.size() < 2) return std::nullopt;
    std::stable_sort(b_cycles.begin(), b_cycles.end(), [&](int a, int b) { return f.cycle(a).length() < f.cycle(b).length(); });
    for (int c : b_cycles) {
        auto order = f.cycle(c).order();
        std::sort(order.begin(), order.end());
        for (Vertex x : order) {
            if (ctx.edge_type(x) != EdgeType::B) continue;
            VertexSet keep = i_xy(g, f, c, x, f.succ(x));
            keep.set(static_cast<std::size_t>(x));
            if (auto w = make_witness(g, ~keep, t, witnesses::kTwoBCycles)) return w;
        }
    }
    return std::nullopt;
}

// S = A ∪ V_C(U^∞).
inline std::optional<ToughnessWitness> witness_final(const Graph& g, const TypingContext& ctx, const ClosureSystem& sys, const Rational& t) {
    const auto n = static_cast<std::size_t>(g.order());
    VertexSet on_c = ctx.factor.cycle(sys.cycle).vertex_set(n);
    VertexSet s = ctx.a_vertices | (g.neighbors(sys.u_infinity) & on_c);
    return make_witness(g, std::move(s), t, witnesses::kFinal);
}

// A co-absorbable v of degree at least (n − 1)/3: S = V(G) − N(v)^+ − {v}, successors taken on
// the co-absorbing cycle and the untouched cycles. N(v)^+ must be independent and v must
// have no two consecutive neighbours; otherwise the next candidate is tried.
inline std::optional<ToughnessWitness> witness_high_degree(const Graph& g, const TypingContext& ctx, const ClosureSystem& sys,
                                                           const Rational& t) {
    const auto& f = ctx.factor;
    const auto n = static_cast<std::size_t>(g.order());
    for (Vertex v : members(sys.u_infinity)) {
        if (3 * g.degree(v) < g.order() - 1) continue;
        std::optional<CoAbsorption> ca;
        try {
            ca = co_absorb(g, ctx, sys, v);
        } catch (const ConstructionUnavailable&) {
            continue;
        }
        auto succ = [&](Vertex w) {
            if (ca->cycle.contains(w)) return ca->cycle.succ(w);
            return f.succ(w);
        };
        VertexSet plus(n);
        bool ok = true;
        for (Vertex w : members(g.neighbors(v))) {
            Vertex s = succ(w);
            if (s == v || plus.test(static_cast<std::size_t>(s))) {
                ok = false;
                break;
            }
            plus.set(static_cast<std::size_t>(s));
        }
        if (!ok || !is_independent(g, plus)) continue;
        VertexSet keep = plus;
        keep.set(static_cast<std::size_t>(v));
        if (auto w = make_witness(g, ~keep, t, witnesses::kHighDegree)) return w;
    }
    return std::nullopt;
}

// Adjacent u, v in U^∞: S = N(u) ∪ N(v) − {u}.
inline std::optional<ToughnessWitness> witness_adjacent_closure(const Graph& g, const ClosureSystem& sys, const Rational& t) {
    for (Vertex u : members(sys.u_infinity))
        for (Vertex v : members(g.neighbors(u) & sys.u_infinity)) {
            if (v < u) continue;
            VertexSet s = g.neighbors(u) | g.neighbors(v);
            s.reset(static_cast<std::size_t>(u));
            if (auto w = make_witness(g, std::move(s), t, witnesses::kAdjacentClosure)) return w;
        }
    return std::nullopt;
}

// Fixed attempt order: W1, W2, W5, W3, W4; first verified wins.
inline std::optional<ToughnessWitness> find_witness(const Graph& g, const TypingContext& ctx, const Rational& t) {
    if (auto w = witness_all_alternating(g, ctx, t)) return w;
    if (auto w = witness_two_b_cycles(g, ctx, t)) return w;
    auto c = ctx.designated_cycle();
    if (!c) return std::nullopt;
    ClosureSystem sys = closure_system(g, ctx, *c);
    if (auto w = witness_final(g, ctx, sys, t)) return w;
    if (auto w = witness_high_degree(g, ctx, sys, t)) return w;
    return witness_adjacent_closure(g, sys, t);
}

}  // namespace toughham

#endif
