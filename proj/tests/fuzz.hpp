// State generators and a rule runner shared by the merge-rule fuzz tests and the
// acceptance binary.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toughham/toughham.hpp"

namespace fuzz {

using namespace toughham;

struct State {
    Graph g;
    TwoFactor f;
};

inline std::vector<Vertex> shuffled(int n, CounterRng& r) {
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) perm[v] = v;
    for (int v = n - 1; v > 0; --v) std::swap(perm[v], perm[r.below(static_cast<std::uint64_t>(v) + 1)]);
    return perm;
}

// 2-4 cycles of length 3-6 planted on shuffled labels, other pairs joined with probability p.
// Not 2K2-free in general; merges must still be valid.
inline State planted(std::uint64_t seed, double p) {
    CounterRng r(seed);
    int k = 2 + static_cast<int>(r.below(3));
    std::vector<int> lens;
    int n = 0;
    for (int j = 0; j < k; ++j) {
        lens.push_back(3 + static_cast<int>(r.below(4)));
        n += lens.back();
    }
    auto perm = shuffled(n, r);
    Graph g(n);
    std::vector<OrientedCycle> cycles;
    int at = 0;
    for (int len : lens) {
        std::vector<Vertex> ord;
        for (int j = 0; j < len; ++j) ord.push_back(perm[at + j]);
        for (int j = 0; j < len; ++j) g.add_edge(ord[j], ord[(j + 1) % len]);
        cycles.emplace_back(ord);
        at += len;
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && r.bernoulli(p)) g.add_edge(u, v);
    TwoFactor f(g, cycles);
    return {std::move(g), std::move(f)};
}

// A generated 2K2-free graph with the 2-factor found on a shuffled copy, mapped back.
inline std::optional<State> natural(std::uint64_t seed, int n_min = 6, int n_max = 14) {
    CounterRng r(seed);
    int n = n_min + static_cast<int>(r.below(static_cast<std::uint64_t>(n_max - n_min + 1)));
    Graph g;
    switch (seed % 3) {
        case 0: {
            int k = 2 + static_cast<int>(r.below(static_cast<std::uint64_t>(n - 2)));
            g = gen_split(k, n - k, 0.3 + 0.6 * r.uniform(), seed);
            break;
        }
        case 1: g = gen_cochordal(n, seed, 0.3 + 0.7 * r.uniform()); break;
        default: g = gen_multipartite(n, 2 + static_cast<int>(r.below(4)), seed); break;
    }
    auto perm = shuffled(n, r);
    auto fh = find_two_factor(g.relabeled(perm));
    if (!fh) return std::nullopt;
    std::vector<Vertex> inv(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) inv[perm[v]] = v;
    std::vector<OrientedCycle> cycles;
    for (const auto& c : fh->cycles()) {
        std::vector<Vertex> ord;
        for (Vertex v : c.order()) ord.push_back(inv[v]);
        cycles.emplace_back(g, ord);
    }
    TwoFactor f(g, cycles);
    return State{std::move(g), std::move(f)};
}

enum class Outcome { Holds, Merge, Unavailable, Found2K2, NotApplicable };

struct RuleRun {
    std::string rule;
    Outcome outcome;
    std::optional<MergeResult> merge;
};

// Calls every rule directly on the state, whether or not an earlier rule fired.
inline std::vector<RuleRun> run_all_rules(const Graph& g, const TwoFactor& f) {
    std::vector<RuleRun> out;
    auto call = [&](const char* name, auto&& fn) {
        try {
            CheckOrMerge r = fn();
            out.push_back({name, r.holds() ? Outcome::Holds : Outcome::Merge, std::move(r.merge)});
        } catch (const ConstructionUnavailable&) {
            out.push_back({name, Outcome::Unavailable, std::nullopt});
        } catch (const InducedTwoK2Found&) {
            out.push_back({name, Outcome::Found2K2, std::nullopt});
        }
    };
    if (f.cycle_count() < 2) return out;
    call(rules::kNonadjacency, [&] { return rule_nonadjacency(g, f); });
    TypingContext ctx = classify(g, f);
    call(rules::kATypeEdge, [&] { return rule_a_type_edge(g, f, ctx); });
    call(rules::kAPlusIndependent, [&] { return rule_a_plus_independent(g, f, ctx); });
    auto c = ctx.designated_cycle();
    if (!c) {
        for (const char* r : {rules::kBEdgeSplitNeighbors, rules::kBadSuccessor, rules::kRotationAbsorb, rules::kCoAbsorbExtension})
            out.push_back({r, Outcome::NotApplicable, std::nullopt});
        return out;
    }
    call(rules::kBEdgeSplitNeighbors, [&] { return rule_b_edge_split_neighbors(g, f, ctx, *c); });
    call(rules::kBadSuccessor, [&] { return rule_bad_successor(g, f, ctx, *c); });
    ClosureSystem sys = closure_system(g, ctx, *c);
    call(rules::kRotationAbsorb, [&] { return rule_rotation_absorb(g, ctx, sys); });
    call(rules::kCoAbsorbExtension, [&] { return rule_co_absorb_extension(g, ctx, sys); });
    return out;
}

// Re-derives the merge invariants without the library's checker: each replacement cycle is
// a closed walk on edges of g, the replacements are disjoint, cover exactly the replaced
// cycles, and are fewer.
inline std::optional<std::string> merge_defect(const Graph& g, const TwoFactor& f, const MergeResult& m) {
    if (m.replacement.size() >= m.replaced.size()) return "cycle count does not drop";
    std::vector<int> owner(static_cast<std::size_t>(g.order()), 0);
    for (int id : m.replaced)
        for (Vertex v : f.cycle(id).order()) owner[v] = 1;
    for (const auto& c : m.replacement) {
        const auto& ord = c.order();
        if (ord.size() < 3) return "short cycle";
        for (std::size_t i = 0; i < ord.size(); ++i) {
            Vertex a = ord[i], b = ord[(i + 1) % ord.size()];
            if (a < 0 || a >= g.order()) return "vertex out of range";
            if (!g.adjacent(a, b)) return "non-edge " + std::to_string(a) + "-" + std::to_string(b);
            if (owner[a] != 1) return "vertex " + std::to_string(a) + " covered twice or not replaced";
            owner[a] = 2;
        }
    }
    for (int v : owner)
        if (v == 1) return "replaced vertex left uncovered";
    return std::nullopt;
}

inline std::string describe(const Graph& g, const TwoFactor& f) {
    std::string s = to_text(g) + "factor:";
    for (const auto& c : f.cycles()) {
        for (Vertex v : c.order()) s += " " + std::to_string(v);
        s += " |";
    }
    return s;
}

}  // namespace fuzz
