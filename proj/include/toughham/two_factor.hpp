#ifndef TOUGHHAM_TWO_FACTOR_HPP
#define TOUGHHAM_TWO_FACTOR_HPP

#include <optional>
#include <vector>

#include "cycle.hpp"
#include "graph.hpp"
#include "matching.hpp"

namespace toughham {

struct DegreeTooSmall : Error {
    explicit DegreeTooSmall(Vertex v) : Error("vertex " + std::to_string(v) + " has degree below 2"), vertex(v) {}
    Vertex vertex;
};

// Degree-constrained subgraph reduction for f = 2: every original vertex v of degree d
// becomes d edge copies plus d - 2 inner vertices, copies completely joined to inners,
// and each original edge vw joins copy (v, w) to copy (w, v).
struct GadgetGraph {
    struct Tag {
        enum class Kind { EdgeCopy, Inner } kind;
        Vertex owner;
        Vertex other;  // far end of the original edge, -1 for inner vertices
    };

    Graph host;
    std::vector<Tag> tags;
};

inline GadgetGraph build_2factor_gadget(const Graph& g) {
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) < 2) throw DegreeTooSmall(v);

    GadgetGraph out;
    std::vector<std::vector<int>> copy_of(static_cast<std::size_t>(g.order()), std::vector<int>(static_cast<std::size_t>(g.order()), -1));
    std::vector<std::vector<int>> inner_of(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) {
        for (Vertex w : members(g.neighbors(v))) {
            copy_of[v][w] = static_cast<int>(out.tags.size());
            out.tags.push_back({GadgetGraph::Tag::Kind::EdgeCopy, v, w});
        }
        for (int k = 0; k < g.degree(v) - 2; ++k) {
            inner_of[v].push_back(static_cast<int>(out.tags.size()));
            out.tags.push_back({GadgetGraph::Tag::Kind::Inner, v, -1});
        }
    }
    out.host = Graph(static_cast<int>(out.tags.size()));
    for (Vertex v = 0; v < g.order(); ++v)
        for (Vertex w : members(g.neighbors(v))) {
            for (int inner : inner_of[v]) out.host.add_edge(copy_of[v][w], inner);
            if (v < w) out.host.add_edge(copy_of[v][w], copy_of[w][v]);
        }
    return out;
}

// Splits a 2-regular spanning edge set into cycles. Each cycle starts at its lowest
// unvisited vertex and leaves through the lower-indexed of its two neighbors.
inline TwoFactor cycles_from_edges(const Graph& g, const std::vector<Edge>& edges) {
    std::vector<std::vector<Vertex>> nbr(static_cast<std::size_t>(g.order()));
    for (auto [u, v] : edges) {
        nbr[u].push_back(v);
        nbr[v].push_back(u);
    }
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<OrientedCycle> cycles;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        if (nbr[s].size() != 2) throw Error("edge set is not 2-regular at vertex " + std::to_string(s));
        std::vector<Vertex> order{s};
        seen[s] = 1;
        Vertex prev = s, cur = std::min(nbr[s][0], nbr[s][1]);
        while (cur != s) {
            if (nbr[cur].size() != 2 || seen[cur]) throw Error("edge set is not 2-regular at vertex " + std::to_string(cur));
            seen[cur] = 1;
            order.push_back(cur);
            Vertex next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
            prev = cur;
            cur = next;
        }
        cycles.emplace_back(g, std::move(order));
    }
    return TwoFactor(g, std::move(cycles));
}

inline std::optional<TwoFactor> find_two_factor(const Graph& g) {
    if (g.order() < 3) return std::nullopt;
    GadgetGraph gadget;
    try {
        gadget = build_2factor_gadget(g);
    } catch (const DegreeTooSmall&) {
        return std::nullopt;
    }
    Matching m = max_matching(gadget.host);
    if (2 * m.size() != static_cast<std::size_t>(gadget.host.order())) return std::nullopt;

    using Kind = GadgetGraph::Tag::Kind;
    std::vector<Edge> chosen;
    for (auto [a, b] : m.edges) {
        const auto& ta = gadget.tags[a];
        const auto& tb = gadget.tags[b];
        if (ta.kind == Kind::EdgeCopy && tb.kind == Kind::EdgeCopy && ta.owner < tb.owner) chosen.emplace_back(ta.owner, tb.owner);
        else if (ta.kind == Kind::EdgeCopy && tb.kind == Kind::EdgeCopy) chosen.emplace_back(tb.owner, ta.owner);
    }
    return cycles_from_edges(g, chosen);
}

}  // namespace toughham

#endif
