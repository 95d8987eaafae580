#ifndef TOUGHHAM_CLASSIFIER_HPP
#define TOUGHHAM_CLASSIFIER_HPP

#include <map>
#include <optional>
#include <vector>

#include "cycle.hpp"
#include "graph.hpp"

namespace toughham {

struct SingleCycle : Error {
    SingleCycle() : Error("two-factor has a single cycle") {}
};

struct NotCycleEdge : Error {
    using Error::Error;
};

// x ~ u and x ~ u^+ with uu^+ an edge of cycle `cycle`.
struct AWitness {
    int cycle = -1;
    Vertex u = -1;
    friend bool operator==(const AWitness&, const AWitness&) = default;
};

enum class EdgeType { A, B, AB };

// Every consecutive pair (u, u^+) on a cycle other than x's own, both adjacent to x.
// Ordered by cycle id, then u.
inline std::vector<AWitness> a_witnesses(const Graph& g, const TwoFactor& f, Vertex x) {
    std::vector<AWitness> out;
    const int own = f.cycle_of(x);
    for (int d = 0; d < static_cast<int>(f.cycle_count()); ++d) {
        if (d == own) continue;
        const auto& cyc = f.cycle(d);
        std::vector<Vertex> us;
        for (Vertex u : cyc.order())
            if (g.adjacent(x, u) && g.adjacent(x, cyc.succ(u))) us.push_back(u);
        std::sort(us.begin(), us.end());
        for (Vertex u : us) out.push_back({d, u});
    }
    return out;
}

// A/B typing of one two-factor.
struct TypingContext {
    TwoFactor factor;
    VertexSet a_vertices;
    VertexSet b_vertices;
    std::vector<std::optional<AWitness>> witness;  // canonical: lowest cycle id, then lowest u
    std::vector<char> alternating;                  // per cycle: all edges AB-type
    std::vector<char> has_b_edge;                   // per cycle

    bool is_a(Vertex v) const { return a_vertices.test(static_cast<std::size_t>(v)); }
    bool is_b(Vertex v) const { return b_vertices.test(static_cast<std::size_t>(v)); }

    // Type of the cycle edge x x^+.
    EdgeType edge_type(Vertex x) const {
        Vertex y = factor.succ(x);
        if (is_a(x) && is_a(y)) return EdgeType::A;
        if (is_b(x) && is_b(y)) return EdgeType::B;
        return EdgeType::AB;
    }

    // A^+: successors of A-type vertices on their own cycles.
    VertexSet a_plus() const {
        VertexSet out(a_vertices.size());
        for (Vertex v : members(a_vertices)) out.set(static_cast<std::size_t>(factor.succ(v)));
        return out;
    }

    VertexSet b_on(int cycle) const { return b_vertices & factor.cycle(cycle).vertex_set(b_vertices.size()); }
    VertexSet a_on(int cycle) const { return a_vertices & factor.cycle(cycle).vertex_set(a_vertices.size()); }

    // The unique cycle carrying a B-type edge when every other cycle is AB-alternating.
    std::optional<int> designated_cycle() const {
        std::optional<int> found;
        for (int c = 0; c < static_cast<int>(factor.cycle_count()); ++c) {
            if (alternating[c]) continue;
            if (!has_b_edge[c] || found) return std::nullopt;
            found = c;
        }
        return found;
    }
};

inline TypingContext classify(const Graph& g, const TwoFactor& f) {
    if (f.cycle_count() < 2) throw SingleCycle();
    const auto n = static_cast<std::size_t>(g.order());
    TypingContext ctx{f, VertexSet(n), VertexSet(n), std::vector<std::optional<AWitness>>(n), {}, {}};
    for (Vertex x = 0; x < g.order(); ++x) {
        auto ws = a_witnesses(g, f, x);
        if (!ws.empty()) {
            ctx.a_vertices.set(static_cast<std::size_t>(x));
            ctx.witness[x] = ws.front();
        }
    }
    ctx.b_vertices = ~ctx.a_vertices;
    for (int c = 0; c < static_cast<int>(f.cycle_count()); ++c) {
        bool alt = true, b_edge = false;
        for (Vertex x : f.cycle(c).order()) {
            auto t = ctx.edge_type(x);
            if (t != EdgeType::AB) alt = false;
            if (t == EdgeType::B) b_edge = true;
        }
        ctx.alternating.push_back(alt);
        ctx.has_b_edge.push_back(b_edge);
    }
    return ctx;
}

// V_D(x) = N_G(x) ∩ V(D).
inline VertexSet neighbor_profile(const Graph& g, const TwoFactor& f, Vertex x, int d) {
    if (f.cycle_of(x) == d) throw Error("vertex " + std::to_string(x) + " lies on the profiled cycle");
    return g.neighbors(x) & f.cycle(d).vertex_set(static_cast<std::size_t>(g.order()));
}

// Vertices off C adjacent to neither end of the C-edge xy.
inline VertexSet i_xy(const Graph& g, const TwoFactor& f, int c, Vertex x, Vertex y) {
    const auto& cyc = f.cycle(c);
    if (!cyc.consecutive(x, y)) throw NotCycleEdge(std::to_string(x) + "-" + std::to_string(y) + " is not an edge of cycle " + std::to_string(c));
    VertexSet out = ~(g.neighbors(x) | g.neighbors(y));
    out -= cyc.vertex_set(static_cast<std::size_t>(g.order()));
    return out;
}

// Cycles D != C with V_D(x) = B ∩ V(D) nonempty.
inline std::vector<int> bad_wrt(const Graph& g, const TypingContext& ctx, Vertex x) {
    std::vector<int> out;
    for (int d = 0; d < static_cast<int>(ctx.factor.cycle_count()); ++d) {
        if (d == ctx.factor.cycle_of(x)) continue;
        VertexSet bd = ctx.b_on(d);
        if (bd.any() && neighbor_profile(g, ctx.factor, x, d) == bd) out.push_back(d);
    }
    return out;
}

inline bool is_bad(const Graph& g, const TypingContext& ctx, Vertex x) { return !bad_wrt(g, ctx, x).empty(); }

// V_bad: bad or A-type vertices on C.
inline VertexSet bad_vertices(const Graph& g, const TwoFactor& f, int c, const TypingContext& ctx) {
    VertexSet out(static_cast<std::size_t>(g.order()));
    for (Vertex x : f.cycle(c).order())
        if (ctx.is_a(x) || is_bad(g, ctx, x)) out.set(static_cast<std::size_t>(x));
    return out;
}

// U_x^∞ with one stored spanning path per member (first discovered wins; breadth-first
// over member order, then pivot position).
struct RotationClosure {
    struct Member {
        Vertex vertex;
        int layer;
        OrientedPath path;  // starts at vertex, ends at base, spans V(C)
        Vertex parent;      // member whose path was rotated; -1 for x^+
        Vertex pivot;       // v† on the parent's path; -1 for x^+
    };

    int cycle = -1;
    Vertex base = -1;
    std::vector<Member> members;
    std::vector<std::vector<Vertex>> layers;
    VertexSet all;

    const Member& member(Vertex v) const {
        for (const auto& m : members)
            if (m.vertex == v) return m;
        throw Error("vertex " + std::to_string(v) + " not in rotation closure");
    }
    bool contains(Vertex v) const { return all.test(static_cast<std::size_t>(v)); }
};

inline RotationClosure rotation_closure(const Graph& g, const TwoFactor& f, int c, Vertex x, const VertexSet& v_bad) {
    if (!v_bad.test(static_cast<std::size_t>(x))) throw Error("closure base " + std::to_string(x) + " is not in V_bad");
    const auto& cyc = f.cycle(c);
    RotationClosure rc;
    rc.cycle = c;
    rc.base = x;
    rc.all = VertexSet(static_cast<std::size_t>(g.order()));
    Vertex first = cyc.succ(x);
    rc.members.push_back({first, 0, OrientedPath(cyc.forward_arc(first, x)), -1, -1});
    rc.layers.push_back({first});
    rc.all.set(static_cast<std::size_t>(first));

    std::size_t layer_begin = 0;
    for (int layer = 1;; ++layer) {
        std::size_t layer_end = rc.members.size();
        std::vector<Vertex> found;
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            const Vertex w = rc.members[i].vertex;
            const OrientedPath path = rc.members[i].path;
            const auto& ord = path.order();
            for (std::size_t pos = 2; pos + 1 < ord.size(); ++pos) {
                Vertex pivot = ord[pos];
                if (v_bad.test(static_cast<std::size_t>(pivot)) || !g.adjacent(w, pivot)) continue;
                Vertex v = ord[pos - 1];
                if (rc.all.test(static_cast<std::size_t>(v))) continue;
                rc.all.set(static_cast<std::size_t>(v));
                rc.members.push_back({v, layer, rotate_path(g, path, pivot), w, pivot});
                found.push_back(v);
            }
        }
        if (found.empty()) break;
        rc.layers.push_back(std::move(found));
        layer_begin = layer_end;
    }
    return rc;
}

// Replays each stored rotation from its parent; independent of the discovery loop.
inline bool replay_closure(const Graph& g, const TwoFactor& f, const RotationClosure& rc, const VertexSet& v_bad) {
    const auto& cyc = f.cycle(rc.cycle);
    const auto cset = cyc.vertex_set(static_cast<std::size_t>(g.order()));
    if (rc.members.empty() || rc.members[0].vertex != cyc.succ(rc.base)) return false;
    std::map<Vertex, const RotationClosure::Member*> by_vertex;
    for (const auto& m : rc.members) {
        if (by_vertex.count(m.vertex)) return false;
        by_vertex[m.vertex] = &m;
        const auto& ord = m.path.order();
        if (ord.front() != m.vertex || ord.back() != rc.base) return false;
        if (make_set(static_cast<std::size_t>(g.order()), ord) != cset || ord.size() != cyc.length()) return false;
        for (std::size_t i = 0; i + 1 < ord.size(); ++i)
            if (!g.adjacent(ord[i], ord[i + 1])) return false;
        if (m.parent == -1) {
            if (m.layer != 0 || ord != cyc.forward_arc(m.vertex, rc.base)) return false;
            continue;
        }
        auto it = by_vertex.find(m.parent);
        if (it == by_vertex.end() || it->second->layer != m.layer - 1) return false;
        const auto& parent_path = it->second->path;
        if (v_bad.test(static_cast<std::size_t>(m.pivot)) || !g.adjacent(m.parent, m.pivot)) return false;
        if (parent_path.prev(m.pivot) != m.vertex) return false;
        // x2 ⇐ x1, then x2† ⇀ x
        std::vector<Vertex> expect = parent_path.arc(m.vertex, parent_path.start());
        auto tail = parent_path.arc(m.pivot, parent_path.end());
        expect.insert(expect.end(), tail.begin(), tail.end());
        if (expect != ord) return false;
    }
    for (std::size_t i = 0; i < rc.layers.size(); ++i)
        for (Vertex v : rc.layers[i])
            if (by_vertex.at(v)->layer != static_cast<int>(i)) return false;
    return true;
}

// Rotation closures for every x in V_bad, and their union U^∞.
struct ClosureSystem {
    int cycle = -1;
    VertexSet v_bad;
    std::vector<RotationClosure> closures;
    VertexSet u_infinity;
};

inline ClosureSystem closure_system(const Graph& g, const TypingContext& ctx, int c) {
    ClosureSystem sys;
    sys.cycle = c;
    sys.v_bad = bad_vertices(g, ctx.factor, c, ctx);
    sys.u_infinity = VertexSet(static_cast<std::size_t>(g.order()));
    for (Vertex x : members(sys.v_bad)) {
        sys.closures.push_back(rotation_closure(g, ctx.factor, c, x, sys.v_bad));
        sys.u_infinity |= sys.closures.back().all;
    }
    return sys;
}

// Starting data for the co-absorption arguments: a cycle D != C for which x is bad or
// A-type, a B-type neighbour u of x on D, and the orientation of D in which u^+ is meant.
// For A-type anchors x ~ u, u^+ in that orientation.
struct Anchor {
    int d;
    Vertex u;
    bool reversed;
    bool bad;
};

inline std::vector<Anchor> anchors(const Graph& g, const TypingContext& ctx, Vertex x) {
    std::vector<Anchor> out;
    const auto& f = ctx.factor;
    for (int d : bad_wrt(g, ctx, x))
        for (Vertex u : members(ctx.b_on(d))) {
            out.push_back({d, u, false, true});
            out.push_back({d, u, true, true});
        }
    for (const auto& w : a_witnesses(g, f, x)) {
        Vertex up = f.cycle(w.cycle).succ(w.u);
        if (ctx.is_b(w.u)) out.push_back({w.cycle, w.u, false, false});
        if (ctx.is_b(up)) out.push_back({w.cycle, up, true, false});
    }
    return out;
}

}  // namespace toughham

#endif
