#ifndef TOUGHHAM_CYCLE_HPP
#define TOUGHHAM_CYCLE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace toughham {

struct InvalidAssembly : Error {
    using Error::Error;
};

struct InvalidRotation : Error {
    using Error::Error;
};

// A cycle of the host graph with a fixed orientation. Reversal yields a new object.
class OrientedCycle {
public:
    OrientedCycle() = default;

    explicit OrientedCycle(std::vector<Vertex> order) : order_(std::move(order)) {
        if (order_.size() < 3) throw Error("a cycle needs at least three vertices");
        Vertex top = *std::max_element(order_.begin(), order_.end());
        index_.assign(static_cast<std::size_t>(top) + 1, -1);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            Vertex v = order_[i];
            if (v < 0) throw Error("negative vertex on cycle");
            if (index_[v] != -1) throw Error("vertex " + std::to_string(v) + " repeated on cycle");
            index_[v] = static_cast<int>(i);
        }
    }

    // Throws unless every cyclically consecutive pair is an edge of g.
    OrientedCycle(const Graph& g, std::vector<Vertex> order) : OrientedCycle(std::move(order)) {
        for (std::size_t i = 0; i < order_.size(); ++i) {
            Vertex a = order_[i], b = order_[(i + 1) % order_.size()];
            if (a >= g.order() || b >= g.order() || !g.adjacent(a, b))
                throw Error("cycle uses non-edge " + std::to_string(a) + "-" + std::to_string(b));
        }
    }

    std::size_t length() const { return order_.size(); }
    const std::vector<Vertex>& order() const { return order_; }

    bool contains(Vertex v) const {
        return v >= 0 && static_cast<std::size_t>(v) < index_.size() && index_[v] != -1;
    }
    std::size_t position(Vertex v) const { return static_cast<std::size_t>(index_.at(v)); }

    Vertex succ(Vertex v, std::size_t k = 1) const { return order_[(position(v) + k) % order_.size()]; }
    Vertex pred(Vertex v, std::size_t k = 1) const {
        auto len = order_.size();
        return order_[(position(v) + len - (k % len)) % len];
    }

    // v and w joined by an edge of this cycle.
    bool consecutive(Vertex v, Vertex w) const {
        return contains(v) && contains(w) && (succ(v) == w || pred(v) == w);
    }

    // u ⇀ v following the orientation, both ends included; {u} when u == v.
    std::vector<Vertex> forward_arc(Vertex from, Vertex to) const {
        std::vector<Vertex> out{from};
        for (Vertex v = from; v != to;) {
            v = succ(v);
            out.push_back(v);
        }
        return out;
    }

    std::vector<Vertex> backward_arc(Vertex from, Vertex to) const {
        std::vector<Vertex> out{from};
        for (Vertex v = from; v != to;) {
            v = pred(v);
            out.push_back(v);
        }
        return out;
    }

    OrientedCycle reversed() const {
        std::vector<Vertex> r(order_.rbegin(), order_.rend());
        return OrientedCycle(std::move(r));
    }

    VertexSet vertex_set(std::size_t n) const { return make_set(n, order_); }

    friend bool operator==(const OrientedCycle& a, const OrientedCycle& b) { return a.order_ == b.order_; }

private:
    std::vector<Vertex> order_;
    std::vector<int> index_;
};

// Directed path stored literally; v† is the successor on the path.
class OrientedPath {
public:
    OrientedPath() = default;
    explicit OrientedPath(std::vector<Vertex> order) : order_(std::move(order)) {
        if (order_.empty()) throw Error("empty path");
    }

    OrientedPath(const Graph& g, std::vector<Vertex> order) : OrientedPath(std::move(order)) {
        std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            Vertex v = order_[i];
            if (v < 0 || v >= g.order() || seen[v]) throw Error("path repeats or leaves the graph at vertex " + std::to_string(v));
            seen[v] = 1;
            if (i + 1 < order_.size() && !g.adjacent(v, order_[i + 1]))
                throw Error("path uses non-edge " + std::to_string(v) + "-" + std::to_string(order_[i + 1]));
        }
    }

    Vertex start() const { return order_.front(); }
    Vertex end() const { return order_.back(); }
    std::size_t length() const { return order_.size(); }
    const std::vector<Vertex>& order() const { return order_; }

    std::size_t position(Vertex v) const {
        auto it = std::find(order_.begin(), order_.end(), v);
        if (it == order_.end()) throw Error("vertex " + std::to_string(v) + " not on path");
        return static_cast<std::size_t>(it - order_.begin());
    }
    bool contains(Vertex v) const { return std::find(order_.begin(), order_.end(), v) != order_.end(); }

    Vertex next(Vertex v) const { return order_.at(position(v) + 1); }
    Vertex prev(Vertex v) const {
        auto p = position(v);
        if (p == 0) throw Error("path start has no predecessor");
        return order_[p - 1];
    }

    // Sub-path between two vertices in either direction, both ends included.
    std::vector<Vertex> arc(Vertex from, Vertex to) const {
        auto a = position(from), b = position(to);
        std::vector<Vertex> out;
        if (a <= b) out.assign(order_.begin() + static_cast<long>(a), order_.begin() + static_cast<long>(b) + 1);
        else
            for (auto i = a + 1; i-- > b;) out.push_back(order_[i]);
        return out;
    }

    friend bool operator==(const OrientedPath& a, const OrientedPath& b) { return a.order_ == b.order_; }

private:
    std::vector<Vertex> order_;
};

enum class Direction { Forward, Backward };

// One piece of a concatenation "u P_c v x P_d y". Vertices are materialized at
// construction; kind/source/from/to/direction are kept for traces.
struct Segment {
    enum class Kind { CycleArc, SingleEdge, PathArc, Vertex };

    Kind kind = Kind::Vertex;
    int source = -1;
    toughham::Vertex from = -1;
    toughham::Vertex to = -1;
    Direction direction = Direction::Forward;
    std::vector<toughham::Vertex> vertices;

    static Segment cycle_arc(const OrientedCycle& c, int id, toughham::Vertex from, toughham::Vertex to, Direction dir) {
        if (!c.contains(from) || !c.contains(to)) throw InvalidAssembly("cycle arc endpoint not on cycle " + std::to_string(id));
        Segment s{Kind::CycleArc, id, from, to, dir, {}};
        s.vertices = dir == Direction::Forward ? c.forward_arc(from, to) : c.backward_arc(from, to);
        return s;
    }
    static Segment path_arc(const OrientedPath& p, int id, toughham::Vertex from, toughham::Vertex to) {
        if (!p.contains(from) || !p.contains(to)) throw InvalidAssembly("path arc endpoint not on path");
        Segment s{Kind::PathArc, id, from, to, Direction::Forward, {}};
        if (p.position(from) > p.position(to)) s.direction = Direction::Backward;
        s.vertices = p.arc(from, to);
        return s;
    }
    static Segment edge(toughham::Vertex u, toughham::Vertex v) { return {Kind::SingleEdge, -1, u, v, Direction::Forward, {u, v}}; }
    static Segment vertex(toughham::Vertex v) { return {Kind::Vertex, -1, v, v, Direction::Forward, {v}}; }
};

namespace detail {

inline std::optional<std::string> assembly_error(const Graph& g, const std::vector<Segment>& segments,
                                                 const VertexSet& required, std::vector<Vertex>& walk) {
    walk.clear();
    for (const auto& seg : segments) {
        for (std::size_t i = 0; i < seg.vertices.size(); ++i) {
            // a segment may restate the vertex the previous one ended on
            if (i == 0 && !walk.empty() && walk.back() == seg.vertices[0]) continue;
            walk.push_back(seg.vertices[i]);
        }
    }
    if (walk.size() > 1 && walk.back() == walk.front()) walk.pop_back();
    if (walk.size() < 3) return "closed walk has fewer than three vertices";

    VertexSet seen(static_cast<std::size_t>(g.order()));
    for (Vertex v : walk) {
        if (v < 0 || v >= g.order()) return "vertex " + std::to_string(v) + " out of range";
        if (seen.test(v)) return "vertex " + std::to_string(v) + " repeated";
        seen.set(v);
    }
    for (std::size_t i = 0; i < walk.size(); ++i) {
        Vertex a = walk[i], b = walk[(i + 1) % walk.size()];
        if (!g.adjacent(a, b)) return "junction " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge";
    }
    if (seen != required) return "vertex set does not match the required set";
    return std::nullopt;
}

}  // namespace detail

// The single validation point for every constructed cycle.
inline OrientedCycle assemble_cycle(const Graph& g, const std::vector<Segment>& segments, const VertexSet& required) {
    std::vector<Vertex> walk;
    if (auto err = detail::assembly_error(g, segments, required, walk)) throw InvalidAssembly(*err);
    return OrientedCycle(std::move(walk));
}

// Same checks; failure is a value. Covering set is whatever the walk visits.
inline std::optional<OrientedCycle> try_assemble(const Graph& g, const std::vector<Segment>& segments) {
    std::vector<Vertex> walk;
    for (const auto& seg : segments)
        for (std::size_t i = 0; i < seg.vertices.size(); ++i) {
            if (i == 0 && !walk.empty() && walk.back() == seg.vertices[0]) continue;
            walk.push_back(seg.vertices[i]);
        }
    if (walk.size() > 1 && walk.back() == walk.front()) walk.pop_back();
    for (Vertex v : walk)
        if (v < 0 || v >= g.order()) return std::nullopt;
    auto required = make_set(static_cast<std::size_t>(g.order()), walk);
    if (required.count() != walk.size()) return std::nullopt;
    std::vector<Vertex> checked;
    if (detail::assembly_error(g, segments, required, checked)) return std::nullopt;
    return OrientedCycle(std::move(checked));
}

// Given p = x1 ... x2 x2† ... x with x1 ~ x2†, returns x2 ⇐ x1 x2† ⇀ x.
inline OrientedPath rotate_path(const Graph& g, const OrientedPath& p, Vertex pivot) {
    if (!p.contains(pivot)) throw InvalidRotation("pivot " + std::to_string(pivot) + " not on path");
    auto at = p.position(pivot);
    if (at == 0 || at + 1 == p.length()) throw InvalidRotation("pivot " + std::to_string(pivot) + " is an endpoint");
    if (!g.adjacent(p.start(), pivot)) throw InvalidRotation("pivot " + std::to_string(pivot) + " not adjacent to start");
    const auto& ord = p.order();
    std::vector<Vertex> out;
    out.reserve(ord.size());
    for (auto i = at; i-- > 0;) out.push_back(ord[i]);
    out.insert(out.end(), ord.begin() + static_cast<long>(at), ord.end());
    return OrientedPath(std::move(out));
}

// Vertex-disjoint oriented cycles covering V(G).
class TwoFactor {
public:
    TwoFactor() = default;
    TwoFactor(const Graph& g, std::vector<OrientedCycle> cycles) : cycles_(std::move(cycles)) {
        cycle_of_.assign(static_cast<std::size_t>(g.order()), -1);
        for (std::size_t c = 0; c < cycles_.size(); ++c) {
            const auto& ord = cycles_[c].order();
            for (std::size_t i = 0; i < ord.size(); ++i) {
                Vertex v = ord[i];
                if (v < 0 || v >= g.order()) throw Error("cycle vertex out of range");
                if (cycle_of_[v] != -1) throw Error("vertex " + std::to_string(v) + " lies on two cycles");
                cycle_of_[v] = static_cast<int>(c);
                if (!g.adjacent(v, ord[(i + 1) % ord.size()])) throw Error("two-factor uses a non-edge");
            }
        }
        for (Vertex v = 0; v < g.order(); ++v)
            if (cycle_of_[v] == -1) throw Error("vertex " + std::to_string(v) + " not covered by the two-factor");
    }

    std::size_t cycle_count() const { return cycles_.size(); }
    const std::vector<OrientedCycle>& cycles() const { return cycles_; }
    const OrientedCycle& cycle(int id) const { return cycles_.at(static_cast<std::size_t>(id)); }
    int cycle_of(Vertex v) const { return cycle_of_.at(static_cast<std::size_t>(v)); }
    const OrientedCycle& cycle_containing(Vertex v) const { return cycle(cycle_of(v)); }

    Vertex succ(Vertex v) const { return cycle_containing(v).succ(v); }
    Vertex pred(Vertex v) const { return cycle_containing(v).pred(v); }

    // Drops the listed cycles and appends the replacements.
    TwoFactor replaced(const Graph& g, const std::vector<int>& drop, const std::vector<OrientedCycle>& add) const {
        std::vector<OrientedCycle> next;
        for (std::size_t c = 0; c < cycles_.size(); ++c)
            if (std::find(drop.begin(), drop.end(), static_cast<int>(c)) == drop.end()) next.push_back(cycles_[c]);
        next.insert(next.end(), add.begin(), add.end());
        return TwoFactor(g, std::move(next));
    }

    friend bool operator==(const TwoFactor& a, const TwoFactor& b) { return a.cycles_ == b.cycles_; }

private:
    std::vector<OrientedCycle> cycles_;
    std::vector<int> cycle_of_;
};

// Checks the partition and degree-2 properties from scratch.
inline bool is_two_factor(const Graph& g, const std::vector<std::vector<Vertex>>& cycles) {
    std::vector<int> deg(static_cast<std::size_t>(g.order()), 0);
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (const auto& c : cycles) {
        if (c.size() < 3) return false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            Vertex a = c[i], b = c[(i + 1) % c.size()];
            if (a < 0 || a >= g.order() || seen[a]) return false;
            seen[a] = 1;
            if (!g.adjacent(a, b)) return false;
            ++deg[a];
            ++deg[b];
        }
    }
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
}

inline bool is_hamiltonian_cycle(const Graph& g, const std::vector<Vertex>& order) {
    return g.order() >= 3 && order.size() == static_cast<std::size_t>(g.order()) && is_two_factor(g, {order});
}

}  // namespace toughham

#endif
