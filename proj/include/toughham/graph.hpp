#ifndef TOUGHHAM_GRAPH_HPP
#define TOUGHHAM_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace toughham {

using Vertex = int;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<Vertex, Vertex>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct TooLarge : Error {
    using Error::Error;
};

inline std::vector<Vertex> members(const VertexSet& s) {
    std::vector<Vertex> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i))
        out.push_back(static_cast<Vertex>(i));
    return out;
}

inline VertexSet make_set(std::size_t n, std::initializer_list<Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.set(static_cast<std::size_t>(v));
    return s;
}

template <typename Range>
VertexSet make_set(std::size_t n, const Range& vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.set(static_cast<std::size_t>(v));
    return s;
}

// Undirected simple graph on vertices 0..n-1, adjacency held as bitsets.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n))) {}

    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int order() const { return static_cast<int>(adj_.size()); }

    std::size_t size() const {
        std::size_t m = 0;
        for (const auto& a : adj_) m += a.count();
        return m / 2;
    }

    void add_edge(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
        adj_[u].set(v);
        adj_[v].set(u);
    }

    void remove_edge(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        adj_[u].reset(v);
        adj_[v].reset(u);
    }

    bool adjacent(Vertex u, Vertex v) const { return adj_[u].test(v); }
    const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].count()); }

    VertexSet empty_set() const { return VertexSet(adj_.size()); }
    VertexSet all_vertices() const {
        VertexSet s(adj_.size());
        s.set();
        return s;
    }

    // N_G(S): neighbors of S outside S.
    VertexSet neighbors(const VertexSet& s) const {
        VertexSet out(adj_.size());
        for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) out |= adj_[i];
        return out - s;
    }

    bool is_complete() const {
        for (int v = 0; v < order(); ++v)
            if (degree(v) != order() - 1) return false;
        return true;
    }

    // Edges (u, v) with u < v in ascending lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < order(); ++u)
            for (auto v = adj_[u].find_next(u); v != VertexSet::npos; v = adj_[u].find_next(v))
                out.emplace_back(u, static_cast<Vertex>(v));
        return out;
    }

    Graph complement() const {
        Graph h(order());
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v = u + 1; v < order(); ++v)
                if (!adjacent(u, v)) h.add_edge(u, v);
        return h;
    }

    Graph induced(const std::vector<Vertex>& keep) const {
        Graph h(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (adjacent(keep[i], keep[j])) h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        return h;
    }

    // Vertex v of this graph becomes perm[v] in the result.
    Graph relabeled(const std::vector<Vertex>& perm) const {
        Graph h(order());
        for (auto [u, v] : edges()) h.add_edge(perm[u], perm[v]);
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= order()) throw Error("vertex " + std::to_string(v) + " out of range");
    }

    std::vector<VertexSet> adj_;
};

// c(G - removed). Flood fill over bitsets.
inline int component_count(const Graph& g, const VertexSet& removed) {
    VertexSet left = ~removed;
    left.resize(static_cast<std::size_t>(g.order()));
    int count = 0;
    while (left.any()) {
        ++count;
        auto start = left.find_first();
        VertexSet frontier(left.size());
        frontier.set(start);
        left.reset(start);
        while (frontier.any()) {
            VertexSet next(left.size());
            for (auto i = frontier.find_first(); i != VertexSet::npos; i = frontier.find_next(i))
                next |= g.neighbors(static_cast<Vertex>(i));
            next &= left;
            left -= next;
            frontier = std::move(next);
        }
    }
    return count;
}

inline int component_count(const Graph& g) { return component_count(g, g.empty_set()); }

// Text format: "n m" then m lines "u v", u < v, ascending.
inline void write_graph(std::ostream& os, const Graph& g) {
    auto es = g.edges();
    os << g.order() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) os << u << ' ' << v << '\n';
}

inline std::string to_text(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

inline Graph read_graph(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    auto parse_pair = [&](long long& a, long long& b) {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> a >> b)) throw ParseError(lineno, "expected two integers");
        if (ls >> extra) throw ParseError(lineno, "trailing content '" + extra + "'");
    };

    if (!next_line()) throw ParseError(lineno + 1, "missing header line \"n m\"");
    long long n = 0, m = 0;
    parse_pair(n, m);
    if (n < 0 || m < 0) throw ParseError(lineno, "negative count");
    if (n > 1'000'000) throw ParseError(lineno, "vertex count too large");

    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        long long u = 0, v = 0;
        parse_pair(u, v);
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex out of range");
        if (u == v) throw ParseError(lineno, "self-loop");
        if (g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) throw ParseError(lineno, "duplicate edge");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (next_line()) throw ParseError(lineno, "unexpected content after edge list");
    return g;
}

inline Graph from_text(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

// FNV-1a over the canonical text serialization.
inline std::string graph_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : to_text(g)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
}

namespace graphs {

inline Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

inline Graph path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

inline Graph complete_multipartite(const std::vector<int>& parts) {
    int n = 0;
    std::vector<int> part_of;
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int k = 0; k < parts[p]; ++k, ++n) part_of.push_back(static_cast<int>(p));
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v]) g.add_edge(u, v);
    return g;
}

}  // namespace graphs

}  // namespace toughham

#endif
