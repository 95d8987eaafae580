#ifndef TOUGHHAM_MATCHING_HPP
#define TOUGHHAM_MATCHING_HPP

#include <algorithm>
#include <deque>
#include <vector>

#include "graph.hpp"

namespace toughham {

struct Matching {
    std::vector<Edge> edges;  // (u, v) with u < v, sorted

    std::size_t size() const { return edges.size(); }
};

inline bool is_matching(const Graph& g, const Matching& m) {
    std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
    for (auto [u, v] : m.edges) {
        if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || !g.adjacent(u, v)) return false;
        if (used[u] || used[v]) return false;
        used[u] = used[v] = 1;
    }
    return true;
}

namespace detail {

// Edmonds' blossom algorithm, O(V^3): BFS from each free vertex, contracting odd cycles
// by relabelling their vertices with a common base.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const Graph& g)
        : g_(g), n_(g.order()), mate_(static_cast<std::size_t>(n_), -1), parent_(static_cast<std::size_t>(n_)),
          base_(static_cast<std::size_t>(n_)), in_queue_(static_cast<std::size_t>(n_)),
          in_blossom_(static_cast<std::size_t>(n_)) {
        for (const auto& adj_list : adjacency()) lists_.push_back(adj_list);
    }

    std::vector<Vertex> run() {
        // greedy start keeps the augmenting phase short
        for (Vertex v = 0; v < n_; ++v) {
            if (mate_[v] != -1) continue;
            for (Vertex w : lists_[v])
                if (mate_[w] == -1) {
                    mate_[v] = w;
                    mate_[w] = v;
                    break;
                }
        }
        for (Vertex v = 0; v < n_; ++v)
            if (mate_[v] == -1) {
                Vertex end = find_augmenting_path(v);
                while (end != -1) {
                    Vertex pv = parent_[end], ppv = mate_[pv];
                    mate_[end] = pv;
                    mate_[pv] = end;
                    end = ppv;
                }
            }
        return mate_;
    }

private:
    std::vector<std::vector<Vertex>> adjacency() const {
        std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n_));
        for (Vertex v = 0; v < n_; ++v) out[v] = members(g_.neighbors(v));
        return out;
    }

    Vertex lowest_common_ancestor(Vertex a, Vertex b) {
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (mate_[a] == -1) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    Vertex find_augmenting_path(Vertex root) {
        std::fill(parent_.begin(), parent_.end(), -1);
        std::fill(in_queue_.begin(), in_queue_.end(), 0);
        for (Vertex v = 0; v < n_; ++v) base_[v] = v;
        std::deque<Vertex> queue{root};
        in_queue_[root] = 1;
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex to : lists_[v]) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
                    Vertex cur_base = lowest_common_ancestor(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (Vertex i = 0; i < n_; ++i)
                        if (in_blossom_[base_[i]]) {
                            base_[i] = cur_base;
                            if (!in_queue_[i]) {
                                in_queue_[i] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (mate_[to] == -1) return to;
                    in_queue_[mate_[to]] = 1;
                    queue.push_back(mate_[to]);
                }
            }
        }
        return -1;
    }

    const Graph& g_;
    int n_;
    std::vector<Vertex> mate_, parent_, base_;
    std::vector<char> in_queue_, in_blossom_;
    std::vector<std::vector<Vertex>> lists_;
};

}  // namespace detail

// Maximum-cardinality matching of a general graph.
inline Matching max_matching(const Graph& g) {
    auto mate = detail::BlossomMatcher(g).run();
    Matching m;
    for (Vertex v = 0; v < g.order(); ++v)
        if (mate[v] > v) m.edges.emplace_back(v, mate[v]);
    return m;
}

}  // namespace toughham

#endif
