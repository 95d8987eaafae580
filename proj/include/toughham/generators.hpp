#ifndef TOUGHHAM_GENERATORS_HPP
#define TOUGHHAM_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"
#include "recognizers.hpp"

namespace toughham {

// splitmix64 over (seed, counter): draw k depends only on seed and k, so streams are
// reproducible on every platform (unlike <random> distributions).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : next() % k; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// Clique on 0..k-1, independent set on k..k+i-1, cross pairs kept with probability p.
inline Graph gen_split(int clique_size, int indep_size, double cross_density, std::uint64_t seed) {
    if (clique_size < 0 || indep_size < 0) throw Error("split sizes must be nonnegative");
    if (cross_density < 0 || cross_density > 1) throw Error("density must lie in [0, 1]");
    CounterRng rng(seed);
    Graph g(clique_size + indep_size);
    for (int u = 0; u < clique_size; ++u)
        for (int v = u + 1; v < clique_size; ++v) g.add_edge(u, v);
    for (int u = 0; u < clique_size; ++u)
        for (int v = clique_size; v < clique_size + indep_size; ++v)
            if (rng.bernoulli(cross_density)) g.add_edge(u, v);
    return g;
}

// Random chordal graph by simplicial insertion: vertex v picks an earlier vertex w and
// joins a random subset (always containing w) of the clique w was attached to plus w.
// Reversed insertion order is a perfect elimination ordering.
inline Graph gen_chordal(int n, double density, std::uint64_t seed) {
    if (n < 0) throw Error("vertex count must be nonnegative");
    CounterRng rng(seed);
    Graph g(n);
    std::vector<std::vector<Vertex>> attach(static_cast<std::size_t>(n));
    for (Vertex v = 1; v < n; ++v) {
        Vertex w = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v)));
        std::vector<Vertex> chosen{w};
        for (Vertex k : attach[w])
            if (rng.bernoulli(density)) chosen.push_back(k);
        for (Vertex k : chosen) g.add_edge(v, k);
        std::sort(chosen.begin(), chosen.end());
        attach[v] = std::move(chosen);
    }
    return g;
}

// Complement of a random chordal graph; always 2K2-free.
inline Graph gen_cochordal(int n, std::uint64_t seed, double density = 0.5) {
    if (n < 1) throw Error("cochordal generator needs n >= 1");
    return gen_chordal(n, density, seed).complement();
}

// Complete multipartite graph with a random composition of n into at most `max_parts` parts.
inline Graph gen_multipartite(int n, int max_parts, std::uint64_t seed) {
    if (n < 1 || max_parts < 1) throw Error("multipartite generator needs n >= 1 and parts >= 1");
    CounterRng rng(seed);
    std::vector<int> parts(static_cast<std::size_t>(max_parts), 0);
    for (int v = 0; v < n; ++v) ++parts[rng.below(static_cast<std::uint64_t>(max_parts))];
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    return graphs::complete_multipartite(parts);
}

// G(n, p) samples until one is 2K2-free.
inline Graph gen_random_2k2_free(int n, double p, std::uint64_t seed, int max_attempts = 100000) {
    CounterRng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) g.add_edge(u, v);
        if (is_2k2_free(g)) return g;
    }
    throw Error("no 2K2-free sample after " + std::to_string(max_attempts) + " attempts");
}

struct GenSpec {
    std::string family = "split";  // split | cochordal | complete-multipartite | random-2k2-rejection
    int n = 0;                     // cochordal, multipartite, rejection
    int clique_size = 0;           // split
    int indep_size = 0;            // split
    int parts = 3;                 // multipartite
    double density = 0.5;          // split cross density, chordal attach density, rejection edge probability
    std::uint64_t seed = 0;

    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

inline nlohmann::json to_json(const GenSpec& s) {
    return {{"family", s.family}, {"n", s.n}, {"clique_size", s.clique_size}, {"indep_size", s.indep_size},
            {"parts", s.parts}, {"density", s.density}, {"seed", s.seed}};
}

inline GenSpec genspec_from_json(const nlohmann::json& j) {
    GenSpec s;
    s.family = j.value("family", s.family);
    s.n = j.value("n", s.n);
    s.clique_size = j.value("clique_size", s.clique_size);
    s.indep_size = j.value("indep_size", s.indep_size);
    s.parts = j.value("parts", s.parts);
    s.density = j.value("density", s.density);
    s.seed = j.value("seed", s.seed);
    return s;
}

inline Graph generate(const GenSpec& s) {
    if (s.family == "split") return gen_split(s.clique_size, s.indep_size, s.density, s.seed);
    if (s.family == "cochordal") return gen_cochordal(s.n, s.seed, s.density);
    if (s.family == "complete-multipartite") return gen_multipartite(s.n, s.parts, s.seed);
    if (s.family == "random-2k2-rejection") return gen_random_2k2_free(s.n, s.density, s.seed);
    throw Error("unknown generator family '" + s.family + "'");
}

namespace detail {

// Adjacency bits over pairs (i, j), i < j, first pair most significant.
inline std::uint64_t pair_code(const Graph& g, const std::vector<Vertex>& order) {
    std::uint64_t code = 0;
    const auto n = order.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) code = (code << 1) | (g.adjacent(order[i], order[j]) ? 1u : 0u);
    return code;
}

inline Graph from_pair_code(int n, std::uint64_t code) {
    Graph g(n);
    int bit = n * (n - 1) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (code >> --bit & 1) g.add_edge(i, j);
    return g;
}

}  // namespace detail

// Maximum pair code over relabelings that list vertices by nonincreasing degree. Degree
// is an invariant, so only permutations inside equal-degree classes are tried.
inline std::uint64_t canonical_code(const Graph& g) {
    const int n = g.order();
    if (n > 11) throw TooLarge("canonical form needs n <= 11");
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && g.degree(order[j]) == g.degree(order[i])) ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    std::uint64_t best = 0;
    bool first = true;
    // odometer over per-class permutations
    auto walk = [&](auto&& self, std::size_t k) -> void {
        if (k == classes.size()) {
            auto c = detail::pair_code(g, order);
            if (first || c > best) best = c;
            first = false;
            return;
        }
        auto [lo, hi] = classes[k];
        std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));
        do {
            self(self, k + 1);
        } while (std::next_permutation(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi)));
    };
    walk(walk, 0);
    return best;
}

// Every 2K2-free graph on n vertices up to isomorphism, once each, ordered by canonical
// code. Built by vertex extension: the class is hereditary, so deleting the last vertex of
// any member leaves a member on n - 1 vertices.
inline std::vector<Graph> enumerate_2k2_free(int n) {
    if (n > 7) throw TooLarge("enumeration supports n <= 7");
    if (n < 0) throw Error("vertex count must be nonnegative");
    std::vector<Graph> level{Graph(0)};
    for (int k = 1; k <= n; ++k) {
        std::map<std::uint64_t, bool> seen;
        for (const auto& h : level)
            for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
                Graph g(k);
                for (auto [u, v] : h.edges()) g.add_edge(u, v);
                for (int u = 0; u < k - 1; ++u)
                    if (mask >> u & 1) g.add_edge(u, k - 1);
                if (!is_2k2_free(g)) continue;
                seen.emplace(canonical_code(g), true);
            }
        level.clear();
        for (const auto& [code, unused] : seen) level.push_back(detail::from_pair_code(k, code));
    }
    return level;
}

}  // namespace toughham

#endif
