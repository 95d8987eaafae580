#ifndef TOUGHHAM_RECOGNIZERS_HPP
#define TOUGHHAM_RECOGNIZERS_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace toughham {

inline constexpr int kDefaultToughnessBound = 24;

// Two vertex-disjoint edges with no edge between them.
struct InducedTwoK2 {
    Edge first;
    Edge second;
    friend bool operator==(const InducedTwoK2&, const InducedTwoK2&) = default;
};

// Lexicographically smallest (first, second) with first < second.
inline std::optional<InducedTwoK2> find_induced_2k2(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.order());
    for (auto [u, v] : g.edges()) {
        VertexSet rest = g.neighbors(u) | g.neighbors(v);
        rest.flip();
        if (rest.none()) continue;
        for (auto x = rest.find_next(static_cast<std::size_t>(u)); x != VertexSet::npos; x = rest.find_next(x)) {
            VertexSet partners = g.neighbors(static_cast<Vertex>(x)) & rest;
            auto y = partners.find_next(x);
            if (y != VertexSet::npos && y < n) return InducedTwoK2{{u, v}, {static_cast<Vertex>(x), static_cast<Vertex>(y)}};
        }
    }
    return std::nullopt;
}

inline bool is_2k2_free(const Graph& g) { return !find_induced_2k2(g).has_value(); }

inline bool is_independent(const Graph& g, const VertexSet& s) {
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
        if (g.neighbors(static_cast<Vertex>(v)).intersects(s)) return false;
    return true;
}

struct ToughnessResult {
    std::optional<Rational> value;  // nullopt means infinite
    std::optional<VertexSet> witness;
    int components = 0;

    bool infinite() const { return !value.has_value(); }
};

struct ToughnessCheck {
    bool tough = true;
    std::optional<VertexSet> violating;
};

namespace detail {

using Mask = std::uint32_t;

struct MaskGraph {
    int n = 0;
    std::vector<Mask> adj;

    explicit MaskGraph(const Graph& g) : n(g.order()), adj(static_cast<std::size_t>(g.order()), 0) {
        for (auto [u, v] : g.edges()) {
            adj[u] |= Mask{1} << v;
            adj[v] |= Mask{1} << u;
        }
    }

    Mask full() const { return n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }

    // Components of the graph induced on `keep`.
    int components(Mask keep) const {
        int count = 0;
        while (keep) {
            ++count;
            Mask comp = keep & (~keep + 1);
            Mask frontier = comp;
            while (frontier) {
                Mask next = 0;
                for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
                next &= keep & ~comp;
                comp |= next;
                frontier = next;
            }
            keep &= ~comp;
        }
        return count;
    }
};

inline VertexSet to_set(Mask m, int n) {
    VertexSet s(static_cast<std::size_t>(n));
    for (; m; m &= m - 1) s.set(static_cast<std::size_t>(std::countr_zero(m)));
    return s;
}

// Same cardinality: the set holding the smallest element of the symmetric difference is lexicographically first.
inline bool lex_less(Mask a, Mask b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    Mask diff = a ^ b;
    return diff && (a & (diff & (~diff + 1)));
}

// Every n-bit mask of cardinality k in increasing numeric order (Gosper); f returns false to stop.
template <typename F>
void for_each_subset_of_size(int n, int k, F&& f) {
    if (k == 0) {
        f(Mask{0});
        return;
    }
    if (k > n) return;
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (m < end) {
        if (!f(static_cast<Mask>(m))) return;
        std::uint64_t c = m & (~m + 1);
        std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

inline void check_bound(const Graph& g, int bound) {
    if (g.order() > bound || g.order() > 32)
        throw TooLarge("exhaustive toughness needs n <= " + std::to_string(std::min(bound, 32)) + ", got " + std::to_string(g.order()));
}

}  // namespace detail

// min |S| / c(G-S) over S with c(G-S) >= 2, exhaustive. Ties: smaller |S|, then lexicographic.
inline ToughnessResult toughness_exact(const Graph& g, int bound = kDefaultToughnessBound) {
    detail::check_bound(g, bound);
    if (g.is_complete()) return {};
    detail::MaskGraph mg(g);
    const int n = g.order();
    long long best_s = 0, best_c = 0;
    detail::Mask best_mask = 0;
    bool found = false;
    for (int k = 0; k < n; ++k) {
        // any ratio at this size is at least k / (n - k); stop once that cannot improve
        if (found && k * best_c > best_s * (n - k)) break;
        detail::for_each_subset_of_size(n, k, [&](detail::Mask s) {
            int c = mg.components(mg.full() & ~s);
            if (c < 2) return true;
            long long lhs = static_cast<long long>(k) * best_c, rhs = best_s * c;
            if (!found || lhs < rhs || (lhs == rhs && detail::lex_less(s, best_mask))) {
                found = true;
                best_s = k;
                best_c = c;
                best_mask = s;
            }
            return true;
        });
    }
    ToughnessResult out;
    out.value = ratio(best_s, best_c);
    out.witness = detail::to_set(best_mask, n);
    out.components = static_cast<int>(best_c);
    return out;
}

enum class ViolationChoice { LargestDeficit, First };

// t-toughness check. On failure returns the S maximizing t*c(G-S) - |S| (ties: smaller |S|,
// then lexicographic), or the first violation met in enumeration order.
inline ToughnessCheck is_t_tough(const Graph& g, const Rational& t, ViolationChoice choice = ViolationChoice::LargestDeficit,
                                 int bound = kDefaultToughnessBound) {
    if (t < 0) throw Error("toughness threshold must be nonnegative");
    detail::check_bound(g, bound);
    if (g.is_complete()) return {};
    const BigInt pn = boost::multiprecision::numerator(t);
    const BigInt qn = boost::multiprecision::denominator(t);
    if (pn > (1ll << 31) || qn > (1ll << 31)) throw Error("toughness threshold " + to_string(t) + " has too large a numerator or denominator");
    const long long p = pn.convert_to<long long>(), q = qn.convert_to<long long>();
    detail::MaskGraph mg(g);
    const int n = g.order();

    ToughnessCheck out;
    long long best_deficit = 0;
    detail::Mask best_mask = 0;
    for (int k = 0; k < n; ++k) {
        // violation needs k*q < p*c with c <= n - k
        if (k * q >= p * (n - k)) break;
        bool stop = false;
        detail::for_each_subset_of_size(n, k, [&](detail::Mask s) {
            int c = mg.components(mg.full() & ~s);
            if (c < 2) return true;
            long long deficit = p * c - k * q;
            if (deficit <= 0) return true;
            if (out.tough || deficit > best_deficit || (deficit == best_deficit && detail::lex_less(s, best_mask))) {
                out.tough = false;
                best_deficit = deficit;
                best_mask = s;
            }
            if (choice == ViolationChoice::First) {
                stop = true;
                return false;
            }
            return true;
        });
        if (stop) break;
    }
    if (!out.tough) out.violating = detail::to_set(best_mask, n);
    return out;
}

}  // namespace toughham

#endif
