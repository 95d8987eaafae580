#ifndef TOUGHHAM_MERGE_ENGINE_HPP
#define TOUGHHAM_MERGE_ENGINE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "classifier.hpp"
#include "cycle.hpp"
#include "graph.hpp"
#include "recognizers.hpp"

namespace toughham {

// Rule identifiers, in priority order.
namespace rules {
inline constexpr const char* kNonadjacency = "nonadjacency";
inline constexpr const char* kATypeEdge = "a-type-edge";
inline constexpr const char* kAPlusIndependent = "a-plus-independent";
inline constexpr const char* kBEdgeSplitNeighbors = "b-edge-split-neighbors";
inline constexpr const char* kBadSuccessor = "bad-successor";
inline constexpr const char* kRotationAbsorb = "rotation-absorb";
inline constexpr const char* kCoAbsorbExtension = "co-absorb-extension";
}  // namespace rules

struct ConstructionUnavailable : Error {
    ConstructionUnavailable(std::string rule_id, const std::string& detail)
        : Error(rule_id + ": " + detail), rule(std::move(rule_id)) {}
    std::string rule;
};

struct InducedTwoK2Found : Error {
    explicit InducedTwoK2Found(InducedTwoK2 w)
        : Error("induced 2K2 on edges " + std::to_string(w.first.first) + "-" + std::to_string(w.first.second) + " and " +
                std::to_string(w.second.first) + "-" + std::to_string(w.second.second)),
          witness(w) {}
    InducedTwoK2 witness;
};

struct MergeTrace {
    std::string rule;
    std::string case_label;
    std::size_t cycles_before = 0;
    std::size_t cycles_after = 0;
    std::vector<std::pair<std::string, Vertex>> instantiation;

    friend bool operator==(const MergeTrace&, const MergeTrace&) = default;
};

struct MergeResult {
    std::vector<int> replaced;  // cycle ids of the input factor, ascending
    std::vector<OrientedCycle> replacement;
    MergeTrace trace;
};

// Either the rule's property holds on the factor, or a merge is returned.
struct CheckOrMerge {
    std::optional<MergeResult> merge;

    bool holds() const { return !merge.has_value(); }
};

inline nlohmann::json to_json(const MergeTrace& t) {
    nlohmann::json inst = nlohmann::json::object();
    for (const auto& [name, v] : t.instantiation) inst[name] = v;
    return {{"claim", t.rule}, {"case", t.case_label}, {"cycles_before", t.cycles_before}, {"cycles_after", t.cycles_after}, {"instantiation", inst}};
}

inline nlohmann::json to_json(const std::vector<MergeTrace>& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : trace) out.push_back(to_json(t));
    return out;
}

// Independent re-check of a merge against the factor it rewrites.
inline bool merge_result_valid(const Graph& g, const TwoFactor& f, const MergeResult& m) {
    if (m.replaced.empty() || m.replacement.size() >= m.replaced.size()) return false;
    const auto n = static_cast<std::size_t>(g.order());
    VertexSet before(n), after(n);
    for (int id : m.replaced) {
        if (id < 0 || id >= static_cast<int>(f.cycle_count())) return false;
        before |= f.cycle(id).vertex_set(n);
    }
    std::size_t total = 0;
    std::vector<std::vector<Vertex>> cycles;
    for (const auto& c : m.replacement) {
        total += c.length();
        after |= c.vertex_set(n);
        cycles.push_back(c.order());
    }
    if (after != before || total != after.count()) return false;
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.size() < 3 || !g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
    return true;
}

namespace merge_detail {

// A factor cycle seen in one of its two orientations.
struct View {
    int id;
    OrientedCycle cyc;

    Vertex s(Vertex v, std::size_t k = 1) const { return cyc.succ(v, k); }
    Vertex p(Vertex v, std::size_t k = 1) const { return cyc.pred(v, k); }
};

inline View view(const TwoFactor& f, int id, bool flip) { return {id, flip ? f.cycle(id).reversed() : f.cycle(id)}; }

// Of a consecutive pair, the one whose successor in this view is the other.
inline Vertex low(const View& q, Vertex a, Vertex b) { return q.s(a) == b ? a : b; }

struct Piece {
    enum class Kind { Point, Arc, PathArc } kind;
    const View* v = nullptr;
    const OrientedPath* path = nullptr;
    Vertex from = -1, to = -1;
    Direction dir = Direction::Forward;
};

inline Piece pt(Vertex x) { return {Piece::Kind::Point, nullptr, nullptr, x, x, Direction::Forward}; }
inline Piece fwd(const View& c, Vertex a, Vertex b) { return {Piece::Kind::Arc, &c, nullptr, a, b, Direction::Forward}; }
inline Piece bwd(const View& c, Vertex a, Vertex b) { return {Piece::Kind::Arc, &c, nullptr, a, b, Direction::Backward}; }
inline Piece along(const OrientedPath& p, Vertex a, Vertex b) { return {Piece::Kind::PathArc, nullptr, &p, a, b, Direction::Forward}; }

struct Candidate {
    std::string label;
    std::vector<std::vector<Piece>> cycles;
};

struct Realized {
    std::vector<int> replaced;
    std::vector<OrientedCycle> cycles;
    std::string variant;
};

// Assembles a candidate. Cycle arcs are tried as written first, then with arc directions
// flipped (the flip pattern is recorded); the first variant whose cycles validate, are
// disjoint, and exactly cover the touched factor cycles with fewer cycles wins. With
// `required` set, the single output cycle must cover exactly that set instead.
inline std::optional<Realized> realize(const Graph& g, const TwoFactor& f, const Candidate& cand,
                                       const std::optional<VertexSet>& required = std::nullopt) {
    const auto n = static_cast<std::size_t>(g.order());
    for (const auto& cyc : cand.cycles)
        for (const auto& p : cyc) {
            if (p.from < 0 || p.to < 0 || p.from >= g.order() || p.to >= g.order()) return std::nullopt;
            if (p.kind == Piece::Kind::Arc && (!p.v->cyc.contains(p.from) || !p.v->cyc.contains(p.to))) return std::nullopt;
            if (p.kind == Piece::Kind::PathArc && (!p.path->contains(p.from) || !p.path->contains(p.to))) return std::nullopt;
        }
    std::size_t arcs = 0;
    for (const auto& cyc : cand.cycles)
        for (const auto& p : cyc) arcs += p.kind == Piece::Kind::Arc;

    for (std::size_t mask = 0; mask < (std::size_t{1} << arcs); ++mask) {
        std::size_t bit = 0;
        std::vector<OrientedCycle> built;
        VertexSet covered(n);
        std::size_t total = 0;
        bool ok = true;
        for (const auto& cyc : cand.cycles) {
            std::vector<Segment> segs;
            for (const auto& p : cyc) {
                switch (p.kind) {
                    case Piece::Kind::Point:
                        segs.push_back(Segment::vertex(p.from));
                        break;
                    case Piece::Kind::PathArc:
                        segs.push_back(Segment::path_arc(*p.path, -1, p.from, p.to));
                        break;
                    case Piece::Kind::Arc: {
                        Direction d = p.dir;
                        if (mask >> bit++ & 1) d = d == Direction::Forward ? Direction::Backward : Direction::Forward;
                        segs.push_back(Segment::cycle_arc(p.v->cyc, p.v->id, p.from, p.to, d));
                        break;
                    }
                }
            }
            auto c = try_assemble(g, segs);
            if (!c) {
                ok = false;
                break;
            }
            total += c->length();
            covered |= c->vertex_set(n);
            built.push_back(std::move(*c));
        }
        if (!ok || total != covered.count()) continue;

        std::vector<int> touched;
        VertexSet before(n);
        for (Vertex v : members(covered)) {
            int id = f.cycle_of(v);
            if (std::find(touched.begin(), touched.end(), id) == touched.end()) {
                touched.push_back(id);
                before |= f.cycle(id).vertex_set(n);
            }
        }
        std::sort(touched.begin(), touched.end());
        if (required) {
            if (covered != *required || built.size() != 1) continue;
        } else if (covered != before || built.size() >= touched.size()) {
            continue;
        }
        std::string variant;
        for (std::size_t b = 0; b < arcs; ++b) variant += (mask >> b & 1) ? 'r' : '=';
        return Realized{std::move(touched), std::move(built), std::move(variant)};
    }
    return std::nullopt;
}

inline MergeResult finish(const TwoFactor& f, std::string rule, const Candidate& cand, Realized r,
                          std::vector<std::pair<std::string, Vertex>> inst) {
    MergeResult m;
    m.replaced = std::move(r.replaced);
    m.replacement = std::move(r.cycles);
    m.trace.rule = std::move(rule);
    m.trace.case_label = cand.label;
    if (r.variant.find('r') != std::string::npos) m.trace.case_label += " [arcs " + r.variant + "]";
    m.trace.cycles_before = f.cycle_count();
    m.trace.cycles_after = f.cycle_count() - m.replaced.size() + m.replacement.size();
    m.trace.instantiation = std::move(inst);
    return m;
}

inline std::optional<MergeResult> first_realized(const Graph& g, const TwoFactor& f, const char* rule,
                                                 const std::vector<Candidate>& cands,
                                                 const std::vector<std::pair<std::string, Vertex>>& inst) {
    for (const auto& c : cands)
        if (auto r = realize(g, f, c)) return finish(f, rule, c, std::move(*r), inst);
    return std::nullopt;
}

// Consecutive pair of a witness in factor orientation.
inline std::pair<Vertex, Vertex> pair_of(const TwoFactor& f, const AWitness& w) { return {w.u, f.cycle(w.cycle).succ(w.u)}; }

inline std::optional<InducedTwoK2> induced_pair(const Graph& g, Edge a, Edge b) {
    if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) return std::nullopt;
    if (!g.adjacent(a.first, a.second) || !g.adjacent(b.first, b.second)) return std::nullopt;
    for (Vertex p : {a.first, a.second})
        for (Vertex q : {b.first, b.second})
            if (g.adjacent(p, q)) return std::nullopt;
    auto norm = [](Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; };
    Edge x = norm(a), y = norm(b);
    if (y < x) std::swap(x, y);
    return InducedTwoK2{x, y};
}

}  // namespace merge_detail

// x ~ u across cycles forces x^± ≁ u^±; otherwise x u ⇐D u^+ x^+ ⇀C x joins C and D.
inline CheckOrMerge rule_nonadjacency(const Graph& g, const TwoFactor& f) {
    using namespace merge_detail;
    if (f.cycle_count() < 2) return {};
    static const char* labels[2][2] = {{"x+~u+", "x+~u-"}, {"x-~u+", "x-~u-"}};
    for (Vertex x = 0; x < g.order(); ++x)
        for (Vertex u : members(g.neighbors(x))) {
            if (f.cycle_of(u) == f.cycle_of(x)) continue;
            for (int fc = 0; fc < 2; ++fc)
                for (int fd = 0; fd < 2; ++fd) {
                    View C = view(f, f.cycle_of(x), fc), D = view(f, f.cycle_of(u), fd);
                    if (!g.adjacent(C.s(x), D.s(u))) continue;
                    Candidate cand{labels[fc][fd], {{pt(x), bwd(D, u, D.s(u)), fwd(C, C.s(x), x)}}};
                    if (auto r = realize(g, f, cand))
                        return {finish(f, rules::kNonadjacency, cand, std::move(*r), {{"x", x}, {"u", u}, {"x'", C.s(x)}, {"u'", D.s(u)}})};
                    throw ConstructionUnavailable(rules::kNonadjacency, "junction at x=" + std::to_string(x) + " u=" + std::to_string(u));
                }
        }
    return {};
}

// No cycle edge has both ends A-type.
inline CheckOrMerge rule_a_type_edge(const Graph& g, const TwoFactor& f, const TypingContext& ctx) {
    using namespace merge_detail;
    std::optional<std::string> stuck;
    for (Vertex x0 = 0; x0 < g.order(); ++x0) {
        Vertex y0 = f.succ(x0);
        if (!ctx.is_a(x0) || !ctx.is_a(y0)) continue;
        const int c = f.cycle_of(x0);
        for (int role = 0; role < 2; ++role) {
            // orient C so that y = x^+
            View Cv = view(f, c, role == 1);
            Vertex x = role == 0 ? x0 : y0, y = role == 0 ? y0 : x0;
            Vertex z = Cv.s(y);
            auto wx = a_witnesses(g, f, x), wy = a_witnesses(g, f, y);
            for (const auto& a : wx)
                for (const auto& b : wy)
                    for (int fd = 0; fd < 2; ++fd)
                        for (int fq = 0; fq < 2; ++fq) {
                            const bool same = a.cycle == b.cycle;
                            if (same && fq) continue;
                            View D = view(f, a.cycle, fd);
                            View Qown = view(f, b.cycle, fq);
                            const View& Q = same ? D : Qown;
                            auto [a1, a2] = pair_of(f, a);
                            auto [b1, b2] = pair_of(f, b);
                            Vertex u = low(D, a1, a2), up = D.s(u);
                            Vertex v = low(Q, b1, b2), vp = Q.s(v);
                            std::vector<Candidate> cands;
                            if (same) cands.push_back({"D=Q", {{pt(x), fwd(D, up, v), pt(y), fwd(D, vp, u), fwd(Cv, z, x)}}});
                            else cands.push_back({"D!=Q", {{pt(x), fwd(D, up, u), fwd(Cv, z, x)}, {pt(v), pt(y), fwd(Q, vp, v)}}});
                            if (auto m = first_realized(g, f, rules::kATypeEdge, cands, {{"x", x}, {"y", y}, {"z", z}, {"u", u}, {"v", v}}))
                                return {std::move(*m)};
                        }
        }
        if (!stuck) stuck = "A-type edge " + std::to_string(x0) + "-" + std::to_string(y0);
    }
    if (stuck) throw ConstructionUnavailable(rules::kATypeEdge, *stuck);
    return {};
}

// A^+ is independent.
inline CheckOrMerge rule_a_plus_independent(const Graph& g, const TwoFactor& f, const TypingContext& ctx) {
    using namespace merge_detail;
    std::optional<std::string> stuck;
    const auto avs = members(ctx.a_vertices);
    for (Vertex x : avs)
        for (Vertex y : avs) {
            if (x == y) continue;
            Vertex xp = f.succ(x), yp = f.succ(y);
            // consecutive A-type vertices belong to the A-type edge rule
            if (xp == y || yp == x || !g.adjacent(xp, yp)) continue;
            const int c = f.cycle_of(x), d = f.cycle_of(y);
            const View C = view(f, c, false), Dfixed = view(f, d, false);
            const View& D = c == d ? C : Dfixed;
            bool mirrored_only = true;
            for (const auto& wq : a_witnesses(g, f, x))
                for (const auto& wr : a_witnesses(g, f, y)) {
                    const int q = wq.cycle, r = wr.cycle;
                    const bool sameQR = q == r;
                    const bool qfix = q == c || q == d, rfix = r == c || r == d;
                    if (c != d && !sameQR && r == c && q != d) continue;  // mirror image, reached with x and y swapped
                    mirrored_only = false;
                    for (int fq = 0; fq < (qfix ? 1 : 2); ++fq)
                        for (int fr = 0; fr < (rfix || sameQR ? 1 : 2); ++fr) {
                            View Qown = view(f, q, fq), Rown = view(f, r, fr);
                            const View& Q = q == c ? C : (q == d ? D : Qown);
                            const View& R = sameQR ? Q : (r == c ? C : (r == d ? D : Rown));
                            auto [q1, q2] = pair_of(f, wq);
                            auto [r1, r2] = pair_of(f, wr);
                            Vertex u = low(Q, q1, q2), up = Q.s(u), upp = Q.s(u, 2);
                            Vertex v = low(R, r1, r2), vp = R.s(v);
                            std::vector<Candidate> cands;
                            if (c == d && sameQR) {
                                cands = {
                                    {"C=D Q=R x+~v y+~u+", {{pt(x), bwd(Q, u, vp), bwd(C, y, xp), bwd(Q, v, up), fwd(C, yp, x)}}},
                                    {"C=D Q=R x+~v y+~u", {{pt(x), fwd(Q, up, v), fwd(C, xp, y), fwd(Q, vp, u), fwd(C, yp, x)}}},
                                    {"C=D Q=R x+~v+ y+~u+", {{pt(x), bwd(Q, u, vp), fwd(C, xp, y), bwd(Q, v, up), fwd(C, yp, x)}}},
                                    {"C=D Q=R x+~v+ y+~u", {{pt(x), fwd(Q, up, v), bwd(C, y, xp), fwd(Q, vp, u), fwd(C, yp, x)}}},
                                };
                            } else if (c == d) {
                                cands = {{"C=D Q!=R u~v", {{pt(x), fwd(Q, up, u), bwd(R, v, vp), bwd(C, y, xp), fwd(C, yp, x)}}}};
                            } else if (sameQR) {
                                cands = {
                                    {"C!=D Q=R u+v on Q", {{pt(x), bwd(Q, up, v), bwd(D, y, yp), fwd(C, xp, x)}}},
                                    {"C!=D Q=R u+~v off Q", {{pt(x), bwd(Q, u, vp), bwd(D, y, yp), fwd(C, xp, x)}, {fwd(Q, up, v)}}},
                                    {"C!=D Q=R u+~v+", {{pt(x), bwd(Q, u, vp), fwd(Q, up, v), bwd(D, y, yp), fwd(C, xp, x)}}},
                                    {"C!=D Q=R u~v", {{pt(x), fwd(Q, up, v), bwd(Q, u, vp), bwd(D, y, yp), fwd(C, xp, x)}}},
                                    {"C!=D Q=R u~v+", {{pt(x), fwd(Q, up, v), bwd(D, y, yp), fwd(C, xp, x)}, {bwd(Q, u, vp)}}},
                                };
                            } else if (q == d && r == c) {
                                cands = {
                                    {"Q=D R=C u+~v", {{pt(x), bwd(D, u, yp), fwd(C, xp, v), fwd(D, up, y), fwd(C, vp, x)}}},
                                    {"Q=D R=C u+~v+", {{pt(x), bwd(D, u, yp), fwd(C, xp, v), bwd(D, y, up), fwd(C, vp, x)}}},
                                    {"Q=D R=C u~v+", {{pt(x), fwd(D, up, y), bwd(C, v, xp), fwd(D, yp, u), fwd(C, vp, x)}}},
                                    {"Q=D R=C u~v u++~v", {{pt(x), bwd(D, up, yp), fwd(C, xp, v), bwd(D, upp, y), fwd(C, vp, x)}}},
                                    {"Q=D R=C u~v u++~v+", {{pt(x), bwd(D, up, yp), fwd(C, xp, v), bwd(D, y, upp), fwd(C, vp, x)}}},
                                };
                            } else if (q == d) {
                                cands = {
                                    {"Q=D R new u~v", {{pt(x), fwd(D, up, y), fwd(R, vp, v), bwd(D, u, yp), fwd(C, xp, x)}}},
                                    {"Q=D R new u~v+", {{pt(x), fwd(D, up, y), bwd(R, v, vp), bwd(D, u, yp), fwd(C, xp, x)}}},
                                    {"Q=D R new u+~v", {{pt(x), bwd(D, u, yp), fwd(C, xp, x)}, {fwd(D, up, y), fwd(R, vp, v)}}},
                                    {"Q=D R new u+~v+", {{pt(x), bwd(D, u, yp), fwd(C, xp, x)}, {fwd(D, up, y), bwd(R, v, vp)}}},
                                };
                            } else {
                                cands = {{"Q,R new u~v", {{pt(x), fwd(Q, up, u), bwd(R, v, vp), bwd(D, y, yp), fwd(C, xp, x)}}}};
                            }
                            if (auto m = first_realized(g, f, rules::kAPlusIndependent, cands,
                                                        {{"x", x}, {"y", y}, {"u", u}, {"v", v}, {"x+", xp}, {"y+", yp}}))
                                return {std::move(*m)};
                        }
                }
            if (!stuck && !mirrored_only) stuck = "adjacent successors " + std::to_string(xp) + "-" + std::to_string(yp);
        }
    if (stuck) throw ConstructionUnavailable(rules::kAPlusIndependent, *stuck);
    return {};
}

// For a B-type edge xy on the designated cycle and an AB-alternating D, at most one of
// V_D(x), V_D(y) is nonempty.
inline CheckOrMerge rule_b_edge_split_neighbors(const Graph& g, const TwoFactor& f, const TypingContext& ctx, int c) {
    using namespace merge_detail;
    std::optional<std::string> stuck;
    for (Vertex x0 : f.cycle(c).order()) {
        if (ctx.edge_type(x0) != EdgeType::B) continue;
        Vertex y0 = f.succ(x0);
        for (int d = 0; d < static_cast<int>(f.cycle_count()); ++d) {
            if (d == c) continue;
            VertexSet vx = neighbor_profile(g, f, x0, d), vy = neighbor_profile(g, f, y0, d);
            if (vx.none() || vy.none() || !((vx | vy) & ctx.b_vertices).any()) continue;
            for (int role = 0; role < 2; ++role) {
                View Cv = view(f, c, role == 1);
                Vertex x = role == 0 ? x0 : y0, y = role == 0 ? y0 : x0;
                const VertexSet& nx = role == 0 ? vx : vy;
                const VertexSet& ny = role == 0 ? vy : vx;
                for (int fd = 0; fd < 2; ++fd) {
                    View D = view(f, d, fd);
                    for (Vertex u : members(nx)) {
                        Vertex up = D.s(u), upp = D.s(u, 2);
                        if (!ny.test(static_cast<std::size_t>(upp))) continue;
                        for (const auto& wq : a_witnesses(g, f, up)) {
                            for (int fq = 0; fq < (wq.cycle == c ? 1 : 2); ++fq) {
                                View Qown = view(f, wq.cycle, fq);
                                const View& Q = wq.cycle == c ? Cv : Qown;
                                auto [q1, q2] = pair_of(f, wq);
                                Vertex v = low(Q, q1, q2), vp = Q.s(v);
                                std::vector<Candidate> cands;
                                if (wq.cycle == c)
                                    cands.push_back({"Q=C", {{pt(x), bwd(D, u, upp), fwd(Cv, y, v), pt(up), fwd(Cv, vp, x)}}});
                                else
                                    cands.push_back({"Q!=C", {{pt(x), bwd(D, u, upp), fwd(Cv, y, x)}, {fwd(Q, v, vp), pt(up)}}});
                                if (auto m = first_realized(g, f, rules::kBEdgeSplitNeighbors, cands,
                                                            {{"x", x}, {"y", y}, {"u", u}, {"u++", upp}, {"v", v}}))
                                    return {std::move(*m)};
                            }
                        }
                    }
                }
            }
            if (!stuck) stuck = "B-edge " + std::to_string(x0) + "-" + std::to_string(y0) + " split over cycle " + std::to_string(d);
        }
    }
    if (stuck) throw ConstructionUnavailable(rules::kBEdgeSplitNeighbors, *stuck);
    return {};
}

// For x on the designated cycle bad w.r.t. some D, {x^+} ∪ A^+ is independent.
inline CheckOrMerge rule_bad_successor(const Graph& g, const TwoFactor& f, const TypingContext& ctx, int c) {
    using namespace merge_detail;
    std::optional<std::string> stuck;
    const VertexSet a_plus = ctx.a_plus();
    const View C = view(f, c, false);
    for (Vertex x : f.cycle(c).order()) {
        const Vertex xp = C.s(x);
        for (int d : bad_wrt(g, ctx, x)) {
            for (Vertex w : members(g.neighbors(xp) & a_plus)) {
                if (w == x) continue;
                const int q = f.cycle_of(w);
                const View Q = view(f, q, false);
                const Vertex wm = Q.p(w), wp = Q.s(w);
                if (q == d) {
                    if (!stuck) stuck = "x+ " + std::to_string(xp) + " sees the cycle x is bad for";
                    continue;
                }
                for (const auto& wr : a_witnesses(g, f, wm)) {
                    const int r = wr.cycle;
                    auto [r1, r2] = pair_of(f, wr);
                    if (r == d) {
                        // both cases with R = D contradict 2K2-freeness
                        if (auto k = induced_pair(g, {xp, w}, {r1, r2})) throw InducedTwoK2Found(*k);
                        continue;
                    }
                    const bool rflip = r != c;
                    for (Vertex z : members(ctx.a_on(d) & g.neighbors(w)))
                        for (int fd = 0; fd < 2; ++fd)
                            for (int fr = 0; fr < (rflip ? 2 : 1); ++fr) {
                                View D = view(f, d, fd), Rown = view(f, r, fr);
                                const View& R = r == c ? C : Rown;
                                Vertex v = low(R, r1, r2), vp = R.s(v);
                                Vertex zp = D.s(z), zm = D.p(z);
                                std::vector<Candidate> cands;
                                if (q != c && r == c) {
                                    cands = {
                                        {"Q!=C R=C w+~v", {{pt(xp), pt(w), fwd(D, z, zm), bwd(C, x, vp), bwd(Q, wm, wp), bwd(C, v, xp)}}},
                                        {"Q!=C R=C w+~v+", {{pt(xp), pt(w), fwd(D, z, zm), bwd(C, x, vp), fwd(Q, wp, wm), bwd(C, v, xp)}}},
                                    };
                                } else if (q != c) {
                                    cands = {{"Q!=C R new", {{pt(x), fwd(D, zp, z), fwd(Q, w, wm), fwd(R, vp, v), fwd(C, xp, x)}}}};
                                } else {
                                    cands = {{"Q=C R!=D", {{pt(x), fwd(D, zp, z), fwd(C, w, x)}, {pt(xp), bwd(R, v, vp), bwd(C, wm, xp)}}}};
                                }
                                if (auto m = first_realized(g, f, rules::kBadSuccessor, cands,
                                                            {{"x", x}, {"x+", xp}, {"w", w}, {"z", z}, {"v", v}}))
                                    return {std::move(*m)};
                            }
                }
                if (!stuck) stuck = "x+ " + std::to_string(xp) + " adjacent to A+ vertex " + std::to_string(w);
            }
        }
    }
    if (stuck) throw ConstructionUnavailable(rules::kBadSuccessor, *stuck);
    return {};
}

// A cycle through V(C) ∪ V(D) − {v}.
struct CoAbsorption {
    OrientedCycle cycle;
    int d = -1;
    Vertex base = -1;
    std::string label;
};

namespace merge_detail {

// v is base^+ in the view Cv.
inline std::optional<CoAbsorption> co_absorb_successor(const Graph& g, const TwoFactor& f, const View& Cv, Vertex base,
                                                       const Anchor& a, const char* side) {
    const auto n = static_cast<std::size_t>(g.order());
    const Vertex v = Cv.s(base), xpp = Cv.s(base, 2);
    View D = view(f, a.d, a.reversed);
    const Vertex u = a.u, up = D.s(u), upp = D.s(u, 2);
    VertexSet required = Cv.cyc.vertex_set(n) | D.cyc.vertex_set(n);
    required.reset(static_cast<std::size_t>(v));
    std::vector<Candidate> cands;
    cands.push_back({std::string(side) + " x''~u+", {{pt(base), bwd(D, u, up), fwd(Cv, xpp, base)}}});
    if (!a.bad) cands.push_back({std::string(side) + " x''~u A-type", {{pt(base), fwd(D, up, u), fwd(Cv, xpp, base)}}});
    else
        for (Vertex w : Cv.cyc.order()) {
            if (!g.adjacent(up, w) || !g.adjacent(up, Cv.s(w))) continue;
            cands.push_back({std::string(side) + " x''~u bad", {{pt(base), fwd(D, upp, u), fwd(Cv, xpp, w), pt(up), fwd(Cv, Cv.s(w), base)}}});
        }
    for (const auto& cand : cands)
        if (auto r = realize(g, f, cand, required)) return CoAbsorption{std::move(r->cycles.front()), a.d, base, cand.label};
    return std::nullopt;
}

}  // namespace merge_detail

// Co-absorbs v ∈ U^∞: the cycle over V(C) ∪ V(D) − {v}, with D a cycle for which v's closure
// base is bad or A-type. Restricted to one D when `only_d` is given.
inline CoAbsorption co_absorb(const Graph& g, const TypingContext& ctx, const ClosureSystem& sys, Vertex v,
                              std::optional<int> only_d = std::nullopt) {
    using namespace merge_detail;
    const auto& f = ctx.factor;
    const auto n = static_cast<std::size_t>(g.order());
    const View C = view(f, sys.cycle, false), Crev = view(f, sys.cycle, true);
    auto wanted = [&](const Anchor& a) { return !only_d || a.d == *only_d; };

    for (const auto& rc : sys.closures) {
        if (!rc.contains(v)) continue;
        const auto& m = rc.member(v);
        for (const auto& a : anchors(g, ctx, rc.base)) {
            if (!wanted(a)) continue;
            if (m.layer == 0) {
                if (auto r = co_absorb_successor(g, f, C, rc.base, a, "successor")) return *r;
                continue;
            }
            // y ⇀P x u ⇐D u^+ y, y the path successor of v
            View D = view(f, a.d, a.reversed);
            const Vertex y = m.path.next(v), u = a.u, up = D.s(u);
            VertexSet required = C.cyc.vertex_set(n) | D.cyc.vertex_set(n);
            required.reset(static_cast<std::size_t>(v));
            Candidate cand{"path member y~u+", {{along(m.path, y, rc.base), bwd(D, u, up)}}};
            if (auto r = realize(g, f, cand, required)) return CoAbsorption{std::move(r->cycles.front()), a.d, rc.base, cand.label};
        }
    }
    // successor or predecessor of a V_bad vertex
    for (Vertex y : members(sys.v_bad))
        for (const View* cv : {&C, &Crev}) {
            if (cv->s(y) != v) continue;
            for (const auto& a : anchors(g, ctx, y)) {
                if (!wanted(a)) continue;
                if (auto r = co_absorb_successor(g, f, *cv, y, a, cv == &C ? "successor" : "predecessor")) return *r;
            }
        }
    throw ConstructionUnavailable("co-absorb", "no construction for vertex " + std::to_string(v));
}

// Path-closure absorption: a member v with v ~ u^+, where x ~ u on D, closes
// v ⇀P x u ⇐D u^+ v over V(C) ∪ V(D).
inline CheckOrMerge rule_rotation_absorb(const Graph& g, const TypingContext& ctx, const ClosureSystem& sys) {
    using namespace merge_detail;
    const auto& f = ctx.factor;
    for (const auto& rc : sys.closures) {
        auto as = anchors(g, ctx, rc.base);
        for (const auto& m : rc.members)
            for (const auto& a : as) {
                View D = view(f, a.d, a.reversed);
                const Vertex u = a.u, up = D.s(u);
                if (!g.adjacent(m.vertex, up)) continue;
                Candidate cand{"member~u+", {{along(m.path, m.vertex, rc.base), bwd(D, u, up)}}};
                if (auto r = realize(g, f, cand))
                    return {finish(f, rules::kRotationAbsorb, cand, std::move(*r), {{"x", rc.base}, {"v", m.vertex}, {"u", u}, {"u+", up}})};
            }
    }
    return {};
}

// Longest-cycle exchanges around a co-absorbed vertex v: with R the cycle over
// V(C) ∪ V(D) − {v}, v must have no two consecutive neighbours on R or any other cycle,
// and the successors of its neighbours must be pairwise nonadjacent.
inline CheckOrMerge rule_co_absorb_extension(const Graph& g, const TypingContext& ctx, const ClosureSystem& sys) {
    using namespace merge_detail;
    const auto& f = ctx.factor;
    const auto n = static_cast<std::size_t>(g.order());
    for (Vertex v : members(sys.u_infinity)) {
        std::optional<CoAbsorption> ca;
        try {
            ca = co_absorb(g, ctx, sys, v);
        } catch (const ConstructionUnavailable&) {
            continue;
        }
        // R plus the untouched factor cycles, as one list of views
        std::vector<View> cycles{{-1, ca->cycle}};
        for (int id = 0; id < static_cast<int>(f.cycle_count()); ++id)
            if (id != sys.cycle && id != ca->d) cycles.push_back(view(f, id, false));
        auto replaced_with = [&](std::vector<OrientedCycle> made, std::vector<const View*> used, std::string label,
                                 std::vector<std::pair<std::string, Vertex>> inst) -> MergeResult {
            // every used factor cycle and, through R, both C and D are rewritten
            std::vector<int> drop;
            std::vector<OrientedCycle> add = std::move(made);
            bool r_used = false;
            for (const View* u : used) {
                if (u->id == -1) r_used = true;
                else drop.push_back(u->id);
            }
            drop.push_back(sys.cycle);
            drop.push_back(ca->d);
            if (!r_used) add.push_back(ca->cycle);
            std::sort(drop.begin(), drop.end());
            MergeResult m;
            m.replaced = drop;
            m.replacement = std::move(add);
            m.trace = {rules::kCoAbsorbExtension, std::move(label), f.cycle_count(), f.cycle_count() - drop.size() + m.replacement.size(),
                       std::move(inst)};
            return m;
        };
        auto check = [&](const std::vector<Segment>& segs, const std::vector<const View*>& used) -> std::optional<OrientedCycle> {
            VertexSet need(n);
            need.set(static_cast<std::size_t>(v));
            for (const View* u : used) need |= u->cyc.vertex_set(n);
            std::vector<Vertex> walk;
            if (detail::assembly_error(g, segs, need, walk)) return std::nullopt;
            return OrientedCycle(std::move(walk));
        };

        // v between two consecutive neighbours
        for (const auto& X : cycles)
            for (Vertex a : X.cyc.order()) {
                Vertex ap = X.s(a);
                if (!g.adjacent(v, a) || !g.adjacent(v, ap)) continue;
                auto segs = std::vector<Segment>{Segment::vertex(v), Segment::cycle_arc(X.cyc, X.id, ap, a, Direction::Forward)};
                if (auto cyc = check(segs, {&X})) {
                    auto m = replaced_with({*cyc}, {&X}, X.id == -1 ? "consecutive neighbours on R" : "consecutive neighbours on Q",
                                           {{"v", v}, {"a", a}, {"a+", ap}});
                    if (merge_result_valid(g, f, m)) return {std::move(m)};
                }
            }
        // adjacent successors of two neighbours
        std::vector<std::pair<Vertex, const View*>> nbrs;
        for (const auto& X : cycles)
            for (Vertex a : X.cyc.order())
                if (g.adjacent(v, a)) nbrs.emplace_back(a, &X);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = 0; j < nbrs.size(); ++j) {
                if (i == j) continue;
                auto [a, X] = nbrs[i];
                auto [b, Y] = nbrs[j];
                Vertex ap = X->s(a), bp = Y->s(b);
                if (ap == bp || !g.adjacent(ap, bp)) continue;
                std::vector<Segment> segs;
                std::vector<const View*> used;
                if (X == Y) {
                    if (i > j) continue;
                    // v a ⇐X b^+ a^+ ⇀X b v
                    segs = {Segment::vertex(v), Segment::cycle_arc(X->cyc, X->id, a, bp, Direction::Backward),
                            Segment::cycle_arc(X->cyc, X->id, ap, b, Direction::Forward)};
                    used = {X};
                } else {
                    // v a ⇐X a^+ b^+ ⇀Y b v
                    segs = {Segment::vertex(v), Segment::cycle_arc(X->cyc, X->id, a, ap, Direction::Backward),
                            Segment::cycle_arc(Y->cyc, Y->id, bp, b, Direction::Forward)};
                    used = {X, Y};
                }
                if (auto cyc = check(segs, used)) {
                    auto m = replaced_with({*cyc}, used, "adjacent neighbour successors", {{"v", v}, {"a", a}, {"b", b}});
                    if (merge_result_valid(g, f, m)) return {std::move(m)};
                }
            }
    }
    return {};
}

struct ReduceResult {
    TwoFactor factor;
    std::vector<MergeTrace> trace;
    std::vector<std::string> unavailable;  // every failed construction, prefixed by merge step
};

// Applies the rules in priority order, reclassifying after every merge, until one cycle
// remains or no rule fires. Every merge removes at least one cycle.
inline ReduceResult reduce(const Graph& g, TwoFactor f) {
    ReduceResult out{std::move(f), {}, {}};
    while (out.factor.cycle_count() > 1) {
        const TwoFactor& cur = out.factor;
        std::vector<std::string> failed;
        std::optional<MergeResult> merge;
        auto attempt = [&](auto&& rule) {
            if (merge) return;
            try {
                auto r = rule();
                if (!r.holds()) merge = std::move(r.merge);
            } catch (const ConstructionUnavailable& e) {
                failed.push_back(e.what());
            }
        };
        attempt([&] { return rule_nonadjacency(g, cur); });
        if (!merge) {
            TypingContext ctx = classify(g, cur);
            attempt([&] { return rule_a_type_edge(g, cur, ctx); });
            attempt([&] { return rule_a_plus_independent(g, cur, ctx); });
            if (auto c = ctx.designated_cycle(); c && !merge) {
                attempt([&] { return rule_b_edge_split_neighbors(g, cur, ctx, *c); });
                attempt([&] { return rule_bad_successor(g, cur, ctx, *c); });
                if (!merge) {
                    ClosureSystem sys = closure_system(g, ctx, *c);
                    attempt([&] { return rule_rotation_absorb(g, ctx, sys); });
                    attempt([&] { return rule_co_absorb_extension(g, ctx, sys); });
                }
            }
        }
        for (auto& msg : failed) out.unavailable.push_back("step " + std::to_string(out.trace.size()) + ": " + msg);
        if (!merge) break;
        if (!merge_result_valid(g, cur, *merge)) throw InvalidAssembly("rule " + merge->trace.rule + " produced an invalid merge");
        out.trace.push_back(merge->trace);
        out.factor = cur.replaced(g, merge->replaced, merge->replacement);
    }
    return out;
}

}  // namespace toughham

#endif
