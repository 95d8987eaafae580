#ifndef TOUGHHAM_SOLVER_HPP
#define TOUGHHAM_SOLVER_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "classifier.hpp"
#include "cycle.hpp"
#include "graph.hpp"
#include "merge_engine.hpp"
#include "recognizers.hpp"
#include "two_factor.hpp"
#include "witness.hpp"

namespace toughham {

struct Not2K2Free : Error {
    explicit Not2K2Free(InducedTwoK2 w)
        : Error("graph is not 2K2-free: induced edges (" + std::to_string(w.first.first) + "," + std::to_string(w.first.second) + "),(" +
                std::to_string(w.second.first) + "," + std::to_string(w.second.second) + ")"),
          witness(w) {}
    InducedTwoK2 witness;
};

struct TooSmall : Error {
    explicit TooSmall(int n) : Error("graph has " + std::to_string(n) + " vertices, at least 3 needed") {}
};

enum class Variant { HamiltonianCycle, ToughnessWitness, NoTwoFactor, Anomaly };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::HamiltonianCycle: return "hamiltonian_cycle";
        case Variant::ToughnessWitness: return "toughness_witness";
        case Variant::NoTwoFactor: return "no_two_factor";
        case Variant::Anomaly: return "anomaly";
    }
    return "";
}

inline Variant variant_from_name(const std::string& s) {
    for (Variant v : {Variant::HamiltonianCycle, Variant::ToughnessWitness, Variant::NoTwoFactor, Variant::Anomaly})
        if (s == variant_name(v)) return v;
    throw Error("unknown certificate variant '" + s + "'");
}

struct Certificate {
    Variant variant = Variant::Anomaly;
    std::vector<Vertex> cycle;                // HamiltonianCycle
    std::optional<ToughnessWitness> witness;  // ToughnessWitness
    std::string reason;                       // NoTwoFactor
    nlohmann::json state;                     // Anomaly dump
    std::vector<MergeTrace> trace;
    std::string input_hash;
};

// Everything the stall left behind, for offline inspection.
inline nlohmann::json dump_state(const Graph& g, const TwoFactor& f, const std::vector<std::string>& unavailable, const Rational& t) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& c : f.cycles()) cycles.push_back(c.order());
    nlohmann::json out{{"graph", to_text(g)}, {"threshold", rational_json(t)}, {"factor", cycles}, {"failed_constructions", unavailable}};
    if (f.cycle_count() >= 2) {
        TypingContext ctx = classify(g, f);
        out["a_vertices"] = members(ctx.a_vertices);
        out["alternating"] = std::vector<int>(ctx.alternating.begin(), ctx.alternating.end());
        out["has_b_edge"] = std::vector<int>(ctx.has_b_edge.begin(), ctx.has_b_edge.end());
        if (auto c = ctx.designated_cycle()) {
            ClosureSystem sys = closure_system(g, ctx, *c);
            out["designated_cycle"] = *c;
            out["v_bad"] = members(sys.v_bad);
            out["u_infinity"] = members(sys.u_infinity);
        } else {
            out["designated_cycle"] = nullptr;
        }
    }
    return out;
}

// 2K2 check, 2-factor, merge to a fixpoint, then a verified cutset or an anomaly dump.
inline Certificate solve(const Graph& g, const Rational& t = Rational(3)) {
    if (g.order() < 3) throw TooSmall(g.order());
    if (auto w = find_induced_2k2(g)) throw Not2K2Free(*w);
    Certificate cert;
    cert.input_hash = graph_hash(g);
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) < 2) {
            cert.variant = Variant::NoTwoFactor;
            cert.reason = "vertex " + std::to_string(v) + " has degree below 2";
            return cert;
        }
    auto f = find_two_factor(g);
    if (!f) {
        cert.variant = Variant::NoTwoFactor;
        cert.reason = "degree-constrained gadget has no perfect matching";
        return cert;
    }
    ReduceResult r;
    try {
        r = reduce(g, std::move(*f));
    } catch (const InducedTwoK2Found& e) {
        throw Not2K2Free(e.witness);
    }
    cert.trace = std::move(r.trace);
    if (r.factor.cycle_count() == 1) {
        cert.variant = Variant::HamiltonianCycle;
        cert.cycle = r.factor.cycle(0).order();
        return cert;
    }
    TypingContext ctx = classify(g, r.factor);
    if (auto w = find_witness(g, ctx, t)) {
        cert.variant = Variant::ToughnessWitness;
        cert.witness = std::move(w);
        return cert;
    }
    cert.variant = Variant::Anomaly;
    cert.state = dump_state(g, r.factor, r.unavailable, t);
    return cert;
}

inline nlohmann::json to_json(const Certificate& c) {
    nlohmann::json data;
    switch (c.variant) {
        case Variant::HamiltonianCycle: data = {{"cycle", c.cycle}}; break;
        case Variant::ToughnessWitness: data = to_json(*c.witness); break;
        case Variant::NoTwoFactor: data = {{"reason", c.reason}}; break;
        case Variant::Anomaly: data = c.state; break;
    }
    return {{"variant", variant_name(c.variant)}, {"data", data}, {"trace", to_json(c.trace)}, {"input_hash", c.input_hash}};
}

inline MergeTrace trace_from_json(const nlohmann::json& j) {
    MergeTrace t;
    t.rule = j.at("claim").get<std::string>();
    t.case_label = j.at("case").get<std::string>();
    t.cycles_before = j.at("cycles_before").get<std::size_t>();
    t.cycles_after = j.at("cycles_after").get<std::size_t>();
    for (const auto& [k, v] : j.at("instantiation").items()) t.instantiation.emplace_back(k, v.get<Vertex>());
    return t;
}

inline Certificate certificate_from_json(const nlohmann::json& j, int n) {
    Certificate c;
    c.variant = variant_from_name(j.at("variant").get<std::string>());
    c.input_hash = j.at("input_hash").get<std::string>();
    const auto& data = j.at("data");
    switch (c.variant) {
        case Variant::HamiltonianCycle: c.cycle = data.at("cycle").get<std::vector<Vertex>>(); break;
        case Variant::ToughnessWitness: c.witness = witness_from_json(data, n); break;
        case Variant::NoTwoFactor: c.reason = data.at("reason").get<std::string>(); break;
        case Variant::Anomaly: c.state = data; break;
    }
    for (const auto& t : j.at("trace")) c.trace.push_back(trace_from_json(t));
    return c;
}

// Re-checks the certificate against g without trusting any of its derived fields.
inline bool verify_certificate(const Graph& g, const Certificate& c, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (c.input_hash != graph_hash(g)) return fail("input hash mismatch: certificate is for a different graph");
    switch (c.variant) {
        case Variant::HamiltonianCycle:
            if (!is_hamiltonian_cycle(g, c.cycle)) return fail("cycle is not a Hamiltonian cycle of the graph");
            return true;
        case Variant::ToughnessWitness: {
            const auto& w = *c.witness;
            if (w.threshold > 3) return fail("witness threshold above 3");
            if (!verify_witness(g, w.s, w.threshold)) return fail("cutset does not violate the threshold");
            const int comps = component_count(g, w.s);
            if (comps != w.components || w.ratio != Rational(static_cast<long long>(w.s.count()), comps))
                return fail("declared components or ratio disagree with the graph");
            return true;
        }
        case Variant::NoTwoFactor:
            if (g.order() >= 3 && find_two_factor(g)) return fail("graph has a 2-factor");
            return true;
        case Variant::Anomaly:
            return true;
    }
    return fail("unknown variant");
}

// Graphviz rendering; cycle edges drawn bold.
inline std::string to_dot(const Graph& g, const std::vector<Vertex>& cycle) {
    std::vector<std::vector<char>> on(static_cast<std::size_t>(g.order()), std::vector<char>(static_cast<std::size_t>(g.order()), 0));
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        Vertex a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        on[a][b] = on[b][a] = 1;
    }
    std::ostringstream os;
    os << "graph G {\n";
    for (Vertex v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) {
        os << "  " << u << " -- " << v;
        if (on[u][v]) os << " [color=red, penwidth=2.5]";
        else os << " [color=gray]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace toughham

#endif
