// toughham: 2K2-free Hamiltonicity toolkit.
//
// Exit codes for `solve`: 0 Hamiltonian cycle, 10 toughness witness, 20 no 2-factor,
// 30 anomaly, 40 not 2K2-free. Usage and I/O errors exit 2.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "toughham/toughham.hpp"

namespace fs = std::filesystem;
using namespace toughham;

namespace {

constexpr int kExitHamiltonian = 0;
constexpr int kExitWitness = 10;
constexpr int kExitNoTwoFactor = 20;
constexpr int kExitAnomaly = 30;
constexpr int kExitNot2K2Free = 40;
constexpr int kExitUsage = 2;

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_graph(in);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Write to a temporary name and rename, so readers never see a half-written file.
void write_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
    }
    fs::rename(tmp, path);
}

int exit_code(Variant v) {
    switch (v) {
        case Variant::HamiltonianCycle: return kExitHamiltonian;
        case Variant::ToughnessWitness: return kExitWitness;
        case Variant::NoTwoFactor: return kExitNoTwoFactor;
        case Variant::Anomaly: return kExitAnomaly;
    }
    return kExitAnomaly;
}

std::string edge_pair(const InducedTwoK2& w) {
    return "(" + std::to_string(w.first.first) + "," + std::to_string(w.first.second) + "),(" + std::to_string(w.second.first) + "," +
           std::to_string(w.second.second) + ")";
}

nlohmann::json not_2k2_json(const Graph& g, const InducedTwoK2& w) {
    return {{"variant", "not_2k2_free"},
            {"data", {{"edges", {{w.first.first, w.first.second}, {w.second.first, w.second.second}}}}},
            {"trace", nlohmann::json::array()},
            {"input_hash", graph_hash(g)}};
}

int cmd_analyze(const std::string& path, int max_n, const std::string& format) {
    Graph g = load_graph(path);
    nlohmann::json j{{"n", g.order()}, {"m", g.size()}};
    std::ostringstream line;
    line << "n=" << g.order() << " m=" << g.size() << "; ";
    if (auto w = find_induced_2k2(g)) {
        line << "2K2-free: no, witness " << edge_pair(*w);
        j["2k2_free"] = false;
        j["witness"] = {{w->first.first, w->first.second}, {w->second.first, w->second.second}};
    } else {
        line << "2K2-free: yes";
        j["2k2_free"] = true;
    }
    line << "; toughness: ";
    try {
        auto t = toughness_exact(g, max_n);
        if (t.infinite()) {
            line << "inf";
            j["toughness"] = "inf";
        } else {
            line << to_string(*t.value);
            j["toughness"] = to_string(*t.value);
            j["toughness_cutset"] = members(*t.witness);
        }
    } catch (const TooLarge& e) {
        line << "skipped (" << e.what() << ")";
        j["toughness"] = nullptr;
    }
    const bool has = g.order() >= 3 && find_two_factor(g).has_value();
    line << "; 2-factor: " << (has ? "yes" : "no");
    j["two_factor"] = has;
    if (format == "json") std::cout << j.dump(2) << '\n';
    else std::cout << line.str() << '\n';
    return 0;
}

int cmd_solve(const std::string& path, const std::string& t_text, const std::string& format, const std::string& out) {
    Graph g = load_graph(path);
    Rational t = parse_rational(t_text);
    std::string text;
    int code = 0;
    try {
        Certificate c = solve(g, t);
        code = exit_code(c.variant);
        if (format == "dot" && c.variant == Variant::HamiltonianCycle) text = to_dot(g, c.cycle);
        else {
            if (format == "dot") std::cerr << "no Hamiltonian cycle to draw; writing the certificate as JSON\n";
            text = to_json(c).dump(2) + "\n";
        }
    } catch (const Not2K2Free& e) {
        std::cerr << e.what() << '\n';
        text = not_2k2_json(g, e.witness).dump(2) + "\n";
        code = kExitNot2K2Free;
    }
    if (out.empty()) std::cout << text;
    else write_atomic(out, text);
    return code;
}

int cmd_verify(const std::string& graph_path, const std::string& cert_path) {
    Graph g = load_graph(graph_path);
    nlohmann::json j = nlohmann::json::parse(slurp(cert_path));
    if (j.value("variant", "") == "not_2k2_free") {
        auto e = j.at("data").at("edges");
        InducedTwoK2 w{{e[0][0], e[0][1]}, {e[1][0], e[1][1]}};
        auto in_range = [&](Vertex v) { return v >= 0 && v < g.order(); };
        bool ok = j.at("input_hash") == graph_hash(g);
        for (Vertex v : {w.first.first, w.first.second, w.second.first, w.second.second}) ok = ok && in_range(v);
        ok = ok && g.adjacent(w.first.first, w.first.second) && g.adjacent(w.second.first, w.second.second);
        for (Vertex a : {w.first.first, w.first.second})
            for (Vertex b : {w.second.first, w.second.second}) ok = ok && a != b && !g.adjacent(a, b);
        std::cout << (ok ? "valid" : "invalid") << '\n';
        return ok ? 0 : 1;
    }
    Certificate c = certificate_from_json(j, g.order());
    std::string why;
    bool ok = verify_certificate(g, c, &why);
    if (ok && c.variant == Variant::Anomaly) std::cout << "valid (anomaly: inconclusive)\n";
    else if (ok) std::cout << "valid\n";
    else std::cout << "invalid: " << why << '\n';
    return ok ? 0 : 1;
}

int cmd_gen(const GenSpec& spec, const std::string& out) {
    Graph g = generate(spec);
    if (out.empty()) write_graph(std::cout, g);
    else write_atomic(out, to_text(g));
    return 0;
}

int cmd_sweep(const std::string& spec_path, std::size_t count, const std::string& t_text, const std::string& out_dir, int max_n,
              const std::string& format, bool timing) {
    GenSpec base = genspec_from_json(nlohmann::json::parse(slurp(spec_path)));
    Rational t = parse_rational(t_text);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    RunReport report;
    for (std::size_t i = 0; i < count; ++i) {
        GenSpec spec = base;
        spec.seed = base.seed + i;
        Graph g = generate(spec);
        RunRecord rec;
        char id[32];
        std::snprintf(id, sizeof id, "g%06zu", i);
        rec.id = id;
        if (max_n > 0 && g.order() <= max_n) {
            auto tv = toughness_exact(g, max_n);
            if (!tv.infinite()) rec.toughness = *tv.value;
        }
        auto start = std::chrono::steady_clock::now();
        std::string cert_text;
        try {
            Certificate c = solve(g, t);
            rec.variant = variant_name(c.variant);
            rec.merges = c.trace.size();
            if (c.witness) rec.ratio = c.witness->ratio;
            cert_text = to_json(c).dump(2) + "\n";
        } catch (const Not2K2Free& e) {
            rec.variant = "not_2k2_free";
            cert_text = not_2k2_json(g, e.witness).dump(2) + "\n";
        } catch (const TooSmall&) {
            rec.variant = "too_small";
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!out_dir.empty()) {
            write_atomic(fs::path(out_dir) / (rec.id + ".graph"), to_text(g));
            if (!cert_text.empty()) write_atomic(fs::path(out_dir) / (rec.id + ".json"), cert_text);
        }
        report.add(std::move(rec));
    }
    std::string json = report.to_json(timing).dump(2) + "\n";
    if (!out_dir.empty()) write_atomic(fs::path(out_dir) / "report.json", json);
    if (format == "json") std::cout << json;
    else std::cout << report.table(timing);
    auto counts = report.counts();
    if (counts.count("anomaly")) std::cerr << "WARNING: " << counts["anomaly"] << " anomalies\n";
    return 0;
}

int cmd_enumerate(int n, const std::string& out_dir) {
    auto all = enumerate_2k2_free(n);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (out_dir.empty()) {
            std::cout << "# " << i << '\n';
            write_graph(std::cout, all[i]);
        } else {
            char name[32];
            std::snprintf(name, sizeof name, "n%d_%04zu.graph", n, i);
            write_atomic(fs::path(out_dir) / name, to_text(all[i]));
        }
    }
    std::cerr << all.size() << " graphs\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2K2-free Hamiltonicity toolkit: 2K2 recognition, exact toughness, certified solve"};
    app.require_subcommand(1);

    std::string t_text = "3", format = "text", out, out_dir;
    int max_n = kDefaultToughnessBound;
    std::uint64_t seed = 0;
    bool timing = false;

    std::string analyze_path;
    auto* analyze = app.add_subcommand("analyze", "n, m, 2K2-freeness, exact toughness, 2-factor existence");
    analyze->add_option("graph", analyze_path, "graph file")->required();
    analyze->add_option("--max-n", max_n, "largest n for exhaustive toughness");
    analyze->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    std::string solve_path;
    auto* solve_cmd = app.add_subcommand("solve", "Hamiltonian cycle or toughness witness, as a certificate");
    solve_cmd->add_option("graph", solve_path, "graph file")->required();
    solve_cmd->add_option("--t", t_text, "toughness threshold p/q");
    solve_cmd->add_option("--format", format, "json|dot")->check(CLI::IsMember({"text", "json", "dot"}));
    solve_cmd->add_option("--out", out, "write output here instead of stdout");

    std::string verify_graph, verify_cert;
    auto* verify = app.add_subcommand("verify", "re-check a certificate against a graph; exit 0 valid, 1 invalid");
    verify->add_option("graph", verify_graph, "graph file")->required();
    verify->add_option("certificate", verify_cert, "certificate JSON")->required();

    GenSpec spec;
    std::string spec_file;
    auto* gen = app.add_subcommand("gen", "generate one 2K2-free graph");
    gen->add_option("--family", spec.family, "split|cochordal|complete-multipartite|random-2k2-rejection");
    gen->add_option("--n", spec.n, "vertex count");
    gen->add_option("--clique", spec.clique_size, "split: clique size");
    gen->add_option("--indep", spec.indep_size, "split: independent set size");
    gen->add_option("--parts", spec.parts, "multipartite: maximum part count");
    gen->add_option("--density", spec.density, "edge density parameter");
    gen->add_option("--seed", seed, "64-bit seed");
    gen->add_option("--spec", spec_file, "GenSpec JSON file (overrides flags)");
    gen->add_option("--out", out, "output file");

    std::string sweep_spec;
    std::size_t count = 0;
    auto* sweep = app.add_subcommand("sweep", "generate, solve and tabulate a batch");
    sweep->add_option("genspec", sweep_spec, "GenSpec JSON file; graph i uses seed + i")->required();
    sweep->add_option("--count", count, "number of graphs")->required();
    sweep->add_option("--t", t_text, "toughness threshold p/q");
    sweep->add_option("--out-dir", out_dir, "per-input graphs, certificates and report.json");
    sweep->add_option("--max-n", max_n, "compute exact toughness up to this n (0 disables)");
    sweep->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    sweep->add_flag("--timing", timing, "include wall time (breaks byte-reproducibility)");

    int enum_n = 0;
    auto* enumerate = app.add_subcommand("enumerate", "all 2K2-free graphs on n <= 7 vertices up to isomorphism");
    enumerate->add_option("--n", enum_n, "vertex count")->required();
    enumerate->add_option("--out-dir", out_dir, "one file per graph");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(analyze_path, max_n, format);
        if (*solve_cmd) return cmd_solve(solve_path, t_text, format, out);
        if (*verify) return cmd_verify(verify_graph, verify_cert);
        if (*gen) {
            if (!spec_file.empty()) spec = genspec_from_json(nlohmann::json::parse(slurp(spec_file)));
            else spec.seed = seed;
            return cmd_gen(spec, out);
        }
        if (*sweep) return cmd_sweep(sweep_spec, count, t_text, out_dir, sweep->count("--max-n") ? max_n : 0, format, timing);
        if (*enumerate) return cmd_enumerate(enum_n, out_dir);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
