#ifndef TOUGHHAM_REPORT_HPP
#define TOUGHHAM_REPORT_HPP

#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rational.hpp"
#include "solver.hpp"

namespace toughham {

struct RunRecord {
    std::string id;
    std::string variant;  // certificate variant, or "not_2k2_free"
    std::optional<Rational> ratio;
    std::optional<Rational> toughness;  // exact, when computed
    std::size_t merges = 0;
    double wall_ms = 0;
};

struct RunReport {
    std::vector<RunRecord> records;

    void add(RunRecord r) { records.push_back(std::move(r)); }

    std::map<std::string, std::size_t> counts() const {
        std::map<std::string, std::size_t> out;
        for (const auto& r : records) ++out[r.variant];
        return out;
    }

    // Wall time is left out unless asked for, so reports stay byte-reproducible.
    nlohmann::json to_json(bool timing = false) const {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : records) {
            nlohmann::json j{{"id", r.id}, {"variant", r.variant}, {"merges", r.merges}};
            j["ratio"] = r.ratio ? nlohmann::json(to_string(*r.ratio)) : nlohmann::json(nullptr);
            if (r.toughness) j["toughness"] = to_string(*r.toughness);
            if (timing) j["wall_ms"] = r.wall_ms;
            recs.push_back(j);
        }
        nlohmann::json agg = nlohmann::json::object();
        for (const auto& [k, v] : counts()) agg[k] = v;
        return {{"total", records.size()}, {"counts", agg}, {"records", recs}};
    }

    std::string table(bool timing = false) const {
        std::ostringstream os;
        os << std::left << std::setw(14) << "id" << std::setw(20) << "variant" << std::setw(10) << "ratio" << std::setw(8) << "merges";
        if (timing) os << "ms";
        os << '\n';
        for (const auto& r : records) {
            os << std::setw(14) << r.id << std::setw(20) << r.variant << std::setw(10) << (r.ratio ? to_string(*r.ratio) : "-")
               << std::setw(8) << r.merges;
            if (timing) os << std::fixed << std::setprecision(2) << r.wall_ms;
            os << '\n';
        }
        os << "total " << records.size();
        for (const auto& [k, v] : counts()) os << "  " << k << "=" << v;
        os << '\n';
        return os.str();
    }
};

}  // namespace toughham

#endif
