#pragma once

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hammerstein/functionals.hpp"
#include "hammerstein/operators.hpp"
#include "hammerstein/schedule.hpp"
#include "hammerstein/solver.hpp"

namespace hammerstein {

using nlohmann::json;

/// Formats a double with 10 significant digits, '.' decimal separator
/// (locale-independent): the CSV cell format used by every writer.
inline std::string format_significant(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

/// Writes a CSV file: one header row, then pre-formatted cells. Empty cells
/// are allowed (ragged columns, e.g. runs of different lengths).
inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
}

inline void to_json(json& j, const GridVector& x) {
    j = json{{"coords", x.coords}, {"weights", x.weights}};
}

/// Accepts either a bare coordinate array (unit weights) or an object with
/// "coords" and optional "weights".
inline void from_json(const json& j, GridVector& x) {
    if (j.is_array()) {
        x = GridVector(j.get<std::vector<double>>());
        return;
    }
    if (!j.is_object() || !j.contains("coords"))
        throw ConfigError("grid vector JSON must be an array or have a 'coords' field");
    auto coords = j.at("coords").get<std::vector<double>>();
    if (j.contains("weights"))
        x = GridVector(std::move(coords), j.at("weights").get<std::vector<double>>());
    else
        x = GridVector(std::move(coords));
}

/// Matrix operators load from a bare row-major array-of-arrays or an object
/// {"rows": [[...]], "claimed_eta": ..., "claimed_p": ...}.
inline MatrixOperator matrix_operator_from_json(const json& j) {
    if (j.is_array())
        return MatrixOperator::from_rows(j.get<std::vector<std::vector<double>>>());
    if (!j.is_object() || !j.contains("rows"))
        throw ConfigError("matrix JSON must be an array of rows or have a 'rows' field");
    std::optional<double> eta, p;
    if (j.contains("claimed_eta")) eta = j.at("claimed_eta").get<double>();
    if (j.contains("claimed_p")) p = j.at("claimed_p").get<double>();
    return MatrixOperator::from_rows(j.at("rows").get<std::vector<std::vector<double>>>(),
                                     eta, p);
}

inline json matrix_operator_to_json(const MatrixOperator& m) {
    std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j2 = 0; j2 < m.size(); ++j2)
            rows[i][j2] = m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j2));
    json j{{"rows", rows}};
    if (m.claimed_eta) j["claimed_eta"] = *m.claimed_eta;
    if (m.claimed_p) j["claimed_p"] = *m.claimed_p;
    return j;
}

/// Schedule specs: {"kind": "paper_experiment"} or
/// {"kind": "power_law", "a": ..., "b": ..., "scale": ...}.
inline Schedule schedule_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("schedule JSON needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "paper_experiment") return make_paper_schedule();
    if (kind == "power_law") {
        if (!j.contains("a") || !j.contains("b") || !j.contains("scale"))
            throw ConfigError("power_law schedule needs fields a, b, scale");
        return make_power_law_schedule(j.at("a").get<double>(), j.at("b").get<double>(),
                                       j.at("scale").get<double>());
    }
    throw ConfigError("unknown schedule kind '" + kind + "'");
}

inline void to_json(json& j, const FunctionalReport& r) {
    j = json{{"value", r.value},
             {"lower_bound", r.lower_bound},
             {"upper_bound", r.upper_bound},
             {"satisfied", r.satisfied}};
}

inline void to_json(json& j, const ProbePoint& p) {
    j = json{{"n", p.n}, {"value", p.value}};
}

inline void to_json(json& j, const ConditionReport& c) {
    j = json{{"verdict", to_string(c.verdict)}, {"probes", c.probes}, {"note", c.note}};
}

inline void to_json(json& j, const ScheduleReport& r) {
    j = json{{"description", r.description},
             {"conditions",
              {{"theta_to_zero", r.theta_to_zero},
               {"sum_diverges", r.sum_diverges},
               {"lambda_little_o", r.lambda_little_o},
               {"ratio_limit", r.ratio_limit}}},
             {"range_flags", r.range_flags}};
}

/// Compact JSON digest of a solve (the full per-step record goes to CSV).
inline json trace_summary_json(const IterationTrace& t) {
    json j;
    j["converged"] = t.converged;
    j["iterations"] = t.steps.empty() ? 0 : t.steps.back().n;
    j["final_u"] = t.final_u;
    j["final_v"] = t.final_v;
    return j;
}

/// Per-step CSV rows (n, du_norm, dv_norm, residual) for a single trace.
inline void write_trace_csv(const std::filesystem::path& path, const IterationTrace& t) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(t.steps.size());
    for (const auto& s : t.steps)
        rows.push_back({std::to_string(s.n), format_significant(s.du_norm),
                        format_significant(s.dv_norm), format_significant(s.residual)});
    write_csv(path, {"n", "du_norm", "dv_norm", "residual"}, rows);
}

} // namespace hammerstein
