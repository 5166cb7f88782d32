#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hammerstein/pendulum.hpp"
#include "hammerstein/serialization.hpp"

namespace hammerstein {

/// One CLI invocation: which experiment to run, where its config comes from
/// (empty path = built-in default), where outputs go, and the overrides the
/// flags may apply. Fixed seed and config give byte-identical outputs.
struct ExperimentSpec {
    std::string command;
    std::filesystem::path config_path;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 12345;
    std::optional<double> tolerance_override;
    std::optional<std::size_t> max_iter_override;
};

namespace cli_detail {

inline json load_config_or(const ExperimentSpec& spec, const json& fallback) {
    if (spec.config_path.empty()) return fallback;
    return load_json_file(spec.config_path);
}

inline void ensure_output_dir(const ExperimentSpec& spec) {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + spec.output_dir.string());
}

inline std::function<double(double)> forcing_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("forcing JSON needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return [](double) { return 0.0; };
    if (kind == "sine") {
        const double c = j.value("coefficient", 0.1);
        return [c](double x) { return c * std::sin(2.0 * std::numbers::pi * x); };
    }
    throw ConfigError("unknown forcing kind '" + kind + "'");
}

} // namespace cli_detail

/// Built-in config for the 2-D experiment: the published matrices, schedule,
/// tolerance, and all three starting pairs.
inline json default_solve_2d_config() {
    return json{
        {"p", 2.0},
        {"F", {{"rows", {{7.0, 9.0}, {-9.0, 25.0}}}, {"claimed_eta", 7.0}}},
        {"K", {{"rows", {{3.0, -2.0}, {2.0, 5.0}}}, {"claimed_eta", 3.0}}},
        {"tolerance", 1e-4},
        {"max_iter", 1000},
        {"schedule", {{"kind", "paper_experiment"}}},
        {"starts",
         {{{"u1", {1.0, 1.0}}, {"v1", {1.0, 1.0}}},
          {{"u1", {1.0, 0.5}}, {"v1", {0.25, 1.0}}},
          {{"u1", {4.0, -5.0}}, {"v1", {-7.0, 3.0}}}}}};
}

/// Runs the 2-D Hammerstein experiment for every configured start; writes
/// table1.csv (iteration-difference norms, one column per start), and
/// summary.json (per-start convergence data plus the direct-solve oracle).
/// Exit 0 when every start converged, 2 otherwise (partial CSV retained).
inline int run_solve_2d(const ExperimentSpec& spec) {
    const json cfg_json = cli_detail::load_config_or(spec, default_solve_2d_config());
    cli_detail::ensure_output_dir(spec);

    for (const char* key : {"F", "K", "schedule"})
        if (!cfg_json.contains(key))
            throw ConfigError(std::string("solve-2d config needs a '") + key + "' field");

    const ConjugatePair pair = ConjugatePair::of(cfg_json.value("p", 2.0));
    const MatrixOperator F = matrix_operator_from_json(cfg_json.at("F"));
    const MatrixOperator K = matrix_operator_from_json(cfg_json.at("K"));
    const Schedule schedule = schedule_from_json(cfg_json.at("schedule"));
    const double tolerance =
        spec.tolerance_override.value_or(cfg_json.value("tolerance", 1e-4));
    const std::size_t max_iter =
        spec.max_iter_override.value_or(cfg_json.value("max_iter", std::size_t{1000}));

    if (!cfg_json.contains("starts") || !cfg_json.at("starts").is_array() ||
        cfg_json.at("starts").empty())
        throw ConfigError("solve-2d config needs a nonempty 'starts' array");

    struct StartResult {
        IterationTrace trace;
        bool diverged = false;
    };
    std::vector<StartResult> results;

    for (const auto& start : cfg_json.at("starts")) {
        if (!start.is_object() || !start.contains("u1"))
            throw ConfigError("every start needs a 'u1' vector");
        SolveConfig cfg;
        cfg.pair = pair;
        cfg.tolerance = tolerance;
        cfg.max_iter = max_iter;
        cfg.schedule = schedule;
        cfg.u1 = start.at("u1").get<GridVector>();
        if (start.contains("v1")) cfg.v1 = start.at("v1").get<GridVector>();
        StartResult r;
        try {
            r.trace = solve_hammerstein(F, K, cfg);
        } catch (const DivergenceError& e) {
            r.trace = e.partial_trace;
            r.diverged = true;
        }
        results.push_back(std::move(r));
    }

    // table1.csv: the du column of every start, side by side, blank once a
    // start has stopped.
    std::vector<std::string> header = {"n"};
    for (std::size_t s = 0; s < results.size(); ++s)
        header.push_back("du_start" + std::to_string(s + 1));
    std::size_t depth = 0;
    for (const auto& r : results) depth = std::max(depth, r.trace.steps.size());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < depth; ++i) {
        std::vector<std::string> row = {std::to_string(i + 1)};
        for (const auto& r : results)
            row.push_back(i < r.trace.steps.size()
                              ? format_significant(r.trace.steps[i].du_norm)
                              : "");
        rows.push_back(std::move(row));
    }
    write_csv(spec.output_dir / "table1.csv", header, rows);

    json summary;
    summary["tolerance"] = tolerance;
    summary["schedule"] = schedule.description;
    bool all_converged = true;
    for (std::size_t s = 0; s < results.size(); ++s) {
        const auto& r = results[s];
        json entry = trace_summary_json(r.trace);
        entry["label"] = "start" + std::to_string(s + 1);
        entry["diverged"] = r.diverged;
        if (!r.trace.steps.empty()) {
            const auto peak = std::max_element(
                r.trace.steps.begin(), r.trace.steps.end(),
                [](const IterationStep& a, const IterationStep& b) {
                    return a.du_norm < b.du_norm;
                });
            entry["peak_du"] = peak->du_norm;
            entry["peak_iteration"] = peak->n;
        }
        if (!r.trace.final_u.empty()) {
            entry["final_residual"] = residual(F, K, r.trace.final_u, pair);
            entry["distance_to_oracle"] = norm_p(r.trace.final_u, pair);
        }
        all_converged = all_converged && r.trace.converged;
        summary["starts"].push_back(std::move(entry));
    }
    try {
        const DirectSolution oracle = direct_linear_solution(F, K);
        summary["oracle"] = {{"solution", oracle.solution},
                             {"determinant", oracle.determinant}};
    } catch (const SingularSystemError& e) {
        summary["oracle"] = {{"error", e.what()}};
    }
    summary["all_converged"] = all_converged;
    save_json_file(spec.output_dir / "summary.json", summary);

    return all_converged ? 0 : 2;
}

/// Built-in config for the pendulum experiment (the small-amplitude setup
/// the repository's acceptance checks pin down).
inline json default_pendulum_config() {
    return json{{"amplitude_a", 0.5},
                {"forcing", {{"kind", "sine"}, {"coefficient", 0.1}}},
                {"grid_size", 101},
                {"p", 2.0},
                {"tolerance", 1e-9},
                {"max_iter", 20000},
                {"schedule",
                 {{"kind", "power_law"}, {"a", 0.6}, {"b", 0.25}, {"scale", 0.49}}}};
}

/// Solves the forced-pendulum BVP through its Hammerstein reduction; writes
/// amplitude.csv (t, v), trace.csv (per-step norms), and report.json
/// (convergence, discrete ODE residual, empirical monotonicity constants,
/// warnings). Exit 0 on convergence, 2 otherwise.
inline int run_pendulum(const ExperimentSpec& spec) {
    const json cfg_json = cli_detail::load_config_or(spec, default_pendulum_config());
    cli_detail::ensure_output_dir(spec);

    PendulumProblem prob;
    prob.amplitude_a = cfg_json.value("amplitude_a", 0.5);
    prob.forcing_z = cli_detail::forcing_from_json(
        cfg_json.contains("forcing") ? cfg_json.at("forcing")
                                     : json{{"kind", "sine"}, {"coefficient", 0.1}});
    prob.grid_size = cfg_json.value("grid_size", std::size_t{101});

    SolveConfig cfg;
    cfg.pair = ConjugatePair::of(cfg_json.value("p", 2.0));
    cfg.tolerance = spec.tolerance_override.value_or(cfg_json.value("tolerance", 1e-9));
    cfg.max_iter =
        spec.max_iter_override.value_or(cfg_json.value("max_iter", std::size_t{20000}));
    cfg.schedule = schedule_from_json(
        cfg_json.contains("schedule")
            ? cfg_json.at("schedule")
            : json{{"kind", "power_law"}, {"a", 0.6}, {"b", 0.25}, {"scale", 0.49}});

    json report;
    bool converged = false;
    try {
        const PendulumSolution sol = solve_pendulum(prob, cfg);
        converged = sol.trace.converged;

        const DiscretizedHammerstein d = assemble_hammerstein(prob);
        std::vector<std::vector<std::string>> amp_rows;
        for (std::size_t i = 0; i < d.grid.size(); ++i)
            amp_rows.push_back({format_significant(d.grid[i]),
                                format_significant(sol.amplitude.coords[i])});
        write_csv(spec.output_dir / "amplitude.csv", {"t", "v"}, amp_rows);
        write_trace_csv(spec.output_dir / "trace.csv", sol.trace);

        // Empirical monotonicity constants on the solution-scale box. The
        // Green kernel is negative semidefinite, so a negative constant for
        // K is expected and worth a warning, not a failure.
        const ConjugatePair pair = cfg.pair;
        const double eta_f = estimate_monotonicity_constant(d.f_op, pair, 2000, spec.seed,
                                                            0.5, d.weights);
        const double eta_k = estimate_monotonicity_constant(d.k_op, pair, 2000,
                                                            spec.seed + 1, 0.5, d.weights);
        report = trace_summary_json(sol.trace);
        report["ode_residual"] = sol.ode_residual;
        report["eta_hat_F"] = eta_f;
        report["eta_hat_K"] = eta_k;
        report["eta_expected"] = std::min(eta_f, eta_k);
        json warnings = json::array();
        if (eta_k <= 0.0)
            warnings.push_back(
                "integral operator is not strongly monotone on the sampled box "
                "(eta_hat_K <= 0): the Green kernel is negative semidefinite, so the "
                "run sits outside the convergence theorem's hypotheses");
        if (eta_f <= 0.0)
            warnings.push_back(
                "superposition operator monotonicity estimate is nonpositive on the "
                "sampled box (amplitude too large for a^2 cos to stay positive)");
        report["warnings"] = warnings;
    } catch (const DivergenceError& e) {
        write_trace_csv(spec.output_dir / "trace.csv", e.partial_trace);
        report = trace_summary_json(e.partial_trace);
        report["diverged"] = true;
        report["error"] = e.what();
    }
    save_json_file(spec.output_dir / "report.json", report);
    return converged ? 0 : 2;
}

/// Audits a schedule against the convergence theorem's conditions and writes
/// report.json. Always exits 0 when the input parses (this is a reporting
/// tool, usable on deliberately noncompliant schedules).
inline int run_validate_schedule(const ExperimentSpec& spec) {
    const json cfg_json = cli_detail::load_config_or(
        spec, json{{"schedule", {{"kind", "paper_experiment"}}}, {"horizon", 1000}});
    cli_detail::ensure_output_dir(spec);

    if (!cfg_json.contains("schedule"))
        throw ConfigError("validate-schedule config needs a 'schedule' field");
    const Schedule schedule = schedule_from_json(cfg_json.at("schedule"));
    const std::uint64_t horizon = cfg_json.value("horizon", std::uint64_t{1000});
    const ScheduleReport report = validate_schedule(schedule, horizon);
    save_json_file(spec.output_dir / "report.json", json(report));
    return 0;
}

/// Monte-Carlo sweeps of the functional inequalities. p = 2 results are hard
/// assertions (exit 1 on any failure); other exponents are reported as
/// evaluated-as-printed evidence. Zero samples is an input error.
inline int run_check_lemmas(const ExperimentSpec& spec) {
    const json cfg_json = cli_detail::load_config_or(
        spec, json{{"samples", 500}, {"dimension", 4}, {"exponents", {2.0, 3.0}},
                   {"box", 1.0}});
    cli_detail::ensure_output_dir(spec);

    const std::size_t samples = cfg_json.value("samples", std::size_t{500});
    if (samples == 0) throw ConfigError("lemma sweep needs a positive sample count");
    const std::size_t dim = cfg_json.value("dimension", std::size_t{4});
    if (dim == 0) throw ConfigError("lemma sweep needs a positive dimension");
    const double box = cfg_json.value("box", 1.0);
    std::vector<double> exponents = {2.0, 3.0};
    if (cfg_json.contains("exponents"))
        exponents = cfg_json.at("exponents").get<std::vector<double>>();

    json report;
    report["samples"] = samples;
    report["dimension"] = dim;
    report["seed"] = spec.seed;
    report["sweeps"] = json::array();
    bool p2_all_passed = true;

    for (const double p : exponents) {
        const ConjugatePair pair = ConjugatePair::of(p);
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> unif(-box, box);
        auto draw = [&]() {
            std::vector<double> c(dim);
            for (auto& ci : c) ci = unif(rng);
            return GridVector(std::move(c));
        };

        struct Counter {
            std::size_t passed = 0, failed = 0;
        };
        Counter sandwich, descent, three_point, ball;
        auto tally = [](Counter& c, const FunctionalReport& r) {
            if (r.satisfied)
                ++c.passed;
            else
                ++c.failed;
        };

        for (std::size_t s = 0; s < samples; ++s) {
            const GridVector x = draw(), y = draw(), z = draw();
            const GridVector xstar = draw(), ystar = draw();
            tally(sandwich, check_phi_bounds(x, y, pair));
            tally(descent, check_lemma_vp_descent(x, xstar, ystar, pair));
            tally(three_point, check_lemma_three_point(x, y, z, pair));
            tally(ball, check_lemma_ball_bound(x, y, pair));
        }

        const bool asserted = (p == 2.0);
        const bool clean = sandwich.failed == 0 && descent.failed == 0 &&
                           three_point.failed == 0 && ball.failed == 0;
        if (asserted && !clean) p2_all_passed = false;

        auto counter_json = [](const Counter& c) {
            return json{{"passed", c.passed}, {"failed", c.failed}};
        };
        report["sweeps"].push_back(json{{"p", p},
                                        {"asserted", asserted},
                                        {"phi_sandwich", counter_json(sandwich)},
                                        {"vp_descent", counter_json(descent)},
                                        {"three_point", counter_json(three_point)},
                                        {"ball_bound", counter_json(ball)}});
    }

    report["p2_all_passed"] = p2_all_passed;
    save_json_file(spec.output_dir / "report.json", report);
    return p2_all_passed ? 0 : 1;
}

/// Dispatch on spec.command. Unknown commands are a config error.
inline int run_experiment(const ExperimentSpec& spec) {
    if (spec.command == "solve-2d") return run_solve_2d(spec);
    if (spec.command == "pendulum") return run_pendulum(spec);
    if (spec.command == "validate-schedule") return run_validate_schedule(spec);
    if (spec.command == "check-lemmas") return run_check_lemmas(spec);
    throw ConfigError("unknown command '" + spec.command + "'");
}

} // namespace hammerstein
