#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "hammerstein/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, hammerstein::ExperimentSpec& spec,
                      std::string& config, std::string& out, double& tolerance,
                      long long& max_iter) {
    cmd->add_option("--config", config, "JSON config file (omit for the built-in default)");
    cmd->add_option("--out", out, "output directory (created if missing)");
    cmd->add_option("--seed", spec.seed, "RNG seed for sampled checks");
    cmd->add_option("--tolerance", tolerance, "override the config's stopping tolerance");
    cmd->add_option("--max-iter", max_iter, "override the config's iteration cap");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Strongly convergent coupled iteration for Hammerstein-type equations: "
        "experiments, schedule audits, and inequality sweeps"};
    app.require_subcommand(1);

    struct CommandState {
        hammerstein::ExperimentSpec spec;
        std::string config;
        std::string out = ".";
        double tolerance = -1.0;
        long long max_iter = -1;
    };

    CommandState state;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve-2d", "run the 2-D two-matrix experiment (table1.csv, summary.json)"},
        {"pendulum", "solve the forced-pendulum BVP via its Hammerstein reduction"},
        {"validate-schedule", "audit a (lambda_n, theta_n) schedule against the "
                              "convergence conditions"},
        {"check-lemmas", "Monte-Carlo sweeps of the functional inequalities"}};
    for (const auto& [name, help] : commands) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common_flags(cmd, state.spec, state.config, state.out, state.tolerance,
                         state.max_iter);
        cmd->callback([&state, name = name]() { state.spec.command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    state.spec.config_path = state.config;
    state.spec.output_dir = state.out;
    if (state.tolerance > 0.0) state.spec.tolerance_override = state.tolerance;
    if (state.max_iter > 0)
        state.spec.max_iter_override = static_cast<std::size_t>(state.max_iter);

    try {
        return hammerstein::run_experiment(state.spec);
    } catch (const hammerstein::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
