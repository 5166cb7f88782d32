#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hammerstein/pendulum.hpp"
#include "helpers.hpp"

using namespace hammerstein;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sine_forcing(double x) { return 0.1 * std::sin(two_pi * x); }

/// Analytic particular solution of v'' = 0.1 sin(2 pi x), v(0) = v(1) = 0.
double sine_particular(double t) {
    return -0.1 * std::sin(two_pi * t) / (two_pi * two_pi);
}

/// Independent oracle: Newton iteration on the central-difference collocation
/// of v'' + a^2 sin v = z, v(0) = v(1) = 0. Shares nothing with the
/// Hammerstein pipeline except the grid.
std::vector<double> collocation_solution(double a, const std::function<double(double)>& z,
                                         std::size_t n) {
    const std::vector<double> grid = uniform_grid(n);
    const double h = grid[1] - grid[0];
    const auto m = static_cast<Eigen::Index>(n - 2);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    for (int sweep = 0; sweep < 50; ++sweep) {
        Eigen::VectorXd fvec(m);
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double vl = i > 0 ? v(i - 1) : 0.0;
            const double vr = i + 1 < m ? v(i + 1) : 0.0;
            fvec(i) = (vl - 2.0 * v(i) + vr) / (h * h) + a * a * std::sin(v(i)) -
                      z(grid[static_cast<std::size_t>(i) + 1]);
            jac(i, i) = -2.0 / (h * h) + a * a * std::cos(v(i));
            if (i > 0) jac(i, i - 1) = 1.0 / (h * h);
            if (i + 1 < m) jac(i, i + 1) = 1.0 / (h * h);
        }
        const Eigen::VectorXd delta = jac.fullPivLu().solve(fvec);
        v -= delta;
        if (delta.cwiseAbs().maxCoeff() < 1e-14) break;
    }
    std::vector<double> full(n, 0.0);
    for (Eigen::Index i = 0; i < m; ++i) full[static_cast<std::size_t>(i) + 1] = v(i);
    return full;
}

SolveConfig pendulum_config() {
    SolveConfig cfg;
    cfg.schedule = make_power_law_schedule(0.6, 0.25, 0.49);
    cfg.tolerance = 1e-9;
    cfg.max_iter = 20000;
    return cfg;
}

} // namespace

TEST_CASE("Green function closed form satisfies its construction conditions") {
    const GreenFunction g = build_green_function();

    // Hand values and (t, x) symmetry.
    CHECK_THAT(g(0.25, 0.5), WithinAbs(-0.125, 1e-15));
    CHECK_THAT(g(0.5, 0.25), WithinAbs(-0.125, 1e-15));
    CHECK_THAT(g(0.5, 0.5), WithinAbs(-0.25, 1e-15));

    auto rng = test_helpers::make_rng(61);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = unif(rng);
        const double x = unif(rng);
        // Boundary conditions in t.
        REQUIRE(g(0.0, x) == 0.0);
        REQUIRE(std::abs(g(1.0, x)) <= 1e-15);
        // Symmetry and nonpositivity.
        REQUIRE(std::abs(g(t, x) - g(x, t)) <= 1e-15);
        REQUIRE(g(t, x) <= 0.0);
        // Continuity at the diagonal: both branches give x(x - 1).
        REQUIRE(std::abs(g(x, x) - x * (x - 1.0)) <= 1e-15);
        // Closed form matches the ansatz coefficients on both branches.
        const double left = GreenFunction::coef_a(x) + GreenFunction::coef_b(x) * t;
        const double right = GreenFunction::coef_c(x) + GreenFunction::coef_d(x) * t;
        REQUIRE(std::abs(g(t, x) - (t <= x ? left : right)) <= 1e-15);
    }

    // Unit derivative jump across t = x: d/dt is (x - 1) left, x right.
    for (const double x : {0.2, 0.5, 0.8})
        CHECK_THAT(GreenFunction::coef_d(x) - GreenFunction::coef_b(x), WithinAbs(1.0, 1e-15));
}

TEST_CASE("first-principles coefficient solve reproduces the closed form") {
    for (const double x : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9}) {
        const GreenCoefficients c = solve_green_coefficients(x);
        CHECK(c.A == 0.0);
        CHECK_THAT(c.B, WithinAbs(x - 1.0, 1e-12));
        CHECK_THAT(c.C, WithinAbs(-x, 1e-12));
        CHECK_THAT(c.D, WithinAbs(x, 1e-12));
    }
}

TEST_CASE("uniform grid and trapezoid weights") {
    const std::vector<double> grid = uniform_grid(5);
    CHECK(grid == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

    const std::vector<double> w = trapezoid_weights(5);
    CHECK(w == std::vector<double>{0.125, 0.25, 0.25, 0.25, 0.125});

    double total = 0.0;
    for (const double wi : trapezoid_weights(101)) total += wi;
    CHECK_THAT(total, WithinRel(1.0, 1e-12));

    CHECK_THROWS_AS(uniform_grid(2), ConfigError);
    CHECK_THROWS_AS(trapezoid_weights(2), ConfigError);
}

TEST_CASE("Green kernel matrix structure") {
    const std::vector<double> grid = uniform_grid(21);
    const Eigen::MatrixXd m = green_kernel_matrix(build_green_function(), grid);
    REQUIRE(m.rows() == 21);
    REQUIRE(m.cols() == 21);
    CHECK(m.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.row(20).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(m.maxCoeff() <= 0.0);
    CHECK_THAT(m(5, 10), WithinAbs(0.25 * (0.5 - 1.0), 1e-15));
}

TEST_CASE("particular solution for constant forcing is (t^2 - t)/2") {
    // G(t, .) is piecewise linear with its kink on a grid node, so the
    // composite trapezoid rule integrates it exactly; only rounding remains.
    const std::vector<double> grid = uniform_grid(101);
    const std::vector<double> w = trapezoid_weights(101);
    const GridVector g = compute_g([](double) { return 1.0; }, grid, w);
    REQUIRE(g.size() == 101);
    CHECK(g.weights == w);
    double max_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        max_err = std::max(max_err, std::abs(g.coords[i] - 0.5 * (grid[i] * grid[i] - grid[i])));
    CHECK(max_err <= 1e-12);
    CHECK(g.coords.front() == 0.0);
    CHECK(std::abs(g.coords.back()) <= 1e-15);

    const GridVector zero = compute_g([](double) { return 0.0; }, grid, w);
    for (const double c : zero.coords) REQUIRE(c == 0.0);

    CHECK_THROWS_AS(compute_g([](double) { return 1.0; }, grid, trapezoid_weights(51)),
                    DimensionError);
}

TEST_CASE("particular solution for sine forcing converges at second order") {
    const auto max_error = [](std::size_t n) {
        const std::vector<double> grid = uniform_grid(n);
        const GridVector g = compute_g(sine_forcing, grid, trapezoid_weights(n));
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            err = std::max(err, std::abs(g.coords[i] - sine_particular(grid[i])));
        return err;
    };
    const double coarse = max_error(101);
    const double fine = max_error(201);
    CHECK_THAT(coarse, WithinRel(8.334979e-7, 1e-3));
    CHECK_THAT(fine, WithinRel(2.083436e-7, 1e-3));
    const double ratio = coarse / fine;
    CHECK(ratio > 3.95);
    CHECK(ratio < 4.05);
}

TEST_CASE("quadrature image of the kernel really solves v'' = w") {
    const std::vector<double> grid = uniform_grid(201);
    const GreenFunction g = build_green_function();
    CHECK(verify_green(g, [](double) { return 1.0; }, grid) <= 1e-10);
    CHECK(verify_green(g, [](double x) { return x; }, grid) <= 1e-10);
    CHECK(verify_green(g, [](double) { return 0.0; }, grid) == 0.0);

    CHECK_THROWS_AS(verify_green(g, [](double) { return 1.0; }, {0.0, 0.1, 0.5, 0.9, 1.0}),
                    ConfigError);
    CHECK_THROWS_AS(verify_green(g, [](double) { return 1.0; }, uniform_grid(4)), ConfigError);
}

TEST_CASE("linear forcing reproduces the analytic cubic") {
    // v'' = t with zero boundary values has v(t) = (t^3 - t)/6.
    const std::vector<double> grid = uniform_grid(201);
    const GridVector g = compute_g([](double x) { return x; }, grid, trapezoid_weights(201));
    double max_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        max_err = std::max(max_err, std::abs(g.coords[i] - (t * t * t - t) / 6.0));
    }
    CHECK(max_err <= 1e-4);
}

TEST_CASE("assembly wires the operators consistently") {
    PendulumProblem prob;
    prob.amplitude_a = 0.5;
    prob.forcing_z = sine_forcing;
    prob.grid_size = 21;
    const DiscretizedHammerstein d = assemble_hammerstein(prob);
    CHECK(d.grid.size() == 21);
    CHECK(d.weights == trapezoid_weights(21));
    CHECK(d.k_op.size() == 21);
    CHECK(d.f_op.size() == 21);
    CHECK(d.g_vec.size() == 21);
    CHECK(d.k_op.kernel_matrix(5, 10) ==
          build_green_function()(d.grid[5], d.grid[10]));
    CHECK(d.f_op.amplitude_a == 0.5);
    CHECK(d.f_op.offset_g.coords == d.g_vec.coords);

    PendulumProblem bad = prob;
    bad.amplitude_a = 0.0;
    CHECK_THROWS_AS(assemble_hammerstein(bad), ConfigError);
    bad = prob;
    bad.forcing_z = nullptr;
    CHECK_THROWS_AS(assemble_hammerstein(bad), ConfigError);
    bad = prob;
    bad.grid_size = 2;
    CHECK_THROWS_AS(assemble_hammerstein(bad), ConfigError);
}

TEST_CASE("pendulum end to end against the collocation oracle") {
    PendulumProblem prob;
    prob.amplitude_a = 0.5;
    prob.forcing_z = sine_forcing;
    prob.grid_size = 101;

    const PendulumSolution sol = solve_pendulum(prob, pendulum_config());

    CHECK(sol.trace.converged);
    CHECK(sol.trace.steps.size() >= 300);
    CHECK(sol.trace.steps.size() <= 450);

    // Boundary nodes never move: zero forcing image and zero kernel rows.
    CHECK(sol.amplitude.coords.front() == 0.0);
    CHECK(std::abs(sol.amplitude.coords.back()) <= 1e-15);

    // Discrete ODE residual, small but quadrature-limited.
    CHECK(sol.ode_residual <= 5e-2);
    CHECK(sol.ode_residual <= 1e-4);

    // Amplitude scale: the forcing is weak, so |v| stays near 1e-3.
    CHECK(sup_norm(sol.amplitude) >= 2e-3);
    CHECK(sup_norm(sol.amplitude) <= 3e-3);

    // Independent collocation solve of the same BVP.
    const std::vector<double> oracle = collocation_solution(0.5, sine_forcing, 101);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < oracle.size(); ++i)
        max_diff = std::max(max_diff, std::abs(sol.amplitude.coords[i] - oracle[i]));
    CHECK(max_diff <= 5e-2);
    CHECK(max_diff <= 1e-5);

    // Grid refinement: the n = 51 solution agrees at shared nodes.
    PendulumProblem coarse = prob;
    coarse.grid_size = 51;
    const PendulumSolution sol_coarse = solve_pendulum(coarse, pendulum_config());
    CHECK(sol_coarse.trace.converged);
    double refine_diff = 0.0;
    for (std::size_t i = 0; i < 51; ++i)
        refine_diff = std::max(refine_diff,
                               std::abs(sol_coarse.amplitude.coords[i] -
                                        sol.amplitude.coords[2 * i]));
    CHECK(refine_diff <= 5e-3);
    CHECK(refine_diff <= 1e-4);
}

TEST_CASE("pendulum solve rejects incompatible configurations") {
    PendulumProblem prob;
    prob.amplitude_a = 0.5;
    prob.forcing_z = sine_forcing;
    prob.grid_size = 21;

    SolveConfig cfg = pendulum_config();
    cfg.pair = ConjugatePair::of(3.0);
    CHECK_THROWS_AS(solve_pendulum(prob, cfg), ConfigError);

    cfg = pendulum_config();
    cfg.u1 = GridVector({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(solve_pendulum(prob, cfg), DimensionError);

    cfg = pendulum_config();
    cfg.u1 = GridVector(std::vector<double>(21, 0.0));   // unit weights, not trapezoid
    CHECK_THROWS_AS(solve_pendulum(prob, cfg), DimensionError);
}

TEST_CASE("pendulum runs are deterministic") {
    PendulumProblem prob;
    prob.amplitude_a = 0.5;
    prob.forcing_z = sine_forcing;
    prob.grid_size = 31;
    SolveConfig cfg = pendulum_config();
    cfg.tolerance = 1e-7;
    const PendulumSolution a = solve_pendulum(prob, cfg);
    const PendulumSolution b = solve_pendulum(prob, cfg);
    CHECK(a.amplitude.coords == b.amplitude.coords);
    CHECK(a.ode_residual == b.ode_residual);
    CHECK(a.trace.steps.size() == b.trace.steps.size());
}
