#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hammerstein/solver.hpp"

namespace hammerstein {

/// Green function of v'' = 0, v(0) = v(1) = 0 on [0,1]x[0,1]:
///   G(t, x) = t (x - 1)   for 0 <= t <= x,
///   G(t, x) = x (t - 1)   for x <  t <= 1.
/// Piecewise-linear in t with ansatz coefficients A + B t (left branch) and
/// C + D t (right branch); the construction conditions fix A = 0, B = x - 1,
/// C = -x, D = x. Continuous at t = x, zero on the boundary, derivative jump
/// of 1 across t = x, and symmetric in (t, x). The kernel is nonpositive:
/// y(t) = integral G(t,x) w(x) dx solves y'' = w with zero boundary values.
struct GreenFunction {
    double operator()(double t, double x) const {
        return t <= x ? t * (x - 1.0) : x * (t - 1.0);
    }

    static double coef_a(double) { return 0.0; }
    static double coef_b(double x) { return x - 1.0; }
    static double coef_c(double x) { return -x; }
    static double coef_d(double x) { return x; }
};

inline GreenFunction build_green_function() { return GreenFunction{}; }

/// Ansatz coefficients for a fixed x, from first principles: A = 0 comes from
/// G(0,x) = 0, and (B, C, D) solve the boundary, continuity, and unit-jump
/// conditions as a 3x3 linear system. Exists as an independent cross-check on
/// the closed form above.
struct GreenCoefficients {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
};

inline GreenCoefficients solve_green_coefficients(double x) {
    // Rows: C + D = 0 (right boundary), -B x + C + D x = 0 (continuity at
    // t = x, with A already 0), D - B = 1 (derivative jump).
    Eigen::Matrix3d m;
    Eigen::Vector3d rhs;
    m << 0.0, 1.0, 1.0,
         -x,  1.0, x,
         -1.0, 0.0, 1.0;
    rhs << 0.0, 0.0, 1.0;
    const Eigen::Vector3d sol = m.fullPivLu().solve(rhs);
    return GreenCoefficients{0.0, sol(0), sol(1), sol(2)};
}

/// n evenly spaced nodes covering [0,1], endpoints included.
inline std::vector<double> uniform_grid(std::size_t n) {
    if (n < 3) throw ConfigError("grid needs at least 3 nodes");
    std::vector<double> t(n);
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * h;
    t.back() = 1.0;
    return t;
}

/// Composite-trapezoid weights for the uniform grid; they sum to 1, the
/// length of the interval.
inline std::vector<double> trapezoid_weights(std::size_t n) {
    if (n < 3) throw ConfigError("quadrature needs at least 3 nodes");
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

/// Kernel matrix M_ij = G(t_i, x_j) on a shared grid. First and last rows
/// are zero (boundary conditions) and M is symmetric.
inline Eigen::MatrixXd green_kernel_matrix(const GreenFunction& g,
                                           const std::vector<double>& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = g(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)]);
    return m;
}

/// Particular solution g(t_i) = sum_j w_j G(t_i, x_j) z(x_j), i.e. the
/// quadrature image of the forcing under the Green kernel. Vanishes at the
/// endpoints by construction.
inline GridVector compute_g(const std::function<double(double)>& z,
                            const std::vector<double>& grid,
                            const std::vector<double>& weights) {
    if (grid.size() != weights.size())
        throw DimensionError("grid and quadrature weight lengths differ");
    if (grid.size() < 3) throw ConfigError("grid needs at least 3 nodes");
    const GreenFunction green;
    std::vector<double> coords(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            s += weights[j] * green(grid[i], grid[j]) * z(grid[j]);
        coords[i] = s;
    }
    return GridVector(std::move(coords), weights);
}

/// The forced-pendulum boundary value problem v'' + a^2 sin v = z on [0,1]
/// with v(0) = v(1) = 0, to be solved through its Hammerstein reduction.
struct PendulumProblem {
    double amplitude_a = 0.5;
    std::function<double(double)> forcing_z;
    std::size_t grid_size = 101;
};

/// The assembled discrete Hammerstein problem u + K F u = 0 equivalent to
/// the pendulum BVP: K integrates against the Green kernel, F is the
/// superposition u |-> a^2 sin(u - g), and g is the forcing's particular
/// solution. The pendulum amplitude is recovered as v = g - u.
struct DiscretizedHammerstein {
    std::vector<double> grid;
    std::vector<double> weights;
    IntegralOperator k_op;
    NemytskiiOperator f_op;
    GridVector g_vec;
};

inline DiscretizedHammerstein assemble_hammerstein(const PendulumProblem& prob) {
    if (prob.amplitude_a == 0.0)
        throw ConfigError("pendulum constant a must be nonzero");
    if (!prob.forcing_z) throw ConfigError("pendulum problem needs a forcing function");
    if (prob.grid_size < 3) throw ConfigError("grid needs at least 3 nodes");

    std::vector<double> grid = uniform_grid(prob.grid_size);
    std::vector<double> weights = trapezoid_weights(prob.grid_size);
    const GreenFunction green = build_green_function();
    GridVector g = compute_g(prob.forcing_z, grid, weights);

    IntegralOperator k_op(green_kernel_matrix(green, grid), weights);
    NemytskiiOperator f_op(prob.amplitude_a, g);
    return DiscretizedHammerstein{std::move(grid), std::move(weights), std::move(k_op),
                                  std::move(f_op), std::move(g)};
}

/// Checks the defining property of the Green function: v = integral(G w)
/// must satisfy v'' = w. Builds v by quadrature on the (uniform) grid and
/// returns the maximum mismatch of its second central difference against
/// w(t_i) over interior nodes.
inline double verify_green(const GreenFunction& g, const std::function<double(double)>& w,
                           const std::vector<double>& grid) {
    if (grid.size() < 5) throw ConfigError("verification grid needs at least 5 nodes");
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-12)
            throw ConfigError("verify_green supports only uniform grids");

    std::vector<double> weights(grid.size(), h);
    weights.front() = 0.5 * h;
    weights.back() = 0.5 * h;

    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            s += weights[j] * g(grid[i], grid[j]) * w(grid[j]);
        v[i] = s;
    }

    double max_residual = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double second = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h);
        max_residual = std::max(max_residual, std::abs(second - w(grid[i])));
    }
    return max_residual;
}

struct PendulumSolution {
    GridVector amplitude;
    IterationTrace trace;
    double ode_residual = 0.0;
};

/// End-to-end pendulum solve: assemble the Hammerstein reduction, run the
/// coupled iteration at p = 2 on the weighted grid, recover the amplitude
/// v = g - u, and report the discrete ODE residual
/// max_i |v''_i + a^2 sin(v_i) - z(t_i)| over interior nodes. An empty
/// cfg.u1 means "start at zero on the grid"; v1 defaults to F(u1) as usual.
inline PendulumSolution solve_pendulum(const PendulumProblem& prob, const SolveConfig& cfg) {
    if (cfg.pair.p != 2.0)
        throw ConfigError("pendulum solves run in the weighted-l2 setting (p = 2)");

    const DiscretizedHammerstein d = assemble_hammerstein(prob);

    SolveConfig run = cfg;
    if (run.u1.empty()) {
        run.u1 = GridVector(std::vector<double>(d.grid.size(), 0.0), d.weights);
    } else {
        if (run.u1.size() != d.grid.size())
            throw DimensionError("starting iterate does not match the pendulum grid");
        if (run.u1.weights != d.weights)
            throw DimensionError("starting iterate carries foreign quadrature weights");
    }

    PendulumSolution out;
    out.trace = solve_hammerstein(d.f_op, d.k_op, run);
    out.amplitude = d.g_vec - out.trace.final_u;

    const double h = d.grid[1] - d.grid[0];
    double max_res = 0.0;
    for (std::size_t i = 1; i + 1 < d.grid.size(); ++i) {
        const double second = (out.amplitude.coords[i - 1] - 2.0 * out.amplitude.coords[i] +
                               out.amplitude.coords[i + 1]) /
                              (h * h);
        const double lhs = second + prob.amplitude_a * prob.amplitude_a *
                                        std::sin(out.amplitude.coords[i]);
        max_res = std::max(max_res, std::abs(lhs - prob.forcing_z(d.grid[i])));
    }
    out.ode_residual = max_res;
    return out;
}

} // namespace hammerstein
