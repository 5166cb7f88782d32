#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hammerstein/operators.hpp"
#include "hammerstein/schedule.hpp"
#include "hammerstein/spaces.hpp"

namespace hammerstein {

/// Which update formula to run. `generalized_banach` is the duality-map form
/// and works for any valid p; `hilbert_corollary` is the specialized p = 2
/// form with the duality maps erased. At p = 2 the two are the same
/// floating-point computation (the duality maps return their argument
/// unchanged and both forms share one step helper), so they produce
/// bit-identical iterates.
enum class StepForm { generalized_banach, hilbert_corollary };

struct SolveConfig {
    ConjugatePair pair = ConjugatePair::of(2.0);
    double tolerance = 1e-4;
    std::size_t max_iter = 1000;
    Schedule schedule;
    GridVector u1;
    std::optional<GridVector> v1;   // defaults to F(u1)
    StepForm step_form = StepForm::generalized_banach;
};

/// One recorded iteration: the pre-update iterates u_n, v_n, the increment
/// norms du = ||u_{n+1} - u_n||_p and dv = ||v_{n+1} - v_n||_q, and the
/// equation residual ||u_n + K(F(u_n))||_p.
struct IterationStep {
    std::uint64_t n = 0;
    GridVector u;
    GridVector v;
    double du_norm = 0.0;
    double dv_norm = 0.0;
    double residual = 0.0;
};

struct IterationTrace {
    std::vector<IterationStep> steps;
    bool converged = false;
    GridVector final_u;
    GridVector final_v;
};

/// Iterates blew up (non-finite entries or sup-norm beyond 1e12). Carries the
/// trace accumulated up to the failing step for post-mortem inspection.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, IterationTrace trace)
        : Error(what), partial_trace(std::move(trace)) {}

    IterationTrace partial_trace;
};

namespace detail {

/// Shared anchored update: base - lambda * (drive + theta * (base - anchor)).
/// Both step forms funnel through this one expression so that their p = 2
/// arithmetic is identical operation for operation.
inline GridVector anchored_step(const GridVector& base, const GridVector& drive,
                                const GridVector& anchor, double lambda, double theta) {
    return base - lambda * (drive + theta * (base - anchor));
}

constexpr double divergence_limit = 1e12;

inline bool blown_up(const GridVector& x) {
    return !all_finite(x) || sup_norm(x) > divergence_limit;
}

} // namespace detail

/// Residual of the Hammerstein equation at u: ||u + K(F(u))||_p.
template <GridOperator FOp, GridOperator KOp>
double residual(const FOp& f, const KOp& k, const GridVector& u, const ConjugatePair& pair) {
    return norm_p(u + k(f(u)), pair);
}

/// The coupled anchored iteration
///   u_{n+1} = J^{E*}( J^E u_n - lambda_n (F u_n - v_n + theta_n (J^E u_n - J^E u_1)) )
///   v_{n+1} = J^E ( J^{E*} v_n - lambda_n (K v_n + u_n + theta_n (J^{E*} v_n - J^{E*} v_1)) )
/// with both updates reading the step-n iterates (Jacobi ordering) and the
/// regularization anchored at the initial pair. Stops when
/// max(du, dv) < tolerance or at max_iter; records every step.
template <GridOperator FOp, GridOperator KOp>
IterationTrace solve_hammerstein(const FOp& f, const KOp& k, const SolveConfig& cfg) {
    if (cfg.u1.empty()) throw DimensionError("solve requires a nonempty starting iterate u1");
    if (!cfg.schedule.lambda_fn || !cfg.schedule.theta_fn)
        throw ConfigError("solve requires a schedule with both sequences set");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (cfg.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (f.size() != cfg.u1.size() || k.size() != cfg.u1.size())
        throw DimensionError("operator dimensions do not match the starting iterate");
    const bool hilbert = (cfg.step_form == StepForm::hilbert_corollary);
    if (hilbert && cfg.pair.p != 2.0)
        throw ConfigError("the Hilbert-form update requires p = 2");

    const GridVector& u1 = cfg.u1;
    GridVector v1 = (cfg.v1 && !cfg.v1->empty()) ? *cfg.v1 : f(u1);
    require_same_space(u1, v1);

    GridVector u = u1;
    GridVector v = v1;
    // Anchor images under the duality maps are loop constants.
    const GridVector ju1 = hilbert ? u1 : duality_map(u1, cfg.pair);
    const GridVector jv1 = hilbert ? v1 : inverse_duality_map(v1, cfg.pair);

    IterationTrace trace;
    trace.steps.reserve(std::min<std::size_t>(cfg.max_iter, 4096));

    for (std::uint64_t n = 1; n <= cfg.max_iter; ++n) {
        const double lambda = cfg.schedule.lambda(n);
        const double theta = cfg.schedule.theta(n);

        const GridVector fu = f(u);
        const GridVector kv = k(v);
        const double res = norm_p(u + k(fu), cfg.pair);

        GridVector u_next, v_next;
        if (hilbert) {
            u_next = detail::anchored_step(u, fu - v, u1, lambda, theta);
            v_next = detail::anchored_step(v, kv + u, v1, lambda, theta);
        } else {
            const GridVector ju = duality_map(u, cfg.pair);
            const GridVector jv = inverse_duality_map(v, cfg.pair);
            u_next = inverse_duality_map(
                detail::anchored_step(ju, fu - v, ju1, lambda, theta), cfg.pair);
            v_next = duality_map(
                detail::anchored_step(jv, kv + u, jv1, lambda, theta), cfg.pair);
        }

        const double du = norm_p(u_next - u, cfg.pair);
        const double dv = norm_dual(v_next - v, cfg.pair);
        trace.steps.push_back({n, u, v, du, dv, res});

        if (detail::blown_up(u_next) || detail::blown_up(v_next)) {
            trace.converged = false;
            trace.final_u = u;
            trace.final_v = v;
            throw DivergenceError(
                "iteration diverged at step " + std::to_string(n) +
                    " (non-finite iterate or sup-norm beyond 1e12)",
                std::move(trace));
        }

        u = std::move(u_next);
        v = std::move(v_next);

        if (std::max(du, dv) < cfg.tolerance) {
            trace.converged = true;
            break;
        }
    }

    trace.final_u = u;
    trace.final_v = v;
    return trace;
}

/// Direct oracle for linear instances: u + KFu = 0 has the unique solution
/// u = 0 exactly when I + K F is nonsingular. Returns the zero vector with
/// the determinant as evidence; throws if the system is singular (solution
/// set is then an affine subspace, not a point).
struct DirectSolution {
    GridVector solution;
    double determinant = 0.0;
};

inline DirectSolution direct_linear_solution(const MatrixOperator& F, const MatrixOperator& K) {
    if (F.size() != K.size())
        throw DimensionError("direct solve needs F and K of matching dimension");
    const auto n = static_cast<Eigen::Index>(F.size());
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(n, n) + K.entries * F.entries;
    // A numerically-cancelled system (K ~ -F^{-1}) leaves only rounding dust;
    // full-pivot rank checks judge pivots relative to the largest one, so a
    // matrix of uniformly tiny entries still looks full-rank. Catch it by
    // absolute scale first.
    const bool vanished = system.cwiseAbs().maxCoeff() < 1e-12;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (vanished || !lu.isInvertible())
        throw SingularSystemError(
            "I + K*F is singular: the homogeneous Hammerstein equation does not "
            "have a unique solution");
    DirectSolution out;
    out.solution = GridVector(std::vector<double>(F.size(), 0.0));
    out.determinant = lu.determinant();
    return out;
}

} // namespace hammerstein
