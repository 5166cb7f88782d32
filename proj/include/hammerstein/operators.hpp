#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hammerstein/spaces.hpp"

namespace hammerstein {

/// Anything evaluable on a GridVector with a known square dimension.
template <class Op>
concept GridOperator = requires(const Op& op, const GridVector& x) {
    { op(x) } -> std::convertible_to<GridVector>;
    { op.size() } -> std::convertible_to<std::size_t>;
};

/// Dense linear operator. `claimed_eta`/`claimed_p` carry an asserted strong
/// monotonicity constant when one is known (the 2-D experiment's matrices
/// ship with eta = 7 and eta = 3); they are bookkeeping, never trusted by the
/// estimators.
struct MatrixOperator {
    Eigen::MatrixXd entries;
    std::optional<double> claimed_eta;
    std::optional<double> claimed_p;

    explicit MatrixOperator(Eigen::MatrixXd m,
                            std::optional<double> eta = std::nullopt,
                            std::optional<double> p = std::nullopt)
        : entries(std::move(m)), claimed_eta(eta), claimed_p(p) {
        if (entries.rows() != entries.cols())
            throw DimensionError("matrix operator must be square");
        if (entries.rows() == 0)
            throw DimensionError("matrix operator must be nonempty");
    }

    static MatrixOperator from_rows(const std::vector<std::vector<double>>& rows,
                                    std::optional<double> eta = std::nullopt,
                                    std::optional<double> p = std::nullopt) {
        const auto n = rows.size();
        Eigen::MatrixXd m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw DimensionError("matrix rows must form a square");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        return MatrixOperator(std::move(m), eta, p);
    }

    static MatrixOperator identity(std::size_t n) {
        return MatrixOperator(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                        static_cast<Eigen::Index>(n)));
    }

    std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }

    GridVector operator()(const GridVector& x) const {
        if (x.size() != size())
            throw DimensionError("matrix operator applied to vector of size " +
                                 std::to_string(x.size()) + ", expected " +
                                 std::to_string(size()));
        GridVector out = x;
        Eigen::Map<const Eigen::VectorXd> in(x.coords.data(),
                                             static_cast<Eigen::Index>(x.size()));
        Eigen::Map<Eigen::VectorXd>(out.coords.data(), static_cast<Eigen::Index>(out.size())) =
            entries * in;
        return out;
    }
};

/// Superposition operator u |-> a^2 sin(u_i - g_i) acting componentwise on
/// the grid; g is the particular solution the Hammerstein reduction shifts
/// the pendulum amplitude by.
struct NemytskiiOperator {
    double amplitude_a;
    GridVector offset_g;

    NemytskiiOperator(double a, GridVector g) : amplitude_a(a), offset_g(std::move(g)) {
        if (offset_g.empty()) throw DimensionError("Nemytskii offset must be nonempty");
    }

    std::size_t size() const { return offset_g.size(); }

    GridVector operator()(const GridVector& x) const {
        if (x.size() != size())
            throw DimensionError("Nemytskii operator applied to vector of size " +
                                 std::to_string(x.size()) + ", expected " +
                                 std::to_string(size()));
        GridVector out = x;
        const double a2 = amplitude_a * amplitude_a;
        for (std::size_t i = 0; i < out.size(); ++i)
            out.coords[i] = a2 * std::sin(x.coords[i] - offset_g.coords[i]);
        return out;
    }
};

/// Nystrom-discretized integral operator (Kv)_i = sum_j w_j k(t_i, x_j) v_j.
struct IntegralOperator {
    Eigen::MatrixXd kernel_matrix;
    std::vector<double> quadrature;

    IntegralOperator(Eigen::MatrixXd kernel, std::vector<double> weights)
        : kernel_matrix(std::move(kernel)), quadrature(std::move(weights)) {
        if (kernel_matrix.cols() != static_cast<Eigen::Index>(quadrature.size()))
            throw DimensionError("kernel columns must match quadrature weights length");
        if (kernel_matrix.rows() == 0) throw DimensionError("empty integral operator");
    }

    std::size_t size() const { return static_cast<std::size_t>(kernel_matrix.rows()); }

    GridVector operator()(const GridVector& v) const {
        if (v.size() != quadrature.size())
            throw DimensionError("integral operator applied to vector of size " +
                                 std::to_string(v.size()) + ", expected " +
                                 std::to_string(quadrature.size()));
        GridVector out = v;
        for (std::size_t i = 0; i < out.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j)
                s += quadrature[j] * kernel_matrix(static_cast<Eigen::Index>(i),
                                                   static_cast<Eigen::Index>(j)) *
                     v.coords[j];
            out.coords[i] = s;
        }
        return out;
    }
};

/// Uniform evaluation entry point, for symmetry with the free functions.
template <GridOperator Op>
GridVector apply(const Op& op, const GridVector& x) {
    return op(x);
}

/// The coupled operator A(u, v) = (F u - v, K v + u) on X = E x E*.
/// F maps E into E*, K maps E* into E; the skew cross terms are what make A
/// strongly monotone with constant min(eta_F, eta_K).
template <class FOp, class KOp>
struct ProductOperator {
    FOp f_op;
    KOp k_op;
};

template <class FOp, class KOp>
ProductOperator(FOp, KOp) -> ProductOperator<FOp, KOp>;

template <GridOperator FOp, GridOperator KOp>
ProductVector apply_product(const ProductOperator<FOp, KOp>& A, const ProductVector& z) {
    if (A.f_op.size() != A.k_op.size())
        throw DimensionError("product operator components act on different dimensions");
    return ProductVector(A.f_op(z.first) - z.second, A.k_op(z.second) + z.first);
}

namespace detail {

inline GridVector random_box_vector(std::mt19937_64& rng, std::size_t dim,
                                    double halfwidth, const std::vector<double>& weights) {
    std::uniform_real_distribution<double> unif(-halfwidth, halfwidth);
    std::vector<double> c(dim);
    for (auto& ci : c) ci = unif(rng);
    if (weights.empty()) return GridVector(std::move(c));
    return GridVector(std::move(c), weights);
}

} // namespace detail

/// Empirical strong-monotonicity constant: the minimum over seeded sample
/// pairs of <x - y, op(x) - op(y)> / ||x - y||_p^p, drawn uniformly from the
/// box [-halfwidth, halfwidth]^n (optionally on a weighted grid). The value
/// may be negative: a negative result is evidence of a monotonicity
/// violation inside the box, which callers are expected to surface, not
/// clamp. For a linear operator at p = 2 the exact constant is the minimum
/// eigenvalue of the symmetric part, so the estimate converges to that from
/// above as samples grow.
template <GridOperator Op>
double estimate_monotonicity_constant(const Op& op, const ConjugatePair& pair,
                                      std::size_t samples, std::uint64_t seed,
                                      double box_halfwidth = 1.0,
                                      const std::vector<double>& weights = {}) {
    if (samples < 2) throw ConfigError("monotonicity estimation needs at least 2 samples");
    std::mt19937_64 rng(seed);
    const std::size_t dim = op.size();
    double eta = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        GridVector x = detail::random_box_vector(rng, dim, box_halfwidth, weights);
        GridVector y = detail::random_box_vector(rng, dim, box_halfwidth, weights);
        double dist = norm_p(x - y, pair);
        // Coincident draws would divide by zero; redraw y (measure-zero event).
        while (dist < 1e-12) {
            y = detail::random_box_vector(rng, dim, box_halfwidth, weights);
            dist = norm_p(x - y, pair);
        }
        const double quotient =
            pairing(x - y, op(x) - op(y)) / std::pow(dist, pair.p);
        eta = std::min(eta, quotient);
    }
    return eta;
}

/// Minimum eigenvalue of (M + M^T)/2: the exact p = 2 strong-monotonicity
/// constant of a linear operator, used as the estimator's oracle.
inline double symmetric_part_min_eig(const MatrixOperator& op) {
    const Eigen::MatrixXd sym = 0.5 * (op.entries + op.entries.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    return solver.eigenvalues().minCoeff();
}

/// Outcome of sampling the product operator's monotonicity: the measured
/// constant against the min(eta1, eta2) the theory predicts.
struct ProductMonotonicityReport {
    double eta_hat = 0.0;
    double eta_expected = 0.0;
};

/// Samples <z1 - z2, A z1 - A z2> / ||z1 - z2||_X^p over seeded product
/// pairs and reports the minimum next to the predicted min(eta1, eta2).
template <GridOperator FOp, GridOperator KOp>
ProductMonotonicityReport verify_product_monotonicity(const ProductOperator<FOp, KOp>& A,
                                                      const ConjugatePair& pair,
                                                      std::size_t samples,
                                                      std::uint64_t seed, double eta1,
                                                      double eta2) {
    if (samples < 2) throw ConfigError("monotonicity verification needs at least 2 samples");
    std::mt19937_64 rng(seed);
    const std::size_t dim = A.f_op.size();
    double eta = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        const ProductVector z1(detail::random_box_vector(rng, dim, 1.0, {}),
                               detail::random_box_vector(rng, dim, 1.0, {}));
        ProductVector z2(detail::random_box_vector(rng, dim, 1.0, {}),
                         detail::random_box_vector(rng, dim, 1.0, {}));
        ProductVector dz = z1 - z2;
        double dist = product_norm(dz, pair);
        while (dist < 1e-12) {
            z2 = ProductVector(detail::random_box_vector(rng, dim, 1.0, {}),
                               detail::random_box_vector(rng, dim, 1.0, {}));
            dz = z1 - z2;
            dist = product_norm(dz, pair);
        }
        const double quotient =
            product_pairing(dz, apply_product(A, z1) - apply_product(A, z2)) /
            std::pow(dist, pair.p);
        eta = std::min(eta, quotient);
    }
    return ProductMonotonicityReport{eta, std::min(eta1, eta2)};
}

} // namespace hammerstein
