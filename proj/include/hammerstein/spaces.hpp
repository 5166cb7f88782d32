#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hammerstein/errors.hpp"

namespace hammerstein {

/// Conjugate exponent pair (p, q) with 1/p + 1/q = 1, both > 1.
/// Every norm, gauge, and duality map in the library is parameterized by one
/// of these. Construct through the checked constructor or `of`.
struct ConjugatePair {
    double p;
    double q;

    ConjugatePair(double p_, double q_) : p(p_), q(q_) {
        if (!(p > 1.0) || !(q > 1.0))
            throw ExponentError("conjugate exponents must both exceed 1, got p=" +
                                std::to_string(p) + ", q=" + std::to_string(q));
        if (std::abs(1.0 / p + 1.0 / q - 1.0) >= 1e-12)
            throw ExponentError("exponents are not conjugate: 1/p + 1/q != 1 for p=" +
                                std::to_string(p) + ", q=" + std::to_string(q));
    }

    /// The pair (p, p/(p-1)).
    static ConjugatePair of(double p) {
        if (!(p > 1.0))
            throw ExponentError("norm exponent must exceed 1, got p=" + std::to_string(p));
        return ConjugatePair(p, p / (p - 1.0));
    }
};

/// A vector with quadrature weights: coordinates x_i plus positive weights
/// w_i. Unit weights give plain finite-dimensional l^p; trapezoid weights on a
/// grid emulate L^p[0,1]. Default construction yields the empty sentinel used
/// for "not provided" optional slots; every math operation rejects it.
struct GridVector {
    std::vector<double> coords;
    std::vector<double> weights;

    GridVector() = default;

    explicit GridVector(std::vector<double> c)
        : coords(std::move(c)), weights(coords.size(), 1.0) {
        if (coords.empty()) throw DimensionError("grid vector must have length >= 1");
    }

    GridVector(std::vector<double> c, std::vector<double> w)
        : coords(std::move(c)), weights(std::move(w)) {
        if (coords.empty()) throw DimensionError("grid vector must have length >= 1");
        if (coords.size() != weights.size())
            throw DimensionError("coords and weights lengths differ: " +
                                 std::to_string(coords.size()) + " vs " +
                                 std::to_string(weights.size()));
        for (double wi : weights)
            if (!(wi > 0.0)) throw ConfigError("quadrature weights must be positive");
    }

    std::size_t size() const { return coords.size(); }
    bool empty() const { return coords.empty(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }

    /// Zero vector on the same grid (same weights).
    static GridVector zeros_like(const GridVector& ref) {
        GridVector out = ref;
        for (auto& c : out.coords) c = 0.0;
        return out;
    }
};

inline bool has_unit_weights(const GridVector& x) {
    for (double w : x.weights)
        if (w != 1.0) return false;
    return true;
}

inline bool all_finite(const GridVector& x) {
    for (double c : x.coords)
        if (!std::isfinite(c)) return false;
    return true;
}

/// Both operands must live on the same weighted grid. Weight equality is
/// exact: iterates always inherit weights by copy from one configuration, so
/// any mismatch is a real wiring bug, not float noise.
inline void require_same_space(const GridVector& a, const GridVector& b) {
    if (a.empty() || b.empty())
        throw DimensionError("operation on empty grid vector");
    if (a.size() != b.size())
        throw DimensionError("grid size mismatch: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    if (a.weights != b.weights)
        throw DimensionError("operands carry different quadrature weights");
}

inline GridVector operator+(const GridVector& a, const GridVector& b) {
    require_same_space(a, b);
    GridVector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

inline GridVector operator-(const GridVector& a, const GridVector& b) {
    require_same_space(a, b);
    GridVector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.coords[i] -= b.coords[i];
    return out;
}

inline GridVector operator*(double c, const GridVector& x) {
    GridVector out = x;
    for (auto& v : out.coords) v *= c;
    return out;
}

inline double sup_norm(const GridVector& x) {
    double m = 0.0;
    for (double c : x.coords) m = std::max(m, std::abs(c));
    return m;
}

/// Weighted gauge norm (sum_i w_i |x_i|^e)^{1/e} for any exponent e > 1.
inline double gauge_norm(const GridVector& x, double e) {
    if (x.empty()) throw DimensionError("norm of empty grid vector");
    double s = 0.0;
    if (e == 2.0) {
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x.weights[i] * x.coords[i] * x.coords[i];
        return std::sqrt(s);
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x.weights[i] * std::pow(std::abs(x.coords[i]), e);
    return std::pow(s, 1.0 / e);
}

/// Primal norm ||x||_p.
inline double norm_p(const GridVector& x, const ConjugatePair& pair) {
    return gauge_norm(x, pair.p);
}

/// Dual-space norm ||f||_q, used for elements of E*.
inline double norm_dual(const GridVector& f, const ConjugatePair& pair) {
    return gauge_norm(f, pair.q);
}

/// Duality pairing <x, f> = sum_i w_i x_i f_i under the shared grid weights.
inline double pairing(const GridVector& x, const GridVector& f) {
    require_same_space(x, f);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x.weights[i] * x.coords[i] * f.coords[i];
    return s;
}

/// Generalized duality map J^E with gauge t^{p-1}: componentwise
/// |x_i|^{p-2} x_i, with J(0) = 0 (the gauge's own limit at the origin).
/// At p = 2 the normalized duality map is the identity and the input is
/// returned unchanged, which also makes the weighted-l2 case exact; weighted
/// grids with p != 2 are rejected (general weighted-L^p duality maps are out
/// of scope).
inline GridVector duality_map(const GridVector& x, const ConjugatePair& pair) {
    if (x.empty()) throw DimensionError("duality map of empty grid vector");
    if (pair.p == 2.0) return x;
    if (!has_unit_weights(x))
        throw ConfigError("weighted duality maps are supported only at p = 2");
    GridVector out = x;
    const double e = pair.p - 2.0;
    for (auto& c : out.coords)
        c = (c == 0.0) ? 0.0 : std::pow(std::abs(c), e) * c;
    return out;
}

/// Inverse duality map J^{E*}: same gauge construction with q in place of p.
/// (p-1)(q-1) = 1 makes it the exact inverse of duality_map.
inline GridVector inverse_duality_map(const GridVector& f, const ConjugatePair& pair) {
    if (f.empty()) throw DimensionError("duality map of empty grid vector");
    if (pair.p == 2.0) return f;
    if (!has_unit_weights(f))
        throw ConfigError("weighted duality maps are supported only at p = 2");
    GridVector out = f;
    const double e = pair.q - 2.0;
    for (auto& c : out.coords)
        c = (c == 0.0) ? 0.0 : std::pow(std::abs(c), e) * c;
    return out;
}

/// Element of the product space X = E x E*: first is the primal iterate u,
/// second the dual iterate v. Both halves share one quadrature grid.
struct ProductVector {
    GridVector first;
    GridVector second;

    ProductVector() = default;

    ProductVector(GridVector f, GridVector s)
        : first(std::move(f)), second(std::move(s)) {
        if (first.empty() || second.empty())
            throw DimensionError("product vector halves must be nonempty");
        if (first.weights != second.weights)
            throw DimensionError("product vector halves carry different weights");
    }
};

inline ProductVector operator+(const ProductVector& a, const ProductVector& b) {
    return ProductVector(a.first + b.first, a.second + b.second);
}

inline ProductVector operator-(const ProductVector& a, const ProductVector& b) {
    return ProductVector(a.first - b.first, a.second - b.second);
}

inline ProductVector operator*(double c, const ProductVector& z) {
    return ProductVector(c * z.first, c * z.second);
}

/// Product norm (||u||^p + ||v||^p)^{1/p}; both halves use the gauge p.
inline double product_norm(const ProductVector& z, const ConjugatePair& pair) {
    const double a = norm_p(z.first, pair);
    const double b = norm_p(z.second, pair);
    if (pair.p == 2.0) return std::sqrt(a * a + b * b);
    return std::pow(std::pow(a, pair.p) + std::pow(b, pair.p), 1.0 / pair.p);
}

/// Product duality map J^X: componentwise duality map on each half.
inline ProductVector product_duality(const ProductVector& z, const ConjugatePair& pair) {
    return ProductVector(duality_map(z.first, pair), duality_map(z.second, pair));
}

/// Pairing on the product space: the sum of the halves' pairings.
inline double product_pairing(const ProductVector& z, const ProductVector& w) {
    return pairing(z.first, w.first) + pairing(z.second, w.second);
}

} // namespace hammerstein
