#pragma once

#include <stdexcept>
#include <string>

namespace hammerstein {

/// Base of the library's exception hierarchy. Everything thrown on purpose
/// derives from this, so callers can catch one type at the API boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix size mismatch, empty operand, or operands living on
/// different grids (weight vectors disagree).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid norm exponent: p <= 1, or a (p, q) pair that is not conjugate.
class ExponentError : public Error {
public:
    using Error::Error;
};

/// A requested configuration the library deliberately does not support,
/// e.g. weighted duality maps away from p = 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Step-size or regularization schedule with out-of-domain parameters.
class ScheduleError : public Error {
public:
    using Error::Error;
};

/// The direct linear solve met a singular (or numerically singular) system,
/// so the solution is not unique.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

} // namespace hammerstein
