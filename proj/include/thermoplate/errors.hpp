#pragma once

#include <stdexcept>
#include <string>

namespace thermoplate {

/// Bad argument passed to a public operation (wrong size, out of range, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Triangle list is not a manifold triangulation.
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero pivot or failed factorization of a sparse matrix.
class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A linear solve missed its residual target or produced non-finite values.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 3D material constants violate lambda0 + mu > 0 or positivity.
class MaterialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a1*a2 - gamma^2 <= 0.
class CouplingConditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Derivative of a singular exact solution requested at the singular point.
class ExcludedPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or unknown entry in a run configuration file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thermoplate
