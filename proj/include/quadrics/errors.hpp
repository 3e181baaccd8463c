#pragma once

#include <stdexcept>
#include <string>

namespace quadrics {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched dimensions between arguments (point vs. polynomial, model vs. cloud, ...).
struct DimensionError : Error {
    using Error::Error;
};

/// Malformed input file; message carries the offending location.
struct ParseError : Error {
    using Error::Error;
};

/// Invalid configuration value (bad hyperparameter, out-of-range argument).
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure: divergence, degenerate polynomial on the gradient path, infeasible oracle.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace quadrics
