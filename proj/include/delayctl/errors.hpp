#pragma once

#include <stdexcept>
#include <string>

namespace delayctl {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible or non-square matrix dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Bad argument values: negative weights, gamma out of range, degenerate grids.
struct ValidationError : Error {
    using Error::Error;
};

// Numerical breakdown: iteration failure, singular systems, residual violations.
struct NumericError : Error {
    using Error::Error;
};

// History does not span the window an operation needs.
struct HistoryError : Error {
    using Error::Error;
};

// A model assumption (stabilizability, spanning tree, mu bound) is violated.
struct AssumptionError : Error {
    using Error::Error;
};

// File ingestion problems.
struct IoError : Error {
    using Error::Error;
};

}  // namespace delayctl
