#pragma once

#include <stdexcept>
#include <string>

namespace dcsched {

/// Invalid problem data or parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file; the message carries the offending row when known.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The optimization model has no feasible point; the message names the culprit.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solver backend failure, distinct from model infeasibility.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dcsched
