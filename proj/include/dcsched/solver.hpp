#pragma once

#include <string>
#include <vector>

#include "dcsched/lp_model.hpp"
#include "dcsched/simplex.hpp"

namespace dcsched {

struct LpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> x;
    double objective = 0.0;
    long iterations = 0;
    double max_residual = 0.0; // largest row violation, verified by the adapter
};

/// Solver adapter. Dispatches to the backend selected by the DCSCHED_SOLVER
/// environment variable (only "simplex" is built in) and, on an optimal
/// status, re-checks every row and bound of the model against the returned
/// values independently of the backend. Residuals above 1e-6 absolute turn
/// the result into NumericalFailure.
LpSolution solve_lp(const LpModel& model, const SolverOptions& options = {});

/// Residual threshold enforced by the adapter.
constexpr double kResidualTol = 1e-6;

} // namespace dcsched
