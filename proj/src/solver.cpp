#include "dcsched/solver.hpp"

#include <cmath>
#include <cstdlib>

namespace dcsched {

LpSolution solve_lp(const LpModel& model, const SolverOptions& options) {
    const char* backend = std::getenv("DCSCHED_SOLVER");
    if (backend && std::string(backend) != "simplex")
        throw SolverError("unknown solver backend '" + std::string(backend) +
                          "' (available: simplex)");

    SolveResult raw = simplex_solve(model, options);
    LpSolution solution;
    solution.status = raw.status;
    solution.iterations = raw.iterations;
    if (raw.status != SolveStatus::Optimal) return solution;

    // Independent primal feasibility check against the model itself.
    double max_residual = 0.0;
    for (const LpRow& row : model.rows())
        max_residual = std::max(max_residual, model.row_violation(row, raw.x));
    for (int j = 0; j < model.num_vars(); ++j) {
        max_residual = std::max(max_residual, model.lower()[j] - raw.x[j]);
        max_residual = std::max(max_residual, raw.x[j] - model.upper()[j]);
    }
    solution.max_residual = max_residual;
    if (max_residual > kResidualTol) {
        solution.status = SolveStatus::NumericalFailure;
        return solution;
    }
    solution.x = std::move(raw.x);
    solution.objective = model.objective_value(solution.x);
    return solution;
}

} // namespace dcsched
