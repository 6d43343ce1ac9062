#pragma once

#include <string>
#include <vector>

#include "dcsched/lp_model.hpp"

namespace dcsched {

enum class SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalFailure,
};

std::string to_string(SolveStatus status);

struct SolverOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    long max_iterations = 0; // 0 = scale with model size
    int refactor_interval = 64;
};

struct SolveResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> x; // structural values, populated only when Optimal
    double objective = 0.0;
    long iterations = 0;
};

/// Bounded-variable revised primal simplex. Basis factorization uses Eigen
/// SparseLU with product-form eta updates between refactorizations; phase 1
/// minimizes the composite infeasibility of the slack basis.
SolveResult simplex_solve(const LpModel& model, const SolverOptions& options = {});

} // namespace dcsched
