#pragma once

#include <vector>

#include "dcsched/planner.hpp"
#include "dcsched/risk.hpp"

namespace dcsched {

struct CalibrationRow {
    double epsilon = 0.0;
    double violation_rate = 0.0; // fraction of holdout samples with positive excess
    double objective = 0.0;
};

struct CalibrationResult {
    double epsilon = 0.0;
    bool qualified = false; // false when no grid point met the target rate
    std::vector<CalibrationRow> rows;
};

/// Cross-validation of the ambiguity radius: plans on the training set for
/// each epsilon in the ascending grid, measures the holdout violation rate of
/// the resulting strategy, and returns the smallest epsilon meeting the
/// target (or the largest grid value, flagged unqualified). Planner
/// infeasibility propagates with the offending epsilon named.
CalibrationResult calibrate_radius(const SampleSet& train, const SampleSet& holdout,
                                   const std::vector<double>& grid,
                                   double target_violation_rate,
                                   const ProblemConfig& config,
                                   const SupportSet& support,
                                   const PlannerOptions& options = {});

} // namespace dcsched
