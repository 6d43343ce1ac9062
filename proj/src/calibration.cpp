#include "dcsched/calibration.hpp"

#include <algorithm>
#include <cmath>

namespace dcsched {

CalibrationResult calibrate_radius(const SampleSet& train, const SampleSet& holdout,
                                   const std::vector<double>& grid,
                                   double target_violation_rate,
                                   const ProblemConfig& config, const SupportSet& support,
                                   const PlannerOptions& options) {
    if (grid.empty()) throw ConfigError("calibrate_radius: empty epsilon grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ConfigError("calibrate_radius: grid must be sorted ascending");
    if (grid.front() < 0.0) throw ConfigError("calibrate_radius: negative epsilon");
    if (!(target_violation_rate >= 0.0 && target_violation_rate <= 1.0))
        throw ConfigError("calibrate_radius: target rate must lie in [0, 1]");
    if (holdout.count() == 0) throw ConfigError("calibrate_radius: empty holdout");

    constexpr double kExcessTol = 1e-9;
    CalibrationResult result;
    result.epsilon = grid.back();
    result.qualified = false;

    bool chosen = false;
    for (double eps : grid) {
        ProblemConfig cfg = config;
        cfg.epsilon = eps;
        Plan plan;
        try {
            plan = plan_day_ahead(cfg, train, support, options);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError("calibrate_radius: planner infeasible at epsilon=" +
                                  std::to_string(eps) + ": " + e.what());
        }
        int violations = 0;
        for (const LoadGrid& s : holdout.samples)
            if (excess(plan.schedule, plan.vcc, s) > kExcessTol) ++violations;
        const double rate = static_cast<double>(violations) / holdout.count();
        result.rows.push_back({eps, rate, plan.objective});
        if (!chosen && rate <= target_violation_rate) {
            result.epsilon = eps;
            result.qualified = true;
            chosen = true;
        }
    }
    return result;
}

} // namespace dcsched
