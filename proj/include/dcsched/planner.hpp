#pragma once

#include <string>
#include <vector>

#include "dcsched/core_model.hpp"
#include "dcsched/lp_model.hpp"
#include "dcsched/risk.hpp"
#include "dcsched/solver.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

/// Model tiers trading fidelity for size. Full keeps the support polyhedron
/// in the dual-norm and positive-part rows; Reduced swaps the support for the
/// cheaper total-load form; Conservative drops the support multipliers
/// (eta = 0), a restriction whose optimum upper-bounds the full tier.
enum class Tier { Full, Reduced, Conservative };

std::string to_string(Tier tier);
Tier tier_from_string(const std::string& name);

enum class PlanKind { Dro, Saa, PerfectForecast };

std::string to_string(PlanKind kind);

struct PlannerOptions {
    Tier tier = Tier::Full;
    SolverOptions solver;
};

/// Variable layout of a built day-ahead model; kept alongside the LpModel so
/// solutions can be mapped back to tensors and certificates re-checked.
struct DayAheadModel {
    LpModel lp;
    Dims dims;
    int num_samples = 0;
    Tier tier = Tier::Full;
    double beta = 0.0;
    double epsilon = 0.0;

    // y variables, grouped per (k,c) in feasible_cells order.
    std::vector<std::vector<int>> y_vars;    // slot (c-1)*K + (k-1)
    std::vector<std::vector<TdCell>> y_cells;
    int v_start = -1;     // v_{t,d} at v_start + (t-1) + T*(d-1)
    int q_var = -1;
    int lambda_var = -1;
    int p_start = -1;     // p^i at p_start + i
    int eta_start = -1;   // eta_{i,td,g}: eta_start + (i*Tf + td_pos)*g + row
    int eta_rows = 0;     // g (support rows); 0 in the conservative tier
    int peak_start = -1;  // pi_d at peak_start + (d-1)

    std::vector<TdCell> reachable; // (t,d) pairs served by at least one class

    int y_slot(int k, int c) const { return (c - 1) * dims.K + (k - 1); }
    int v_var(int t, int d) const { return v_start + (t - 1) + dims.T * (d - 1); }
};

/// Solved day-ahead plan: strategy, VCCs, objective and the LP certificate.
struct Plan {
    ScheduleTensor schedule;
    ClusterGrid vcc;
    double objective = 0.0;

    double q = 0.0;
    double lambda = 0.0;
    std::vector<double> p;
    std::vector<double> eta; // layout per DayAheadModel::eta_start

    PlanKind kind = PlanKind::Dro;
    Tier tier = Tier::Full;
    double beta = 0.0;
    double epsilon = 0.0;
    int num_samples = 0;
    SolveStatus solver_status = SolveStatus::NumericalFailure;
    long iterations = 0;
    double solve_seconds = 0.0;
    double cvar_certificate = 0.0; // empirical CVaR of per-sample excess
};

/// Emits the LP of the distributionally robust day-ahead problem for the
/// requested tier. Preconditions: nonempty samples matching the config grid,
/// every sample inside the support set, beta in (0,1], epsilon >= 0.
DayAheadModel build_dro_lp(const ProblemConfig& config, const SampleSet& samples,
                           const SupportSet& support, Tier tier = Tier::Full);

/// Solves the day-ahead problem and assembles a certified Plan.
Plan plan_day_ahead(const ProblemConfig& config, const SampleSet& samples,
                    const SupportSet& support, const PlannerOptions& options = {});

/// Sample average approximation: identical model with epsilon forced to 0.
Plan plan_saa(const ProblemConfig& config, const SampleSet& samples,
              const SupportSet& support, const PlannerOptions& options = {});

/// Deterministic oracle with full knowledge of one scenario: minimizes f(v)
/// subject to coverage, the feasibility windows, VCC bounds and
/// aggregate_load(Y, scenario) <= v.
Plan plan_perfect_forecast(const ProblemConfig& config, const LoadGrid& scenario,
                           const SolverOptions& options = {});

/// Independent re-check of a plan: every row of the rebuilt model at the
/// plan's values (residual <= 1e-6), variable bounds, the empirical-CVaR
/// certificate and validate_strategy. Empty report means certified.
struct VerificationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

VerificationReport verify_certificate(const Plan& plan, const SampleSet& samples,
                                      const SupportSet& support,
                                      const ProblemConfig& config);

} // namespace dcsched
