#pragma once

#include <string>
#include <vector>

#include "dcsched/types.hpp"

namespace dcsched {

struct Dims {
    int K = 0, C = 0, T = 0, D = 0;
};

/// One (execution hour, cluster) cell.
struct TdCell {
    int t = 0;
    int d = 0;
    bool operator==(const TdCell&) const = default;
};

/// Flat 1-based index r = K(c-1) + k + KC(t-1) + KCT(d-1).
/// Bijective over the index box; throws ConfigError on out-of-range input.
long flatten_index(int k, int c, int t, int d, const Dims& dims);

/// Inverse of flatten_index.
void unflatten_index(long r, const Dims& dims, int& k, int& c, int& t, int& d);

/// Cells (t,d) with k <= t <= k + h_c and d in D_c; sorted by t, then d.
/// Entries of Y outside these cells are structurally zero.
std::vector<TdCell> feasible_cells(const FlexClass& fc, int k, const ProblemConfig& config);

/// L_{t,d} = sum_{c,k} Y_{k,c,t,d} * s_{k,c}.
ClusterGrid aggregate_load(const ScheduleTensor& Y, const LoadGrid& s);

/// F(y,v,s) = max_{t,d} (aggregate_load(Y,s)_{t,d} - v_{t,d}).
double excess(const ScheduleTensor& Y, const ClusterGrid& v, const LoadGrid& s);

/// f(v) = sum_{t,d} carbon_{t,d} v_{t,d} + sum_d infra_d * max_t v_{t,d}.
/// Rejects negative entries.
double plan_cost(const ClusterGrid& v, const ProblemConfig& config);

struct CoverageViolation {
    int k = 0, c = 0;
    double coverage = 0.0; // sum of fractions, should be >= 1
};

struct StructuralZeroViolation {
    int k = 0, c = 0, t = 0, d = 0;
    double value = 0.0; // nonzero entry outside the feasible window
};

struct VccBoundViolation {
    int t = 0, d = 0;
    double value = 0.0;
    double bound = 0.0; // violated bound (0 below, v̄ above)
};

/// Deterministic feasibility report for a strategy (Y, v).
struct StrategyReport {
    std::vector<CoverageViolation> coverage;
    std::vector<StructuralZeroViolation> structural;
    std::vector<VccBoundViolation> vcc_bounds;

    bool empty() const {
        return coverage.empty() && structural.empty() && vcc_bounds.empty();
    }
    std::string summary() const;
};

/// Checks coverage >= 1 per (k,c) (tolerance 1e-8), exact zeros outside the
/// feasible cells, and 0 <= v <= v̄. An empty report means deterministically
/// feasible.
StrategyReport validate_strategy(const ScheduleTensor& Y, const ClusterGrid& v,
                                 const ProblemConfig& config);

} // namespace dcsched
