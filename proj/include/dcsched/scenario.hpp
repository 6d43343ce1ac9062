#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcsched/realtime.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

/// Sinusoidal daily shape with lognormal perturbation for one job class.
struct ClassShape {
    double base = 1.0;        // base >= amplitude >= 0
    double amplitude = 0.0;
    double phase_hours = 0.0;
    double noise_scale = 0.0; // lognormal sigma; 0 gives deterministic shapes
    double daily_volume = 1.0;
    int jobs_per_hour = 1;    // job count per (k,c) cell when realizing streams
};

/// Synthetic stand-in for historical cluster traces: per-class sinusoidal
/// shapes, lognormal noise, and unit-normalized daily totals.
struct GeneratorSpec {
    int submission_hours = 24;
    std::uint64_t seed = 0;
    std::vector<ClassShape> classes;

    int num_classes() const { return static_cast<int>(classes.size()); }
    void validate() const;
};

/// N samples with s^i_{k,c} = volume_c * shape_c(k) * exp(noise*z - noise^2/2),
/// normalized so each sample sums to one. Deterministic given spec.seed; the
/// per-sample substream depends only on (seed, sample index).
SampleSet generate_load_samples(const GeneratorSpec& spec, int N);

/// Splits one scenario into discrete jobs: counts[(k,c)] draws per cell with
/// volumes ~ Normal(mean, sigma_rel * mean), truncated at 1e-9 and rescaled so
/// each cell's volumes sum exactly to s_{k,c}. Stream is sorted by submit
/// hour with stable per-hour order.
JobStream generate_job_stream(const LoadGrid& scenario, const std::vector<int>& counts,
                              double sigma_rel, std::uint64_t seed);

/// Uniform job count per cell.
std::vector<int> uniform_counts(const LoadGrid& scenario, int jobs_per_cell);

struct CostSignalParams {
    double base = 1.0;
    double amplitude = 0.5;             // base > amplitude >= 0
    std::vector<double> phase_hours;    // per cluster; default 6*(d-1)
    std::vector<double> infra_price;    // per cluster; default 0
};

/// Sinusoidal carbon prices with per-cluster phase shifts plus constant
/// infrastructure prices: rho_{t,d} = base + amplitude*sin(2*pi*(t - psi_d)/24).
std::pair<ClusterGrid, std::vector<double>> generate_cost_signals(
    int horizon, int clusters, const CostSignalParams& params);

/// Deterministic shuffle split. Sizes are round-half-up(fraction*N) and the
/// remainder; both sides must be nonempty.
std::pair<SampleSet, SampleSet> split_train_validation(const SampleSet& samples,
                                                       double train_fraction,
                                                       std::uint64_t seed);

} // namespace dcsched
