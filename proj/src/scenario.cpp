#include "dcsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dcsched {

namespace {

// splitmix64: stable derivation of per-sample substreams from (seed, index).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in (0,1); avoids an exact zero for the Box-Muller logarithm.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Explicit Box-Muller keeps the stream independent of the standard library's
// normal_distribution implementation.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

void GeneratorSpec::validate() const {
    if (submission_hours < 1) throw ConfigError("generator: submission_hours must be >= 1");
    if (classes.empty()) throw ConfigError("generator: at least one class shape required");
    for (size_t c = 0; c < classes.size(); ++c) {
        const ClassShape& shape = classes[c];
        const std::string tag = "generator class " + std::to_string(c + 1);
        if (shape.amplitude < 0.0) throw ConfigError(tag + ": amplitude must be >= 0");
        if (shape.base < shape.amplitude)
            throw ConfigError(tag + ": base must be >= amplitude for nonnegative shapes");
        if (shape.noise_scale < 0.0) throw ConfigError(tag + ": noise_scale must be >= 0");
        if (shape.daily_volume < 0.0) throw ConfigError(tag + ": daily_volume must be >= 0");
        if (shape.jobs_per_hour < 1) throw ConfigError(tag + ": jobs_per_hour must be >= 1");
    }
}

SampleSet generate_load_samples(const GeneratorSpec& spec, int N) {
    spec.validate();
    if (N < 1) throw ConfigError("generate_load_samples: N must be >= 1");
    const int K = spec.submission_hours;
    const int C = spec.num_classes();

    SampleSet set;
    set.samples.reserve(N);
    for (int i = 0; i < N; ++i) {
        std::mt19937_64 rng(mix64(spec.seed ^ mix64(static_cast<std::uint64_t>(i) + 1)));
        LoadGrid s(K, C);
        for (int c = 1; c <= C; ++c) {
            const ClassShape& shape = spec.classes[c - 1];
            for (int k = 1; k <= K; ++k) {
                const double wave =
                    shape.base +
                    shape.amplitude * std::sin(2.0 * M_PI * (k - shape.phase_hours) / K);
                // exp(sigma z - sigma^2/2) has unit mean.
                const double noise =
                    shape.noise_scale > 0.0
                        ? std::exp(shape.noise_scale * standard_normal(rng) -
                                   0.5 * shape.noise_scale * shape.noise_scale)
                        : 1.0;
                s.at(k, c) = shape.daily_volume * wave * noise;
            }
        }
        const double total = s.total();
        if (total <= 0.0)
            throw ConfigError("generate_load_samples: degenerate all-zero sample");
        for (double& v : s.flat()) v /= total;
        set.samples.push_back(std::move(s));
    }
    return set;
}

std::vector<int> uniform_counts(const LoadGrid& scenario, int jobs_per_cell) {
    if (jobs_per_cell < 1) throw ConfigError("uniform_counts: jobs_per_cell must be >= 1");
    return std::vector<int>(scenario.size(), jobs_per_cell);
}

JobStream generate_job_stream(const LoadGrid& scenario, const std::vector<int>& counts,
                              double sigma_rel, std::uint64_t seed) {
    if (counts.size() != scenario.size())
        throw ConfigError("generate_job_stream: counts grid does not match scenario");
    if (sigma_rel < 0.0) throw ConfigError("generate_job_stream: sigma_rel must be >= 0");
    const int K = scenario.hours(), C = scenario.num_classes();

    JobStream stream;
    long next_id = 1;
    std::mt19937_64 rng(mix64(seed));
    for (int k = 1; k <= K; ++k)
        for (int c = 1; c <= C; ++c) {
            const double cell = scenario.at(k, c);
            const int count = counts[scenario.index(k, c)];
            if (cell <= 0.0) continue;
            if (count < 1)
                throw ConfigError("generate_job_stream: zero count with positive load at (k=" +
                                  std::to_string(k) + ", c=" + std::to_string(c) + ")");
            const double mean = cell / count;
            std::vector<double> volumes(count);
            double total = 0.0;
            for (double& v : volumes) {
                v = std::max(mean + sigma_rel * mean * standard_normal(rng), 1e-9);
                total += v;
            }
            const double scale = cell / total;
            for (double& v : volumes) v *= scale;
            for (double v : volumes) stream.jobs.push_back({next_id++, c, k, v});
        }
    std::stable_sort(stream.jobs.begin(), stream.jobs.end(),
                     [](const Job& a, const Job& b) { return a.submit_hour < b.submit_hour; });
    return stream;
}

std::pair<ClusterGrid, std::vector<double>> generate_cost_signals(
    int horizon, int clusters, const CostSignalParams& params) {
    if (horizon < 1 || clusters < 1)
        throw ConfigError("generate_cost_signals: empty grid");
    if (!(params.base > params.amplitude) || params.amplitude < 0.0)
        throw ConfigError("generate_cost_signals: need base > amplitude >= 0 for "
                          "strictly positive prices");
    std::vector<double> phases = params.phase_hours;
    if (phases.empty()) {
        phases.resize(clusters);
        for (int d = 1; d <= clusters; ++d) phases[d - 1] = 6.0 * (d - 1);
    }
    if (static_cast<int>(phases.size()) != clusters)
        throw ConfigError("generate_cost_signals: one phase per cluster required");
    std::vector<double> infra = params.infra_price;
    if (infra.empty()) infra.assign(clusters, 0.0);
    if (static_cast<int>(infra.size()) != clusters)
        throw ConfigError("generate_cost_signals: one infra price per cluster required");
    for (double r : infra)
        if (r < 0.0) throw ConfigError("generate_cost_signals: negative infra price");

    ClusterGrid carbon(horizon, clusters);
    for (int d = 1; d <= clusters; ++d)
        for (int t = 1; t <= horizon; ++t)
            carbon.at(t, d) =
                params.base +
                params.amplitude * std::sin(2.0 * M_PI * (t - phases[d - 1]) / 24.0);
    return {carbon, infra};
}

std::pair<SampleSet, SampleSet> split_train_validation(const SampleSet& samples,
                                                       double train_fraction,
                                                       std::uint64_t seed) {
    const int N = samples.count();
    if (N < 2) throw ConfigError("split_train_validation: need at least two samples");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("split_train_validation: fraction must lie in (0, 1)");
    const int train_size = static_cast<int>(std::floor(train_fraction * N + 0.5));
    if (train_size < 1 || train_size >= N)
        throw ConfigError("split_train_validation: degenerate split sizes (" +
                          std::to_string(train_size) + ", " + std::to_string(N - train_size) +
                          ")");

    // Fisher-Yates with an explicit draw so the permutation is stable across
    // standard libraries.
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::mt19937_64 rng(mix64(seed));
    for (int i = N - 1; i > 0; --i) {
        const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }

    std::pair<SampleSet, SampleSet> split;
    for (int i = 0; i < N; ++i) {
        if (i < train_size) split.first.samples.push_back(samples.samples[order[i]]);
        else split.second.samples.push_back(samples.samples[order[i]]);
    }
    return split;
}

} // namespace dcsched
