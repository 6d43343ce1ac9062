#include "dcsched/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcsched {

void ProblemConfig::validate() const {
    if (submission_hours < 1) throw ConfigError("config: submission_hours must be >= 1");
    if (clusters < 1) throw ConfigError("config: clusters must be >= 1");
    if (classes.empty()) throw ConfigError("config: at least one flexibility class required");
    for (const auto& fc : classes) {
        if (fc.delay_tolerance < 0)
            throw ConfigError("config: class " + std::to_string(fc.id) +
                              " has negative delay_tolerance");
        if (fc.allowed_clusters.empty())
            throw ConfigError("config: class " + std::to_string(fc.id) +
                              " has empty allowed_clusters");
        for (int d : fc.allowed_clusters)
            if (d < 1 || d > clusters)
                throw ConfigError("config: class " + std::to_string(fc.id) +
                                  " references cluster " + std::to_string(d) +
                                  " outside 1.." + std::to_string(clusters));
    }
    const int T = horizon();
    if (true_capacity.horizon() != T || true_capacity.clusters() != clusters)
        throw ConfigError("config: true_capacity grid must be " + std::to_string(T) + "x" +
                          std::to_string(clusters));
    if (carbon_price.horizon() != T || carbon_price.clusters() != clusters)
        throw ConfigError("config: carbon_price grid must be " + std::to_string(T) + "x" +
                          std::to_string(clusters));
    if (static_cast<int>(infra_price.size()) != clusters)
        throw ConfigError("config: infra_price must have one entry per cluster");
    for (double v : true_capacity.flat())
        if (v < 0.0) throw ConfigError("config: negative true capacity");
    for (double p : infra_price)
        if (p < 0.0) throw ConfigError("config: negative infra price");
    if (!(beta > 0.0 && beta <= 1.0))
        throw ConfigError("config: beta must lie in (0, 1]");
    if (epsilon < 0.0) throw ConfigError("config: epsilon must be >= 0");
}

long flatten_index(int k, int c, int t, int d, const Dims& dims) {
    if (k < 1 || k > dims.K || c < 1 || c > dims.C || t < 1 || t > dims.T || d < 1 ||
        d > dims.D) {
        std::ostringstream os;
        os << "flatten_index: (" << k << "," << c << "," << t << "," << d
           << ") outside box (" << dims.K << "," << dims.C << "," << dims.T << ","
           << dims.D << ")";
        throw ConfigError(os.str());
    }
    const long K = dims.K, C = dims.C, T = dims.T;
    return K * (c - 1) + k + K * C * (t - 1) + K * C * T * (d - 1);
}

void unflatten_index(long r, const Dims& dims, int& k, int& c, int& t, int& d) {
    const long K = dims.K, C = dims.C, T = dims.T, D = dims.D;
    if (r < 1 || r > K * C * T * D)
        throw ConfigError("unflatten_index: r = " + std::to_string(r) + " outside 1.." +
                          std::to_string(K * C * T * D));
    long z = r - 1;
    k = static_cast<int>(z % K) + 1;
    z /= K;
    c = static_cast<int>(z % C) + 1;
    z /= C;
    t = static_cast<int>(z % T) + 1;
    z /= T;
    d = static_cast<int>(z) + 1;
}

std::vector<TdCell> feasible_cells(const FlexClass& fc, int k, const ProblemConfig& config) {
    const int T = config.horizon();
    const int t_hi = std::min(k + fc.delay_tolerance, T);
    std::vector<TdCell> cells;
    cells.reserve(static_cast<size_t>(t_hi - k + 1) * fc.allowed_clusters.size());
    for (int t = k; t <= t_hi; ++t)
        for (int d : fc.allowed_clusters) cells.push_back({t, d});
    return cells;
}

ClusterGrid aggregate_load(const ScheduleTensor& Y, const LoadGrid& s) {
    if (Y.hours() != s.hours() || Y.num_classes() != s.num_classes())
        throw ConfigError("aggregate_load: schedule and sample dimensions disagree");
    ClusterGrid load(Y.horizon(), Y.clusters());
    for (int d = 1; d <= Y.clusters(); ++d)
        for (int t = 1; t <= Y.horizon(); ++t) {
            double acc = 0.0;
            for (int c = 1; c <= Y.num_classes(); ++c)
                for (int k = 1; k <= Y.hours(); ++k) acc += Y.at(k, c, t, d) * s.at(k, c);
            load.at(t, d) = acc;
        }
    return load;
}

double excess(const ScheduleTensor& Y, const ClusterGrid& v, const LoadGrid& s) {
    if (v.horizon() != Y.horizon() || v.clusters() != Y.clusters())
        throw ConfigError("excess: VCC grid and schedule dimensions disagree");
    const ClusterGrid load = aggregate_load(Y, s);
    double worst = -std::numeric_limits<double>::infinity();
    for (int d = 1; d <= v.clusters(); ++d)
        for (int t = 1; t <= v.horizon(); ++t)
            worst = std::max(worst, load.at(t, d) - v.at(t, d));
    return worst;
}

double plan_cost(const ClusterGrid& v, const ProblemConfig& config) {
    if (v.horizon() != config.horizon() || v.clusters() != config.clusters)
        throw ConfigError("plan_cost: VCC grid does not match config dimensions");
    double cost = 0.0;
    for (int d = 1; d <= v.clusters(); ++d) {
        double peak = 0.0;
        for (int t = 1; t <= v.horizon(); ++t) {
            const double x = v.at(t, d);
            if (x < 0.0) throw ConfigError("plan_cost: negative VCC entry");
            cost += config.carbon_price.at(t, d) * x;
            peak = std::max(peak, x);
        }
        cost += config.infra_price[d - 1] * peak;
    }
    return cost;
}

StrategyReport validate_strategy(const ScheduleTensor& Y, const ClusterGrid& v,
                                 const ProblemConfig& config) {
    constexpr double kCoverageTol = 1e-8;
    StrategyReport report;
    const int K = config.submission_hours, C = config.num_classes();
    const int T = config.horizon(), D = config.clusters;

    for (int c = 1; c <= C; ++c) {
        const FlexClass& fc = config.classes[c - 1];
        for (int k = 1; k <= K; ++k) {
            double coverage = 0.0;
            for (const TdCell& cell : feasible_cells(fc, k, config))
                coverage += Y.at(k, c, cell.t, cell.d);
            if (coverage < 1.0 - kCoverageTol)
                report.coverage.push_back({k, c, coverage});
            // Zero constraints: scan the complement of the window.
            for (int d = 1; d <= D; ++d) {
                const bool in_range =
                    std::find(fc.allowed_clusters.begin(), fc.allowed_clusters.end(), d) !=
                    fc.allowed_clusters.end();
                for (int t = 1; t <= T; ++t) {
                    const bool in_window = in_range && t >= k && t <= k + fc.delay_tolerance;
                    const double y = Y.at(k, c, t, d);
                    if (!in_window && y != 0.0)
                        report.structural.push_back({k, c, t, d, y});
                    else if (y < 0.0)
                        report.structural.push_back({k, c, t, d, y});
                }
            }
        }
    }

    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t) {
            const double x = v.at(t, d), cap = config.true_capacity.at(t, d);
            if (x < 0.0) report.vcc_bounds.push_back({t, d, x, 0.0});
            if (x > cap) report.vcc_bounds.push_back({t, d, x, cap});
        }
    return report;
}

std::string StrategyReport::summary() const {
    if (empty()) return "feasible";
    std::ostringstream os;
    for (const auto& cv : coverage)
        os << "coverage " << cv.coverage << " < 1 at (k=" << cv.k << ",c=" << cv.c << ")\n";
    for (const auto& sv : structural)
        os << "nonzero " << sv.value << " outside window at (k=" << sv.k << ",c=" << sv.c
           << ",t=" << sv.t << ",d=" << sv.d << ")\n";
    for (const auto& bv : vcc_bounds)
        os << "vcc " << bv.value << " violates bound " << bv.bound << " at (t=" << bv.t
           << ",d=" << bv.d << ")\n";
    return os.str();
}

} // namespace dcsched
