#include "dcsched/realtime.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace dcsched {

void JobStream::validate(const ProblemConfig& config) const {
    int prev_hour = 1;
    for (size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        if (j.volume <= 0.0)
            throw ConfigError("job " + std::to_string(j.id) + ": volume must be > 0");
        if (j.submit_hour < 1 || j.submit_hour > config.submission_hours)
            throw ConfigError("job " + std::to_string(j.id) + ": submit hour " +
                              std::to_string(j.submit_hour) + " outside 1.." +
                              std::to_string(config.submission_hours));
        if (j.job_class < 1 || j.job_class > config.num_classes())
            throw ConfigError("job " + std::to_string(j.id) + ": unknown class " +
                              std::to_string(j.job_class));
        if (j.submit_hour < prev_hour)
            throw ConfigError("job stream not sorted by submit hour at position " +
                              std::to_string(i));
        prev_hour = j.submit_hour;
    }
}

TdCell place_job(PlacementState& state, const Job& job, const ScheduleTensor& strategy,
                 const ProblemConfig& config) {
    const int k = job.submit_hour, c = job.job_class;
    const FlexClass& fc = config.classes[c - 1];
    const auto cells = feasible_cells(fc, k, config);
    if (cells.empty())
        throw ConfigError("place_job: class " + std::to_string(c) +
                          " has no feasible cells at hour " + std::to_string(k));

    const double prior = state.cum_volume.at(k, c); // volume before this job
    TdCell best = cells.front();
    double best_deficit = -std::numeric_limits<double>::infinity();
    for (const TdCell& cell : cells) {
        const double current =
            prior > 0.0 ? state.placed_volume.at(k, c, cell.t, cell.d) / prior : 0.0;
        const double deficit = strategy.at(k, c, cell.t, cell.d) - current;
        if (deficit > best_deficit) { // strict: ties keep earlier t, lower d
            best_deficit = deficit;
            best = cell;
        }
    }
    state.placed_volume.at(k, c, best.t, best.d) += job.volume;
    state.cum_volume.at(k, c) += job.volume;
    return best;
}

TdCell greedy_place(const Job& job, const ClusterGrid& assigned_load,
                    const ProblemConfig& config) {
    const int k = job.submit_hour;
    const FlexClass& fc = config.classes[job.job_class - 1];

    int best_d = -1;
    double best_price = std::numeric_limits<double>::infinity();
    for (int d : fc.allowed_clusters) {
        const double remaining = config.true_capacity.at(k, d) - assigned_load.at(k, d);
        if (remaining < job.volume - 1e-12) continue;
        const double price = config.carbon_price.at(k, d);
        if (price < best_price) {
            best_price = price;
            best_d = d;
        }
    }
    if (best_d < 0) {
        // Every in-range cluster is full: overflow to the one with most slack.
        double best_slack = -std::numeric_limits<double>::infinity();
        for (int d : fc.allowed_clusters) {
            const double slack = config.true_capacity.at(k, d) - assigned_load.at(k, d);
            if (slack > best_slack) {
                best_slack = slack;
                best_d = d;
            }
        }
    }
    return {k, best_d};
}

SimTrace simulate_day(const JobStream& stream, Policy policy, VccMode mode,
                      const ScheduleTensor& strategy, const ClusterGrid& vcc,
                      const ProblemConfig& config) {
    config.validate();
    stream.validate(config);
    const int T = config.horizon(), D = config.clusters;
    if (vcc.horizon() != T || vcc.clusters() != D)
        throw ConfigError("simulate_day: VCC grid does not match config");

    SimTrace trace;
    trace.executed = ClusterGrid(T, D);
    trace.queue_length = ClusterGrid(T, D);
    trace.placements.reserve(stream.jobs.size());

    std::vector<std::vector<std::vector<Job>>> due(
        static_cast<size_t>(T) + 1, std::vector<std::vector<Job>>(static_cast<size_t>(D) + 1));
    std::vector<std::deque<Job>> queue(static_cast<size_t>(D) + 1);

    PlacementState tracking(config);
    ClusterGrid assigned(T, D); // greedy's capacity view

    size_t next = 0;
    for (int hour = 1; hour <= T; ++hour) {
        // Placement of jobs arriving this hour, in stream order.
        while (next < stream.jobs.size() && stream.jobs[next].submit_hour == hour) {
            const Job& job = stream.jobs[next];
            const TdCell cell = policy == Policy::Tracking
                                    ? place_job(tracking, job, strategy, config)
                                    : greedy_place(job, assigned, config);
            assigned.at(cell.t, cell.d) += job.volume;
            trace.placements.push_back({job.id, cell.d, cell.t});
            due[cell.t][cell.d].push_back(job);
            ++next;
        }

        // Execution.
        for (int d = 1; d <= D; ++d) {
            if (mode == VccMode::Soft) {
                double load = 0.0;
                for (const Job& job : due[hour][d]) load += job.volume;
                trace.executed.at(hour, d) = load;
                const double v = vcc.at(hour, d);
                if (load > v + 1e-9) trace.vcc_violations.push_back({hour, d, load - v});
                const double cap = config.true_capacity.at(hour, d);
                if (load > cap + 1e-9)
                    trace.capacity_violations.push_back({hour, d, load - cap});
            } else {
                for (const Job& job : due[hour][d]) queue[d].push_back(job);
                const double cap = std::min(vcc.at(hour, d), config.true_capacity.at(hour, d));
                double used = 0.0;
                while (!queue[d].empty() &&
                       queue[d].front().volume <= cap - used + 1e-12) {
                    used += queue[d].front().volume;
                    queue[d].pop_front();
                }
                trace.executed.at(hour, d) = used;
                trace.queue_length.at(hour, d) = static_cast<double>(queue[d].size());
            }
        }
    }

    for (int d = 1; d <= D; ++d)
        for (const Job& job : queue[d]) {
            trace.unserved_volume += job.volume;
            ++trace.unserved_jobs;
        }
    trace.realized_cost = realized_cost(trace.executed, config);
    return trace;
}

double realized_cost(const ClusterGrid& executed, const ProblemConfig& config) {
    if (executed.horizon() != config.horizon() || executed.clusters() != config.clusters)
        throw ConfigError("realized_cost: grid does not match config");
    double cost = 0.0;
    for (int d = 1; d <= config.clusters; ++d) {
        double peak = 0.0;
        for (int t = 1; t <= config.horizon(); ++t) {
            cost += config.carbon_price.at(t, d) * executed.at(t, d);
            peak = std::max(peak, executed.at(t, d));
        }
        cost += config.infra_price[d - 1] * peak;
    }
    return cost;
}

} // namespace dcsched
