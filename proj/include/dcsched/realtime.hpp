#pragma once

#include <cstdint>
#include <vector>

#include "dcsched/core_model.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

/// One discrete compute job: submitted at hour k, indivisible volume.
struct Job {
    long id = 0;
    int job_class = 0;  // c, 1-based
    int submit_hour = 0; // k
    double volume = 0.0; // > 0
};

/// Jobs sorted by submit hour; per-hour order is the processing order.
struct JobStream {
    std::vector<Job> jobs;

    double total_volume() const {
        double s = 0.0;
        for (const Job& j : jobs) s += j.volume;
        return s;
    }
    void validate(const ProblemConfig& config) const;
};

/// Tracking state of the placement rule: absolute placed volume per cell and
/// cumulative volume per (k,c), both reset implicitly per hour because jobs
/// of hour k only touch the (k, c, ., .) slice.
struct PlacementState {
    ScheduleTensor placed_volume; // Y_abs
    LoadGrid cum_volume;          // sum of volumes seen so far per (k,c)

    PlacementState() = default;
    PlacementState(const ProblemConfig& config)
        : placed_volume(config.submission_hours, config.num_classes(), config.horizon(),
                        config.clusters),
          cum_volume(config.submission_hours, config.num_classes()) {}
};

/// Greedy placement rule's capacity view: volume already assigned per (t,d).
struct Placement {
    long job_id = 0;
    int d = 0;
    int t = 0;
};

/// Places one job at the feasible cell furthest behind its optimal fraction:
/// argmax over feasible cells of (Y*_{k,c,t,d} - Y_abs/sum-of-prior-volumes),
/// with the current fraction defined as 0 for the first job of an hour.
/// Ties break to the earlier t, then the lower d. Updates the state.
TdCell place_job(PlacementState& state, const Job& job, const ScheduleTensor& strategy,
                 const ProblemConfig& config);

/// Greedy baseline: execute at the submission hour in the cheapest in-range
/// cluster with remaining true capacity; when every in-range cluster is full
/// the one with maximum slack takes the overflow.
TdCell greedy_place(const Job& job, const ClusterGrid& assigned_load,
                    const ProblemConfig& config);

enum class Policy { Tracking, Greedy };
enum class VccMode { Soft, Hard };

struct ViolationEvent {
    int t = 0, d = 0;
    double magnitude = 0.0;
};

struct SimTrace {
    ClusterGrid executed;     // realized load per (t,d)
    ClusterGrid queue_length; // jobs waiting per (t,d) after each hour
    std::vector<Placement> placements;
    std::vector<ViolationEvent> vcc_violations;      // executed > v (soft mode)
    std::vector<ViolationEvent> capacity_violations; // executed > v-bar (soft mode)
    double realized_cost = 0.0;
    double unserved_volume = 0.0; // still queued when the horizon ends
    long unserved_jobs = 0;

    double max_vcc_violation() const {
        double m = 0.0;
        for (const auto& e : vcc_violations) m = std::max(m, e.magnitude);
        return m;
    }
};

/// Discrete-time fleet simulation over hours 1..T. Each hour places the
/// arriving jobs under the chosen policy, then executes: soft mode runs all
/// load assigned to the hour and logs VCC exceedances; hard mode executes
/// FIFO (carried queue first, then newly due jobs) up to min(v, v-bar) per
/// cluster and defers the remainder.
SimTrace simulate_day(const JobStream& stream, Policy policy, VccMode mode,
                      const ScheduleTensor& strategy, const ClusterGrid& vcc,
                      const ProblemConfig& config);

/// f applied to executed load: carbon price times load plus per-cluster peaks.
double realized_cost(const ClusterGrid& executed, const ProblemConfig& config);

} // namespace dcsched
