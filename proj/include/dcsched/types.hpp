#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dcsched/errors.hpp"

namespace dcsched {

/// Dense (K x C) grid of per-hour, per-class values, 1-based accessors.
/// The hour index runs fastest in storage, matching the stacked vector
/// s = [s_{1,1}, ..., s_{K,1}, s_{1,2}, ...].
class LoadGrid {
  public:
    LoadGrid() = default;
    LoadGrid(int hours, int num_classes, double fill = 0.0)
        : hours_(hours), classes_(num_classes),
          data_(static_cast<size_t>(hours) * num_classes, fill) {}

    int hours() const { return hours_; }
    int num_classes() const { return classes_; }

    double& at(int k, int c) { return data_[index(k, c)]; }
    double at(int k, int c) const { return data_[index(k, c)]; }

    const std::vector<double>& flat() const { return data_; }
    std::vector<double>& flat() { return data_; }
    size_t size() const { return data_.size(); }

    double total() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    /// Flat offset of s_{k,c} in the stacked vector (0-based).
    size_t index(int k, int c) const {
        return static_cast<size_t>(k - 1) + static_cast<size_t>(hours_) * (c - 1);
    }

    bool same_shape(const LoadGrid& other) const {
        return hours_ == other.hours_ && classes_ == other.classes_;
    }

  private:
    int hours_ = 0;
    int classes_ = 0;
    std::vector<double> data_;
};

/// Dense (T x D) grid of per-hour, per-cluster values (VCCs, prices, loads),
/// 1-based accessors. The execution hour runs fastest, matching col(v_{t,d}).
class ClusterGrid {
  public:
    ClusterGrid() = default;
    ClusterGrid(int horizon, int clusters, double fill = 0.0)
        : horizon_(horizon), clusters_(clusters),
          data_(static_cast<size_t>(horizon) * clusters, fill) {}

    int horizon() const { return horizon_; }
    int clusters() const { return clusters_; }

    double& at(int t, int d) { return data_[index(t, d)]; }
    double at(int t, int d) const { return data_[index(t, d)]; }

    const std::vector<double>& flat() const { return data_; }
    std::vector<double>& flat() { return data_; }
    size_t size() const { return data_.size(); }

    size_t index(int t, int d) const {
        return static_cast<size_t>(t - 1) + static_cast<size_t>(horizon_) * (d - 1);
    }

    double cluster_max(int d) const {
        double m = 0.0;
        for (int t = 1; t <= horizon_; ++t) m = std::max(m, at(t, d));
        return m;
    }

    bool same_shape(const ClusterGrid& other) const {
        return horizon_ == other.horizon_ && clusters_ == other.clusters_;
    }

  private:
    int horizon_ = 0;
    int clusters_ = 0;
    std::vector<double> data_;
};

/// Flexibility class: delay tolerance in hours plus the admissible cluster set.
struct FlexClass {
    int id = 0;                        // 1-based class index
    int delay_tolerance = 0;           // h_c >= 0
    std::vector<int> allowed_clusters; // nonempty subset of {1..D}, sorted
};

/// Fleet topology, horizons, capacities, cost signals and risk parameters.
/// The execution horizon T is always K + max_c h_c and is derived, never stored.
struct ProblemConfig {
    int submission_hours = 0; // K
    int clusters = 0;         // D
    std::vector<FlexClass> classes;
    ClusterGrid true_capacity; // v̄, T x D
    ClusterGrid carbon_price;  // ρ^carb, T x D
    std::vector<double> infra_price; // ρ^in, per cluster
    double beta = 0.2;
    double epsilon = 8e-3;

    int num_classes() const { return static_cast<int>(classes.size()); }

    int max_delay() const {
        int h = 0;
        for (const auto& fc : classes) h = std::max(h, fc.delay_tolerance);
        return h;
    }

    /// T = K + max_c h_c
    int horizon() const { return submission_hours + max_delay(); }

    void validate() const;
};

/// Scheduling strategy tensor Y with entries Y_{k,c,t,d} >= 0.
/// Storage follows the flat bijection r = K(c-1) + k + KC(t-1) + KCT(d-1),
/// i.e. element (k,c,t,d) lives at offset r-1.
class ScheduleTensor {
  public:
    ScheduleTensor() = default;
    ScheduleTensor(int K, int C, int T, int D)
        : K_(K), C_(C), T_(T), D_(D),
          data_(static_cast<size_t>(K) * C * T * D, 0.0) {}

    int hours() const { return K_; }
    int num_classes() const { return C_; }
    int horizon() const { return T_; }
    int clusters() const { return D_; }

    double& at(int k, int c, int t, int d) { return data_[offset(k, c, t, d)]; }
    double at(int k, int c, int t, int d) const { return data_[offset(k, c, t, d)]; }

    const std::vector<double>& flat() const { return data_; }
    size_t size() const { return data_.size(); }

    size_t offset(int k, int c, int t, int d) const {
        return static_cast<size_t>(k - 1) + static_cast<size_t>(K_) * (c - 1) +
               static_cast<size_t>(K_) * C_ * (t - 1) +
               static_cast<size_t>(K_) * C_ * T_ * (d - 1);
    }

  private:
    int K_ = 0, C_ = 0, T_ = 0, D_ = 0;
    std::vector<double> data_;
};

/// Set of historical per-class aggregate load samples, all on the same grid.
struct SampleSet {
    std::vector<LoadGrid> samples;

    int count() const { return static_cast<int>(samples.size()); }
    int hours() const { return samples.empty() ? 0 : samples.front().hours(); }
    int num_classes() const { return samples.empty() ? 0 : samples.front().num_classes(); }

    void validate() const {
        for (size_t i = 0; i < samples.size(); ++i) {
            if (!samples[i].same_shape(samples.front()))
                throw ConfigError("SampleSet: sample " + std::to_string(i + 1) +
                                  " has mismatched grid shape");
            for (double v : samples[i].flat())
                if (v < 0.0)
                    throw ConfigError("SampleSet: negative load value in sample " +
                                      std::to_string(i + 1));
        }
    }
};

} // namespace dcsched
