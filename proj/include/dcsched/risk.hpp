#pragma once

#include <Eigen/Dense>

#include <vector>

#include "dcsched/simplex.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

/// Empirical CVaR at level beta of a list of loss values:
/// min_q [ mean([x_i + q]_+)/beta - q ], computed exactly by evaluating the
/// candidate breakpoints q = -x_i of the piecewise-linear objective.
double empirical_cvar(const std::vector<double>& values, double beta);

/// Ground norm for the transport cost between load samples. The planner's
/// dual-norm constraint prints an infinity norm, which pairs with the L1
/// ground norm here; that pairing is the default everywhere.
enum class GroundNorm { L1, L2, LInf };

double ground_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, GroundNorm norm);

/// Finitely supported distribution with nonnegative weights summing to one.
struct DiscreteDistribution {
    std::vector<Eigen::VectorXd> atoms;
    std::vector<double> weights;

    static DiscreteDistribution uniform(const SampleSet& samples);
    void validate() const;
};

/// Type-1 Wasserstein distance between two discrete distributions, as the
/// optimal value of the transport LP (solved by the shared solver adapter).
double wasserstein_discrete(const DiscreteDistribution& p, const DiscreteDistribution& q,
                            GroundNorm norm = GroundNorm::L1,
                            const SolverOptions& options = {});

/// Polyhedral support set S = { s : G s <= h }.
struct SupportSet {
    Eigen::MatrixXd G; // g x (K*C)
    Eigen::VectorXd h; // g

    int num_rows() const { return static_cast<int>(G.rows()); }
    int dimension() const { return static_cast<int>(G.cols()); }

    bool contains(const Eigen::VectorXd& s, double tol = 1e-9) const;
    bool contains(const LoadGrid& s, double tol = 1e-9) const;
};

enum class SupportKind {
    Box, // s >= 0 and per-coordinate upper bounds: g = 2*K*C rows
    Sum, // s >= 0 and a total-load cap: g = K*C + 1 rows
};

/// Builds the default support polyhedron from training samples. Every input
/// sample is guaranteed to satisfy G s <= h; margin >= 0 widens the upper
/// bounds beyond the observed envelope.
SupportSet build_support_set(const SampleSet& samples, double margin,
                             SupportKind kind = SupportKind::Box);

/// Stacks a load grid into the s vector ordering used by the support set.
Eigen::VectorXd stack_sample(const LoadGrid& s);

} // namespace dcsched
