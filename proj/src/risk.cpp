#include "dcsched/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcsched/solver.hpp"

namespace dcsched {

double empirical_cvar(const std::vector<double>& values, double beta) {
    if (values.empty()) throw ConfigError("empirical_cvar: empty value list");
    if (!(beta > 0.0 && beta <= 1.0))
        throw ConfigError("empirical_cvar: beta must lie in (0, 1]");
    const double n = static_cast<double>(values.size());
    double best = std::numeric_limits<double>::infinity();
    for (double candidate : values) {
        const double q = -candidate;
        double acc = 0.0;
        for (double x : values) acc += std::max(x + q, 0.0);
        best = std::min(best, acc / (beta * n) - q);
    }
    return best;
}

double ground_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, GroundNorm norm) {
    switch (norm) {
        case GroundNorm::L1: return (a - b).lpNorm<1>();
        case GroundNorm::L2: return (a - b).norm();
        case GroundNorm::LInf: return (a - b).lpNorm<Eigen::Infinity>();
    }
    return 0.0;
}

DiscreteDistribution DiscreteDistribution::uniform(const SampleSet& samples) {
    DiscreteDistribution dist;
    dist.atoms.reserve(samples.samples.size());
    for (const LoadGrid& s : samples.samples) dist.atoms.push_back(stack_sample(s));
    dist.weights.assign(samples.samples.size(), 1.0 / samples.count());
    return dist;
}

void DiscreteDistribution::validate() const {
    if (atoms.empty()) throw ConfigError("distribution: no atoms");
    if (atoms.size() != weights.size())
        throw ConfigError("distribution: atom/weight count mismatch");
    for (const auto& a : atoms)
        if (a.size() != atoms.front().size())
            throw ConfigError("distribution: atom dimensions differ");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("distribution: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("distribution: weights sum to " + std::to_string(total));
}

double wasserstein_discrete(const DiscreteDistribution& p, const DiscreteDistribution& q,
                            GroundNorm norm, const SolverOptions& options) {
    p.validate();
    q.validate();
    if (p.atoms.front().size() != q.atoms.front().size())
        throw ConfigError("wasserstein_discrete: atom dimensions disagree");

    const int np = static_cast<int>(p.atoms.size());
    const int nq = static_cast<int>(q.atoms.size());
    LpModel model;
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j)
            model.add_variable("g_" + std::to_string(i) + "_" + std::to_string(j), 0.0, kInf,
                               ground_distance(p.atoms[i], q.atoms[j], norm));
    for (int i = 0; i < np; ++i) {
        std::vector<int> vars(nq);
        for (int j = 0; j < nq; ++j) vars[j] = i * nq + j;
        model.add_row(RowSense::EQ, p.weights[i], std::move(vars),
                      std::vector<double>(nq, 1.0));
    }
    for (int j = 0; j < nq; ++j) {
        std::vector<int> vars(np);
        for (int i = 0; i < np; ++i) vars[i] = i * nq + j;
        model.add_row(RowSense::EQ, q.weights[j], std::move(vars),
                      std::vector<double>(np, 1.0));
    }
    LpSolution sol = solve_lp(model, options);
    if (sol.status != SolveStatus::Optimal)
        throw SolverError("wasserstein_discrete: transport LP " + to_string(sol.status));
    return sol.objective;
}

Eigen::VectorXd stack_sample(const LoadGrid& s) {
    Eigen::VectorXd v(static_cast<long>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) v[static_cast<long>(i)] = s.flat()[i];
    return v;
}

bool SupportSet::contains(const Eigen::VectorXd& s, double tol) const {
    if (s.size() != G.cols()) throw ConfigError("support: sample dimension mismatch");
    return ((G * s - h).array() <= tol).all();
}

bool SupportSet::contains(const LoadGrid& s, double tol) const {
    return contains(stack_sample(s), tol);
}

SupportSet build_support_set(const SampleSet& samples, double margin, SupportKind kind) {
    if (samples.samples.empty())
        throw ConfigError("build_support_set: no samples");
    if (margin < 0.0) throw ConfigError("build_support_set: margin must be >= 0");
    samples.validate();
    const int dim = static_cast<int>(samples.samples.front().size());

    SupportSet support;
    if (kind == SupportKind::Box) {
        Eigen::VectorXd envelope = Eigen::VectorXd::Zero(dim);
        for (const LoadGrid& s : samples.samples)
            envelope = envelope.cwiseMax(stack_sample(s));
        support.G = Eigen::MatrixXd::Zero(2 * dim, dim);
        support.h = Eigen::VectorXd::Zero(2 * dim);
        support.G.topRows(dim) = -Eigen::MatrixXd::Identity(dim, dim);
        support.G.bottomRows(dim) = Eigen::MatrixXd::Identity(dim, dim);
        support.h.tail(dim) = (1.0 + margin) * envelope;
    } else {
        double max_total = 0.0;
        for (const LoadGrid& s : samples.samples) max_total = std::max(max_total, s.total());
        support.G = Eigen::MatrixXd::Zero(dim + 1, dim);
        support.h = Eigen::VectorXd::Zero(dim + 1);
        support.G.topRows(dim) = -Eigen::MatrixXd::Identity(dim, dim);
        support.G.row(dim).setOnes();
        support.h[dim] = (1.0 + margin) * max_total;
    }
    for (size_t i = 0; i < samples.samples.size(); ++i)
        if (!support.contains(samples.samples[i]))
            throw ConfigError("build_support_set: sample " + std::to_string(i + 1) +
                              " escapes the constructed support");
    return support;
}

} // namespace dcsched
