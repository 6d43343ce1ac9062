#include "dcsched/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dcsched {

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration_limit";
        case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

enum VarState : int8_t { kBasic = 0, kAtLower = 1, kAtUpper = 2, kNbFree = 3 };

struct Eta {
    int pivot_row = 0;
    double pivot_value = 0.0;
    std::vector<std::pair<int, double>> other; // off-pivot entries of w
};

class Simplex {
  public:
    Simplex(const LpModel& model, const SolverOptions& opt) : opt_(opt) {
        m_ = model.num_rows();
        ns_ = model.num_vars();
        n_ = ns_ + m_;
        build_columns(model);
        lb_ = model.lower();
        ub_ = model.upper();
        cost_ = model.objective();
        lb_.resize(n_);
        ub_.resize(n_);
        cost_.resize(n_, 0.0);
        b_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const LpRow& row = model.rows()[i];
            b_[i] = row.rhs;
            switch (row.sense) {
                case RowSense::LE: lb_[ns_ + i] = 0.0; ub_[ns_ + i] = kInf; break;
                case RowSense::GE: lb_[ns_ + i] = -kInf; ub_[ns_ + i] = 0.0; break;
                case RowSense::EQ: lb_[ns_ + i] = 0.0; ub_[ns_ + i] = 0.0; break;
            }
        }
        if (opt_.max_iterations <= 0)
            opt_.max_iterations = std::max<long>(100000, 30L * (m_ + n_));
    }

    SolveResult run() {
        SolveResult result;
        try {
            if (m_ == 0) return solve_unconstrained(result);

            init_slack_basis();

            if (!iterate(/*phase1=*/true, result)) return result;
            if (has_infeasible_basic()) {
                result.status = SolveStatus::Infeasible;
                result.iterations = iter_;
                return result;
            }
            if (!iterate(/*phase1=*/false, result)) return result;

            result.status = SolveStatus::Optimal;
            result.iterations = iter_;
            result.x.assign(ns_, 0.0);
            for (int j = 0; j < ns_; ++j) result.x[j] = value_of(j);
            for (int i = 0; i < m_; ++i)
                if (basis_[i] < ns_) result.x[basis_[i]] = xB_[i];
            result.objective = 0.0;
            for (int j = 0; j < ns_; ++j) result.objective += cost_[j] * result.x[j];
        } catch (const SolverError&) {
            result.status = SolveStatus::NumericalFailure;
            result.iterations = iter_;
            result.x.clear();
        }
        return result;
    }

  private:
    // Model in computational standard form: [A | I] z = b, l <= z <= u.
    SolverOptions opt_;
    int m_ = 0, ns_ = 0, n_ = 0;
    std::vector<int> cptr_, cidx_;
    std::vector<double> cval_;
    std::vector<double> lb_, ub_, cost_, b_;

    std::vector<int> basis_;
    std::vector<int8_t> state_;
    std::vector<double> xB_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<Eta> etas_;
    long iter_ = 0;
    long degen_run_ = 0;
    bool bland_ = false;

    void build_columns(const LpModel& model) {
        std::vector<int> counts(n_, 0);
        for (const LpRow& row : model.rows())
            for (int v : row.vars) ++counts[v];
        for (int i = 0; i < m_; ++i) counts[ns_ + i] = 1;
        cptr_.assign(n_ + 1, 0);
        for (int j = 0; j < n_; ++j) cptr_[j + 1] = cptr_[j] + counts[j];
        cidx_.resize(cptr_[n_]);
        cval_.resize(cptr_[n_]);
        std::vector<int> fill(cptr_.begin(), cptr_.end() - 1);
        for (int i = 0; i < m_; ++i) {
            const LpRow& row = model.rows()[i];
            for (size_t j = 0; j < row.vars.size(); ++j) {
                const int pos = fill[row.vars[j]]++;
                cidx_[pos] = i;
                cval_[pos] = row.coeffs[j];
            }
        }
        for (int i = 0; i < m_; ++i) {
            const int pos = fill[ns_ + i]++;
            cidx_[pos] = i;
            cval_[pos] = 1.0;
        }
    }

    SolveResult solve_unconstrained(SolveResult& result) {
        result.x.assign(ns_, 0.0);
        for (int j = 0; j < ns_; ++j) {
            if (cost_[j] > 0.0) {
                if (!std::isfinite(lb_[j])) { result.status = SolveStatus::Unbounded; return result; }
                result.x[j] = lb_[j];
            } else if (cost_[j] < 0.0) {
                if (!std::isfinite(ub_[j])) { result.status = SolveStatus::Unbounded; return result; }
                result.x[j] = ub_[j];
            } else {
                result.x[j] = std::isfinite(lb_[j]) ? lb_[j] : (std::isfinite(ub_[j]) ? ub_[j] : 0.0);
            }
            result.objective += cost_[j] * result.x[j];
        }
        result.status = SolveStatus::Optimal;
        return result;
    }

    double value_of(int j) const {
        switch (state_[j]) {
            case kAtLower: return lb_[j];
            case kAtUpper: return ub_[j];
            case kNbFree: return 0.0;
            default: return 0.0; // basic values live in xB_
        }
    }

    void init_slack_basis() {
        state_.assign(n_, kAtLower);
        for (int j = 0; j < ns_; ++j) {
            if (std::isfinite(lb_[j])) state_[j] = kAtLower;
            else if (std::isfinite(ub_[j])) state_[j] = kAtUpper;
            else state_[j] = kNbFree;
        }
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = ns_ + i;
            state_[ns_ + i] = kBasic;
        }
        refactorize();
    }

    void refactorize() {
        Eigen::SparseMatrix<double> B(m_, m_);
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<size_t>(m_) * 4);
        for (int p = 0; p < m_; ++p) {
            const int j = basis_[p];
            for (int q = cptr_[j]; q < cptr_[j + 1]; ++q)
                trips.emplace_back(cidx_[q], p, cval_[q]);
        }
        B.setFromTriplets(trips.begin(), trips.end());
        lu_.compute(B);
        if (lu_.info() != Eigen::Success)
            throw SolverError("simplex: basis factorization failed");
        etas_.clear();
        recompute_basic_values();
    }

    void recompute_basic_values() {
        Eigen::VectorXd rhs(m_);
        for (int i = 0; i < m_; ++i) rhs[i] = b_[i];
        for (int j = 0; j < n_; ++j) {
            if (state_[j] == kBasic) continue;
            const double v = value_of(j);
            if (v == 0.0) continue;
            for (int q = cptr_[j]; q < cptr_[j + 1]; ++q) rhs[cidx_[q]] -= cval_[q] * v;
        }
        Eigen::VectorXd sol = lu_.solve(rhs);
        xB_.assign(sol.data(), sol.data() + m_);
    }

    static void apply_eta_ftran(const Eta& e, Eigen::VectorXd& y) {
        const double yr = y[e.pivot_row] / e.pivot_value;
        y[e.pivot_row] = yr;
        if (yr != 0.0)
            for (const auto& [i, w] : e.other) y[i] -= w * yr;
    }

    static void apply_eta_btran(const Eta& e, Eigen::VectorXd& z) {
        double dot = 0.0;
        for (const auto& [i, w] : e.other) dot += w * z[i];
        z[e.pivot_row] = (z[e.pivot_row] - dot) / e.pivot_value;
    }

    Eigen::VectorXd ftran(int col) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
        for (int q = cptr_[col]; q < cptr_[col + 1]; ++q) v[cidx_[q]] += cval_[q];
        Eigen::VectorXd y = lu_.solve(v);
        for (const Eta& e : etas_) apply_eta_ftran(e, y);
        return y;
    }

    Eigen::VectorXd btran(const Eigen::VectorXd& c) {
        Eigen::VectorXd z = c;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) apply_eta_btran(*it, z);
        return lu_.transpose().solve(z).eval();
    }

    double bound_tol(int j) const {
        return opt_.feasibility_tol *
               (1.0 + std::max(std::isfinite(lb_[j]) ? std::abs(lb_[j]) : 0.0,
                               std::isfinite(ub_[j]) ? std::abs(ub_[j]) : 0.0));
    }

    // -1: below lower bound, +1: above upper bound, 0: within bounds.
    int basic_infeasibility(int pos) const {
        const int j = basis_[pos];
        const double tol = bound_tol(j);
        if (xB_[pos] < lb_[j] - tol) return -1;
        if (xB_[pos] > ub_[j] + tol) return 1;
        return 0;
    }

    bool has_infeasible_basic() const {
        for (int i = 0; i < m_; ++i)
            if (basic_infeasibility(i) != 0) return true;
        return false;
    }

    double reduced_cost(int j, const Eigen::VectorXd& pi, bool phase1) const {
        double d = phase1 ? 0.0 : cost_[j];
        for (int q = cptr_[j]; q < cptr_[j + 1]; ++q) d -= pi[cidx_[q]] * cval_[q];
        return d;
    }

    // One simplex phase. Returns false on a terminal non-optimal outcome
    // (recorded in result); true when the phase ran to completion.
    bool iterate(bool phase1, SolveResult& result) {
        int since_refactor = 0;
        while (true) {
            if (phase1 && !has_infeasible_basic()) return true;
            if (iter_ >= opt_.max_iterations) {
                result.status = SolveStatus::IterationLimit;
                result.iterations = iter_;
                return false;
            }
            if (since_refactor >= opt_.refactor_interval ||
                static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
                refactorize();
                since_refactor = 0;
                if (phase1 && !has_infeasible_basic()) return true;
                if (!phase1 && has_infeasible_basic()) {
                    // Accumulated drift pushed a basic value out of bounds;
                    // restore feasibility before continuing.
                    if (!iterate(/*phase1=*/true, result)) return false;
                    if (has_infeasible_basic()) {
                        result.status = SolveStatus::NumericalFailure;
                        result.iterations = iter_;
                        return false;
                    }
                }
            }

            Eigen::VectorXd cB(m_);
            for (int i = 0; i < m_; ++i)
                cB[i] = phase1 ? static_cast<double>(basic_infeasibility(i))
                               : cost_[basis_[i]];
            const Eigen::VectorXd pi = btran(cB);

            // Pricing: Dantzig by default, least index while in Bland mode.
            int enter = -1;
            int sigma = 1;
            double best_merit = opt_.optimality_tol;
            for (int j = 0; j < n_; ++j) {
                const int8_t st = state_[j];
                if (st == kBasic) continue;
                if (ub_[j] - lb_[j] <= 0.0) continue; // fixed variable
                const double d = reduced_cost(j, pi, phase1);
                int dir = 0;
                if ((st == kAtLower || st == kNbFree) && d < -opt_.optimality_tol) dir = 1;
                else if ((st == kAtUpper || st == kNbFree) && d > opt_.optimality_tol) dir = -1;
                if (dir == 0) continue;
                if (bland_) {
                    enter = j;
                    sigma = dir;
                    break;
                }
                if (std::abs(d) > best_merit) {
                    best_merit = std::abs(d);
                    enter = j;
                    sigma = dir;
                }
            }
            if (enter < 0) return true; // optimal, or phase-1 minimum (infeasible)

            const Eigen::VectorXd w = ftran(enter);

            // Harris two-pass ratio test. delta_i is the change of basic i per
            // unit step of the entering variable in direction sigma. In phase 1
            // an infeasible basic blocks at the bound it re-enters through.
            constexpr double kPivotTol = 1e-10;
            const double flip_len = ub_[enter] - lb_[enter]; // inf unless boxed
            double theta_relaxed = kInf;
            for (int i = 0; i < m_; ++i) {
                const double delta = -sigma * w[i];
                if (std::abs(delta) < kPivotTol) continue;
                const double bound = blocking_bound(i, delta, phase1);
                if (!std::isfinite(bound)) continue;
                const double r =
                    (bound - xB_[i]) / delta + opt_.feasibility_tol / std::abs(delta);
                theta_relaxed = std::min(theta_relaxed, std::max(0.0, r));
            }

            int leave_pos = -1;
            double leave_bound = 0.0;
            double theta_basic = kInf;
            double best_pivot = 0.0;
            if (std::isfinite(theta_relaxed)) {
                for (int i = 0; i < m_; ++i) {
                    const double delta = -sigma * w[i];
                    if (std::abs(delta) < kPivotTol) continue;
                    const double bound = blocking_bound(i, delta, phase1);
                    if (!std::isfinite(bound)) continue;
                    const double r = std::max(0.0, (bound - xB_[i]) / delta);
                    if (r > theta_relaxed) continue;
                    const bool better = bland_ ? (leave_pos < 0 || basis_[i] < basis_[leave_pos])
                                               : (std::abs(delta) > best_pivot);
                    if (better) {
                        leave_pos = i;
                        leave_bound = bound;
                        best_pivot = std::abs(delta);
                        theta_basic = r;
                    }
                }
            }

            double theta = 0.0;
            if (std::isfinite(flip_len) && flip_len <= theta_basic) {
                // The entering variable hits its opposite bound first.
                theta = flip_len;
                for (int i = 0; i < m_; ++i) xB_[i] += -sigma * w[i] * theta;
                state_[enter] = state_[enter] == kAtLower ? kAtUpper : kAtLower;
            } else if (leave_pos >= 0) {
                theta = theta_basic;
                const double entering_value = value_of(enter) + sigma * theta;
                for (int i = 0; i < m_; ++i) xB_[i] += -sigma * w[i] * theta;
                const int leaving = basis_[leave_pos];
                state_[leaving] =
                    (leave_bound == ub_[leaving] && lb_[leaving] != ub_[leaving]) ? kAtUpper
                                                                                  : kAtLower;
                state_[enter] = kBasic;
                basis_[leave_pos] = enter;
                xB_[leave_pos] = entering_value;

                Eta eta;
                eta.pivot_row = leave_pos;
                eta.pivot_value = w[leave_pos];
                for (int i = 0; i < m_; ++i)
                    if (i != leave_pos && std::abs(w[i]) > 1e-12)
                        eta.other.emplace_back(i, w[i]);
                const bool unstable = std::abs(eta.pivot_value) < 1e-8;
                etas_.push_back(std::move(eta));
                ++since_refactor;
                if (unstable) {
                    refactorize();
                    since_refactor = 0;
                }
            } else {
                result.status =
                    phase1 ? SolveStatus::NumericalFailure : SolveStatus::Unbounded;
                result.iterations = iter_;
                return false;
            }

            ++iter_;
            if (theta <= 1e-11) {
                if (++degen_run_ > 1000) bland_ = true;
            } else {
                degen_run_ = 0;
                bland_ = false;
            }
        }
    }

    // Bound at which basic position i blocks a move of sign delta, or +/-inf
    // when it does not block.
    double blocking_bound(int pos, double delta, bool phase1) const {
        const int j = basis_[pos];
        if (phase1) {
            const int inf = basic_infeasibility(pos);
            if (inf < 0) return delta > 0 ? lb_[j] : -kInf;
            if (inf > 0) return delta < 0 ? ub_[j] : kInf;
        }
        return delta > 0 ? ub_[j] : lb_[j];
    }
};

} // namespace

SolveResult simplex_solve(const LpModel& model, const SolverOptions& options) {
    Simplex solver(model, options);
    return solver.run();
}

} // namespace dcsched
