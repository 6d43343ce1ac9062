#include "dcsched/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace dcsched {

std::string to_string(Tier tier) {
    switch (tier) {
        case Tier::Full: return "full";
        case Tier::Reduced: return "reduced";
        case Tier::Conservative: return "conservative";
    }
    return "unknown";
}

Tier tier_from_string(const std::string& name) {
    if (name == "full") return Tier::Full;
    if (name == "reduced") return Tier::Reduced;
    if (name == "conservative") return Tier::Conservative;
    throw ConfigError("unknown tier '" + name + "' (full, reduced, conservative)");
}

std::string to_string(PlanKind kind) {
    switch (kind) {
        case PlanKind::Dro: return "dro";
        case PlanKind::Saa: return "saa";
        case PlanKind::PerfectForecast: return "perfect_forecast";
    }
    return "unknown";
}

namespace {

std::string cell_name(const char* prefix, std::initializer_list<int> idx) {
    std::string name = prefix;
    for (int i : idx) {
        name += '_';
        name += std::to_string(i);
    }
    return name;
}

// Snap solver output into the exact feasible set: tiny values to zero, VCCs
// into their bounds. Keeps validate_strategy exact without tolerances.
double snap_nonnegative(double v) { return v < 1e-10 ? 0.0 : v; }

} // namespace

DayAheadModel build_dro_lp(const ProblemConfig& config, const SampleSet& samples,
                           const SupportSet& support, Tier tier) {
    config.validate();
    samples.validate();
    if (samples.count() == 0) throw ConfigError("build_dro_lp: no samples");
    if (samples.hours() != config.submission_hours ||
        samples.num_classes() != config.num_classes())
        throw ConfigError("build_dro_lp: sample grid does not match config dimensions");
    const int K = config.submission_hours, C = config.num_classes();
    const int T = config.horizon(), D = config.clusters;
    const int N = samples.count();
    const int KC = K * C;
    if (support.dimension() != KC)
        throw ConfigError("build_dro_lp: support dimension != K*C");
    for (int i = 0; i < N; ++i)
        if (!support.contains(samples.samples[i]))
            throw ConfigError("build_dro_lp: sample " + std::to_string(i + 1) +
                              " lies outside the support set");

    DayAheadModel model;
    model.dims = {K, C, T, D};
    model.num_samples = N;
    model.tier = tier;
    model.beta = config.beta;
    model.epsilon = config.epsilon;
    LpModel& lp = model.lp;

    // --- variables ---
    model.y_vars.resize(static_cast<size_t>(K) * C);
    model.y_cells.resize(static_cast<size_t>(K) * C);
    std::vector<int> y_var_at(static_cast<size_t>(K) * C * T * D, -1);
    std::vector<char> td_used(static_cast<size_t>(T) * D, 0);
    for (int c = 1; c <= C; ++c) {
        const FlexClass& fc = config.classes[c - 1];
        for (int k = 1; k <= K; ++k) {
            auto cells = feasible_cells(fc, k, config);
            if (cells.empty())
                throw InfeasibleError("build_dro_lp: no feasible cells for (k=" +
                                      std::to_string(k) + ", c=" + std::to_string(c) +
                                      "), coverage cannot reach 1");
            const int slot = model.y_slot(k, c);
            for (const TdCell& cell : cells) {
                const int var =
                    lp.add_variable(cell_name("y", {k, c, cell.t, cell.d}), 0.0, kInf);
                model.y_vars[slot].push_back(var);
                model.y_cells[slot].push_back(cell);
                const Dims& dm = model.dims;
                y_var_at[flatten_index(k, c, cell.t, cell.d, dm) - 1] = var;
                td_used[(cell.t - 1) + static_cast<size_t>(T) * (cell.d - 1)] = 1;
            }
        }
    }
    model.v_start = lp.num_vars();
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            lp.add_variable(cell_name("v", {t, d}), 0.0, config.true_capacity.at(t, d));
    model.q_var = lp.add_variable("q", -kInf, kInf);
    model.lambda_var = lp.add_variable("lam", 0.0, kInf);
    model.p_start = lp.num_vars();
    for (int i = 1; i <= N; ++i) lp.add_variable(cell_name("p", {i}), 0.0, kInf);

    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            if (td_used[(t - 1) + static_cast<size_t>(T) * (d - 1)])
                model.reachable.push_back({t, d});
    const int Tf = static_cast<int>(model.reachable.size());

    const int g = support.num_rows();
    model.eta_rows = tier == Tier::Conservative ? 0 : g;
    if (tier != Tier::Conservative) {
        model.eta_start = lp.num_vars();
        for (int i = 0; i < N; ++i)
            for (int td = 0; td < Tf; ++td)
                for (int r = 0; r < g; ++r)
                    lp.add_variable(cell_name("eta", {i + 1, td, r}), 0.0, kInf);
    }
    model.peak_start = lp.num_vars();
    for (int d = 1; d <= D; ++d)
        lp.add_variable(cell_name("pk", {d}), 0.0, kInf, config.infra_price[d - 1]);
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            lp.set_objective(model.v_var(t, d), config.carbon_price.at(t, d));

    // Per reachable cell: the y variables routed there with their sample index.
    std::vector<std::vector<std::pair<int, int>>> routed(Tf); // (y var, kc offset)
    std::vector<int> td_pos(static_cast<size_t>(T) * D, -1);
    for (int p = 0; p < Tf; ++p)
        td_pos[(model.reachable[p].t - 1) + static_cast<size_t>(T) * (model.reachable[p].d - 1)] = p;
    for (int c = 1; c <= C; ++c)
        for (int k = 1; k <= K; ++k) {
            const int slot = model.y_slot(k, c);
            for (size_t j = 0; j < model.y_vars[slot].size(); ++j) {
                const TdCell& cell = model.y_cells[slot][j];
                const int pos = td_pos[(cell.t - 1) + static_cast<size_t>(T) * (cell.d - 1)];
                routed[pos].emplace_back(model.y_vars[slot][j], (k - 1) + K * (c - 1));
            }
        }

    // Stacked samples and their images under G.
    std::vector<Eigen::VectorXd> svec(N), gs(N);
    for (int i = 0; i < N; ++i) {
        svec[i] = stack_sample(samples.samples[i]);
        if (tier != Tier::Conservative) gs[i] = support.G * svec[i];
    }
    // Column nonzeros of G for the dual-norm rows.
    std::vector<std::vector<std::pair<int, double>>> g_col(KC);
    if (tier != Tier::Conservative)
        for (int col = 0; col < KC; ++col)
            for (int row = 0; row < g; ++row)
                if (support.G(row, col) != 0.0) g_col[col].emplace_back(row, support.G(row, col));

    auto eta_var = [&](int i, int td, int row) {
        return model.eta_start + (static_cast<long>(i) * Tf + td) * g + row;
    };

    // (a) budget: eps*lam + (1/N) sum_i p_i <= beta*q
    {
        std::vector<int> vars;
        std::vector<double> coeffs;
        if (config.epsilon != 0.0) {
            vars.push_back(model.lambda_var);
            coeffs.push_back(config.epsilon);
        }
        for (int i = 0; i < N; ++i) {
            vars.push_back(model.p_start + i);
            coeffs.push_back(1.0 / N);
        }
        vars.push_back(model.q_var);
        coeffs.push_back(-config.beta);
        lp.add_row(RowSense::LE, 0.0, std::move(vars), std::move(coeffs));
    }

    // (b) positive part, split via p >= 0 (bound) plus the affine row:
    // p_i + v_td - q - y's^i - eta'(Gs^i - h) >= 0 for every sample and
    // reachable cell. Unreachable cells contribute no load and are omitted.
    for (int i = 0; i < N; ++i)
        for (int td = 0; td < Tf; ++td) {
            const TdCell& cell = model.reachable[td];
            std::vector<int> vars{model.p_start + i, model.v_var(cell.t, cell.d),
                                  model.q_var};
            std::vector<double> coeffs{1.0, 1.0, -1.0};
            for (const auto& [yv, kc] : routed[td]) {
                const double s = svec[i][kc];
                if (s != 0.0) {
                    vars.push_back(yv);
                    coeffs.push_back(-s);
                }
            }
            if (tier != Tier::Conservative)
                for (int r = 0; r < g; ++r) {
                    const double coeff = support.h[r] - gs[i][r];
                    if (coeff != 0.0) {
                        vars.push_back(eta_var(i, td, r));
                        coeffs.push_back(-coeff);
                    }
                }
            lp.add_row(RowSense::GE, 0.0, std::move(vars), std::move(coeffs));
        }

    // (c) dual-norm rows. With support multipliers, two one-sided rows per
    // sample coordinate: +/-(y - eta'G)_kc <= lam. In the conservative tier
    // this collapses to y <= lam per schedule cell (the negative side is
    // implied by y >= 0 <= lam).
    if (tier == Tier::Conservative) {
        for (int c = 1; c <= C; ++c)
            for (int k = 1; k <= K; ++k) {
                const int slot = model.y_slot(k, c);
                for (int yv : model.y_vars[slot])
                    lp.add_row(RowSense::LE, 0.0, {yv, model.lambda_var}, {1.0, -1.0});
            }
    } else {
        const Dims& dm = model.dims;
        for (int i = 0; i < N; ++i)
            for (int td = 0; td < Tf; ++td) {
                const TdCell& cell = model.reachable[td];
                for (int c = 1; c <= C; ++c)
                    for (int k = 1; k <= K; ++k) {
                        const int kc = (k - 1) + K * (c - 1);
                        const int yv = y_var_at[flatten_index(k, c, cell.t, cell.d, dm) - 1];
                        for (int side = 0; side < 2; ++side) {
                            const double sgn = side == 0 ? 1.0 : -1.0;
                            std::vector<int> vars;
                            std::vector<double> coeffs;
                            if (yv >= 0) {
                                vars.push_back(yv);
                                coeffs.push_back(sgn);
                            }
                            for (const auto& [row, val] : g_col[kc]) {
                                vars.push_back(eta_var(i, td, row));
                                coeffs.push_back(-sgn * val);
                            }
                            vars.push_back(model.lambda_var);
                            coeffs.push_back(-1.0);
                            lp.add_row(RowSense::LE, 0.0, std::move(vars), std::move(coeffs));
                        }
                    }
            }
    }

    // (d) coverage
    for (int c = 1; c <= C; ++c)
        for (int k = 1; k <= K; ++k) {
            const int slot = model.y_slot(k, c);
            lp.add_row(RowSense::GE, 1.0, model.y_vars[slot],
                       std::vector<double>(model.y_vars[slot].size(), 1.0));
        }

    // (f) per-cluster peak epigraph: pk_d >= v_td
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            lp.add_row(RowSense::GE, 0.0, {model.peak_start + (d - 1), model.v_var(t, d)},
                       {1.0, -1.0});

    return model;
}

namespace {

Plan extract_plan(const DayAheadModel& model, const LpSolution& sol,
                  const ProblemConfig& config, const SampleSet& samples, PlanKind kind,
                  double seconds) {
    const Dims& dm = model.dims;
    Plan plan;
    plan.kind = kind;
    plan.tier = model.tier;
    plan.beta = model.beta;
    plan.epsilon = model.epsilon;
    plan.num_samples = model.num_samples;
    plan.solver_status = sol.status;
    plan.iterations = sol.iterations;
    plan.solve_seconds = seconds;

    plan.schedule = ScheduleTensor(dm.K, dm.C, dm.T, dm.D);
    for (int c = 1; c <= dm.C; ++c)
        for (int k = 1; k <= dm.K; ++k) {
            const int slot = model.y_slot(k, c);
            for (size_t j = 0; j < model.y_vars[slot].size(); ++j) {
                const TdCell& cell = model.y_cells[slot][j];
                plan.schedule.at(k, c, cell.t, cell.d) =
                    snap_nonnegative(sol.x[model.y_vars[slot][j]]);
            }
        }
    plan.vcc = ClusterGrid(dm.T, dm.D);
    for (int d = 1; d <= dm.D; ++d)
        for (int t = 1; t <= dm.T; ++t)
            plan.vcc.at(t, d) = std::clamp(sol.x[model.v_var(t, d)], 0.0,
                                           config.true_capacity.at(t, d));

    plan.objective = sol.objective;
    plan.q = sol.x[model.q_var];
    plan.lambda = snap_nonnegative(sol.x[model.lambda_var]);
    plan.p.resize(model.num_samples);
    for (int i = 0; i < model.num_samples; ++i)
        plan.p[i] = snap_nonnegative(sol.x[model.p_start + i]);
    if (model.eta_rows > 0) {
        const long count = static_cast<long>(model.num_samples) * model.reachable.size() *
                           model.eta_rows;
        plan.eta.resize(count);
        for (long e = 0; e < count; ++e)
            plan.eta[e] = snap_nonnegative(sol.x[model.eta_start + e]);
    }

    std::vector<double> excesses(samples.count());
    for (int i = 0; i < samples.count(); ++i)
        excesses[i] = excess(plan.schedule, plan.vcc, samples.samples[i]);
    plan.cvar_certificate = empirical_cvar(excesses, plan.beta);
    return plan;
}

void check_plan_invariants(const Plan& plan, const ProblemConfig& config) {
    const StrategyReport report = validate_strategy(plan.schedule, plan.vcc, config);
    if (!report.empty())
        throw SolverError("planner produced an invalid strategy:\n" + report.summary());
    const double f = plan_cost(plan.vcc, config);
    if (std::abs(f - plan.objective) > 1e-6 * std::max(1.0, std::abs(plan.objective)))
        throw SolverError("planner objective " + std::to_string(plan.objective) +
                          " disagrees with plan_cost " + std::to_string(f));
    if (plan.kind != PlanKind::PerfectForecast && plan.cvar_certificate > kResidualTol)
        throw SolverError("empirical CVaR certificate failed: " +
                          std::to_string(plan.cvar_certificate));
}

} // namespace

Plan plan_day_ahead(const ProblemConfig& config, const SampleSet& samples,
                    const SupportSet& support, const PlannerOptions& options) {
    DayAheadModel model = build_dro_lp(config, samples, support, options.tier);
    const auto start = std::chrono::steady_clock::now();
    const LpSolution sol = solve_lp(model.lp, options.solver);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sol.status == SolveStatus::Infeasible)
        throw InfeasibleError("day-ahead model infeasible at beta=" +
                              std::to_string(config.beta) + ", epsilon=" +
                              std::to_string(config.epsilon));
    if (sol.status != SolveStatus::Optimal)
        throw SolverError("day-ahead solve ended with status " + to_string(sol.status));
    Plan plan = extract_plan(model, sol, config, samples,
                             config.epsilon == 0.0 ? PlanKind::Saa : PlanKind::Dro, seconds);
    check_plan_invariants(plan, config);
    return plan;
}

Plan plan_saa(const ProblemConfig& config, const SampleSet& samples,
              const SupportSet& support, const PlannerOptions& options) {
    ProblemConfig saa = config;
    saa.epsilon = 0.0;
    Plan plan = plan_day_ahead(saa, samples, support, options);
    plan.kind = PlanKind::Saa;
    return plan;
}

Plan plan_perfect_forecast(const ProblemConfig& config, const LoadGrid& scenario,
                           const SolverOptions& options) {
    config.validate();
    if (scenario.hours() != config.submission_hours ||
        scenario.num_classes() != config.num_classes())
        throw ConfigError("plan_perfect_forecast: scenario grid mismatch");
    for (double v : scenario.flat())
        if (v < 0.0) throw ConfigError("plan_perfect_forecast: negative scenario entry");

    const int K = config.submission_hours, C = config.num_classes();
    const int T = config.horizon(), D = config.clusters;

    DayAheadModel model; // reuse the layout bookkeeping for extraction
    model.dims = {K, C, T, D};
    model.tier = Tier::Full;
    model.beta = config.beta;
    model.epsilon = 0.0;
    LpModel& lp = model.lp;

    model.y_vars.resize(static_cast<size_t>(K) * C);
    model.y_cells.resize(static_cast<size_t>(K) * C);
    std::vector<std::vector<std::pair<int, double>>> load_terms(static_cast<size_t>(T) * D);
    for (int c = 1; c <= C; ++c)
        for (int k = 1; k <= K; ++k) {
            const int slot = model.y_slot(k, c);
            for (const TdCell& cell : feasible_cells(config.classes[c - 1], k, config)) {
                const int var =
                    lp.add_variable(cell_name("y", {k, c, cell.t, cell.d}), 0.0, kInf);
                model.y_vars[slot].push_back(var);
                model.y_cells[slot].push_back(cell);
                if (scenario.at(k, c) != 0.0)
                    load_terms[(cell.t - 1) + static_cast<size_t>(T) * (cell.d - 1)]
                        .emplace_back(var, scenario.at(k, c));
            }
        }
    model.v_start = lp.num_vars();
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            lp.add_variable(cell_name("v", {t, d}), 0.0, config.true_capacity.at(t, d),
                            config.carbon_price.at(t, d));
    model.q_var = lp.add_variable("q", 0.0, 0.0);
    model.lambda_var = lp.add_variable("lam", 0.0, 0.0);
    model.p_start = lp.num_vars();
    model.peak_start = lp.num_vars();
    for (int d = 1; d <= D; ++d)
        lp.add_variable(cell_name("pk", {d}), 0.0, kInf, config.infra_price[d - 1]);

    for (int c = 1; c <= C; ++c)
        for (int k = 1; k <= K; ++k) {
            const int slot = model.y_slot(k, c);
            lp.add_row(RowSense::GE, 1.0, model.y_vars[slot],
                       std::vector<double>(model.y_vars[slot].size(), 1.0));
        }
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t) {
            auto& terms = load_terms[(t - 1) + static_cast<size_t>(T) * (d - 1)];
            if (terms.empty()) continue;
            std::vector<int> vars;
            std::vector<double> coeffs;
            for (const auto& [var, s] : terms) {
                vars.push_back(var);
                coeffs.push_back(s);
            }
            vars.push_back(model.v_var(t, d));
            coeffs.push_back(-1.0);
            lp.add_row(RowSense::LE, 0.0, std::move(vars), std::move(coeffs));
        }
    for (int d = 1; d <= D; ++d)
        for (int t = 1; t <= T; ++t)
            lp.add_row(RowSense::GE, 0.0, {model.peak_start + (d - 1), model.v_var(t, d)},
                       {1.0, -1.0});

    const auto start = std::chrono::steady_clock::now();
    const LpSolution sol = solve_lp(lp, options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sol.status == SolveStatus::Infeasible)
        throw InfeasibleError(
            "perfect-forecast model infeasible: the scenario cannot be served within the "
            "true capacity in any admissible arrangement");
    if (sol.status != SolveStatus::Optimal)
        throw SolverError("perfect-forecast solve ended with status " + to_string(sol.status));

    SampleSet single;
    single.samples.push_back(scenario);
    Plan plan = extract_plan(model, sol, config, single, PlanKind::PerfectForecast, seconds);
    plan.num_samples = 1;
    check_plan_invariants(plan, config);
    return plan;
}

std::string VerificationReport::summary() const {
    if (issues.empty()) return "certified";
    std::ostringstream os;
    for (const auto& issue : issues) os << issue << "\n";
    return os.str();
}

VerificationReport verify_certificate(const Plan& plan, const SampleSet& samples,
                                      const SupportSet& support,
                                      const ProblemConfig& config) {
    VerificationReport report;

    const StrategyReport strategy = validate_strategy(plan.schedule, plan.vcc, config);
    if (!strategy.empty()) report.issues.push_back("strategy: " + strategy.summary());

    const double f = plan_cost(plan.vcc, config);
    if (std::abs(f - plan.objective) > 1e-6 * std::max(1.0, std::abs(plan.objective)))
        report.issues.push_back("objective " + std::to_string(plan.objective) +
                                " != plan_cost " + std::to_string(f));

    if (plan.kind == PlanKind::PerfectForecast) {
        // Deterministic feasibility: the scenario load fits under the VCCs.
        for (const LoadGrid& s : samples.samples) {
            const double ex = excess(plan.schedule, plan.vcc, s);
            if (ex > kResidualTol)
                report.issues.push_back("scenario excess " + std::to_string(ex) + " > 0");
        }
        return report;
    }

    ProblemConfig as_solved = config;
    as_solved.beta = plan.beta;
    as_solved.epsilon = plan.epsilon;
    DayAheadModel model = build_dro_lp(as_solved, samples, support, plan.tier);

    // Reassemble the full variable vector from the plan's components.
    std::vector<double> x(static_cast<size_t>(model.lp.num_vars()), 0.0);
    const Dims& dm = model.dims;
    for (int c = 1; c <= dm.C; ++c)
        for (int k = 1; k <= dm.K; ++k) {
            const int slot = model.y_slot(k, c);
            for (size_t j = 0; j < model.y_vars[slot].size(); ++j) {
                const TdCell& cell = model.y_cells[slot][j];
                x[model.y_vars[slot][j]] = plan.schedule.at(k, c, cell.t, cell.d);
            }
        }
    for (int d = 1; d <= dm.D; ++d) {
        double peak = 0.0;
        for (int t = 1; t <= dm.T; ++t) {
            x[model.v_var(t, d)] = plan.vcc.at(t, d);
            peak = std::max(peak, plan.vcc.at(t, d));
        }
        x[model.peak_start + (d - 1)] = peak;
    }
    x[model.q_var] = plan.q;
    x[model.lambda_var] = plan.lambda;
    if (static_cast<int>(plan.p.size()) != model.num_samples) {
        report.issues.push_back("certificate p has " + std::to_string(plan.p.size()) +
                                " entries, expected " + std::to_string(model.num_samples));
        return report;
    }
    for (int i = 0; i < model.num_samples; ++i) x[model.p_start + i] = plan.p[i];
    const size_t eta_count = static_cast<size_t>(model.num_samples) *
                             model.reachable.size() * model.eta_rows;
    if (plan.eta.size() != eta_count) {
        report.issues.push_back("certificate eta has " + std::to_string(plan.eta.size()) +
                                " entries, expected " + std::to_string(eta_count) +
                                " (tier/support mismatch?)");
        return report;
    }
    for (size_t e = 0; e < eta_count; ++e) x[model.eta_start + e] = plan.eta[e];

    // Variable bounds.
    for (int j = 0; j < model.lp.num_vars(); ++j) {
        if (x[j] < model.lp.lower()[j] - 1e-9 || x[j] > model.lp.upper()[j] + 1e-9) {
            report.issues.push_back("variable " + model.lp.name(j) + " = " +
                                    std::to_string(x[j]) + " violates its bounds");
            if (report.issues.size() > 40) return report;
        }
    }
    // Every row of the reformulation, at residual tolerance 1e-6.
    for (int i = 0; i < model.lp.num_rows(); ++i) {
        const double viol = model.lp.row_violation(model.lp.rows()[i], x);
        if (viol > kResidualTol) {
            report.issues.push_back("row " + std::to_string(i) + " violated by " +
                                    std::to_string(viol));
            if (report.issues.size() > 40) return report;
        }
    }

    // Empirical-CVaR certificate: the empirical distribution lies inside
    // every ambiguity set, so the robust constraint implies this one.
    std::vector<double> excesses(samples.count());
    for (int i = 0; i < samples.count(); ++i)
        excesses[i] = excess(plan.schedule, plan.vcc, samples.samples[i]);
    const double cvar = empirical_cvar(excesses, plan.beta);
    if (cvar > kResidualTol)
        report.issues.push_back("empirical CVaR of excess = " + std::to_string(cvar) +
                                " > 0");
    return report;
}

} // namespace dcsched
