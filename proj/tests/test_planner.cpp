#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dcsched/planner.hpp"

using namespace dcsched;

namespace {

// K=2, C=1, T=3, D=1, h=1: the smallest instance with real flexibility.
ProblemConfig micro_config() {
    ProblemConfig cfg;
    cfg.submission_hours = 2;
    cfg.clusters = 1;
    cfg.classes = {{1, 1, {1}}};
    cfg.true_capacity = ClusterGrid(3, 1, 2.0);
    cfg.carbon_price = ClusterGrid(3, 1, 1.0);
    cfg.carbon_price.at(2, 1) = 0.5; // hour 2 is cheap
    cfg.infra_price = {1.0};
    cfg.beta = 0.5;
    cfg.epsilon = 1e-2;
    return cfg;
}

SampleSet micro_samples() {
    SampleSet set;
    LoadGrid s1(2, 1), s2(2, 1);
    s1.at(1, 1) = 0.6;
    s1.at(2, 1) = 0.4;
    s2.at(1, 1) = 0.5;
    s2.at(2, 1) = 0.7;
    set.samples = {s1, s2};
    return set;
}

// A slightly larger fleet with two clusters and mixed flexibility.
ProblemConfig small_config(double beta = 0.3, double epsilon = 1e-3) {
    ProblemConfig cfg;
    cfg.submission_hours = 4;
    cfg.clusters = 2;
    cfg.classes = {{1, 2, {1}}, {2, 2, {1, 2}}};
    const int T = cfg.horizon();
    cfg.true_capacity = ClusterGrid(T, 2, 0.6);
    cfg.carbon_price = ClusterGrid(T, 2);
    for (int d = 1; d <= 2; ++d)
        for (int t = 1; t <= T; ++t)
            cfg.carbon_price.at(t, d) = 1.0 + 0.5 * std::sin(2.0 * M_PI * (t - 6.0 * (d - 1)) / 24.0);
    cfg.infra_price = {2.0, 2.0};
    cfg.beta = beta;
    cfg.epsilon = epsilon;
    return cfg;
}

SampleSet random_samples(int N, int K, int C, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.02, 0.2);
    SampleSet set;
    for (int i = 0; i < N; ++i) {
        LoadGrid s(K, C);
        double total = 0.0;
        for (double& v : s.flat()) {
            v = u(rng);
            total += v;
        }
        for (double& v : s.flat()) v /= total; // normalized daily shape
        set.samples.push_back(std::move(s));
    }
    return set;
}

} // namespace

TEST_CASE("build_dro_lp reproduces the documented model shape") {
    auto cfg = micro_config();
    auto samples = micro_samples();
    auto support = build_support_set(samples, 0.5, SupportKind::Box);
    REQUIRE(support.num_rows() == 4);

    auto model = build_dro_lp(cfg, samples, support, Tier::Full);
    CHECK(model.lp.num_vars() == 36);  // 4 y + 3 v + q + lam + 2 p + 24 eta + 1 peak
    CHECK(model.reachable.size() == 3);
    // budget + N*Tf positive part + 2*KC*N*Tf norm rows + KC coverage + TD peak
    CHECK(model.lp.num_rows() == 1 + 6 + 24 + 2 + 3);

    SUBCASE("sample outside the support is rejected") {
        SampleSet bad = samples;
        bad.samples[0].at(1, 1) = 100.0;
        CHECK_THROWS_AS(build_dro_lp(cfg, bad, support, Tier::Full), ConfigError);
    }
    SUBCASE("epsilon zero drops the lambda budget term") {
        cfg.epsilon = 0.0;
        auto saa_model = build_dro_lp(cfg, samples, support, Tier::Full);
        const LpRow& budget = saa_model.lp.rows()[0];
        for (size_t j = 0; j < budget.vars.size(); ++j)
            CHECK(budget.vars[j] != saa_model.lambda_var);
    }
}

TEST_CASE("plan_day_ahead returns a certified plan on the micro fleet") {
    auto cfg = micro_config();
    auto samples = micro_samples();
    auto support = build_support_set(samples, 0.5, SupportKind::Box);

    Plan plan = plan_day_ahead(cfg, samples, support);
    CHECK(plan.solver_status == SolveStatus::Optimal);
    CHECK(plan.kind == PlanKind::Dro);
    CHECK(plan.objective == doctest::Approx(plan_cost(plan.vcc, cfg)).epsilon(1e-9));
    CHECK(plan.cvar_certificate <= 1e-6);
    CHECK(validate_strategy(plan.schedule, plan.vcc, cfg).empty());

    auto report = verify_certificate(plan, samples, support, cfg);
    CHECK(report.ok());

    SUBCASE("perturbing the VCCs downward breaks the certificate") {
        Plan broken = plan;
        for (double& v : broken.vcc.flat()) v *= 0.9;
        auto bad = verify_certificate(broken, samples, support, cfg);
        CHECK_FALSE(bad.ok());
    }
    SUBCASE("a negated schedule cell is flagged") {
        Plan broken = plan;
        bool flipped = false;
        for (int k = 1; k <= 2 && !flipped; ++k)
            for (int t = k; t <= k + 1 && !flipped; ++t)
                if (broken.schedule.at(k, 1, t, 1) > 0.0) {
                    broken.schedule.at(k, 1, t, 1) *= -1.0;
                    flipped = true;
                }
        REQUIRE(flipped);
        auto bad = verify_certificate(broken, samples, support, cfg);
        CHECK_FALSE(bad.ok());
    }
}

TEST_CASE("single sample with beta=1 and epsilon=0 dominates the load") {
    auto cfg = micro_config();
    cfg.beta = 1.0;
    cfg.epsilon = 0.0;
    SampleSet one;
    one.samples = {micro_samples().samples[0]};
    auto support = build_support_set(one, 0.5, SupportKind::Box);

    Plan plan = plan_day_ahead(cfg, one, support);
    // E[F] <= 0 under a single atom forces v* >= aggregate load everywhere.
    CHECK(excess(plan.schedule, plan.vcc, one.samples[0]) <= 1e-8);
}

TEST_CASE("SAA equals plan_day_ahead at epsilon zero across seeds") {
    auto cfg = small_config(0.3, 5e-3);
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        auto samples = random_samples(6, 4, 2, seed);
        auto support = build_support_set(samples, 0.5, SupportKind::Box);

        ProblemConfig cfg0 = cfg;
        cfg0.epsilon = 0.0;
        Plan via_dro = plan_day_ahead(cfg0, samples, support);
        Plan via_saa = plan_saa(cfg, samples, support);
        CHECK(via_saa.objective ==
              doctest::Approx(via_dro.objective).epsilon(1e-6));
        CHECK(via_saa.kind == PlanKind::Saa);

        // Robustness is never free: DRO at eps > 0 costs at least as much.
        Plan dro = plan_day_ahead(cfg, samples, support);
        CHECK(dro.objective >= via_saa.objective - 1e-9);
    }
}

TEST_CASE("objective is monotone in epsilon and beta") {
    auto samples = random_samples(8, 4, 2, 99);
    auto support = build_support_set(samples, 0.5, SupportKind::Box);

    SUBCASE("nondecreasing in epsilon") {
        double prev = -1.0;
        for (double eps : {0.0, 1e-3, 8e-3, 5e-2}) {
            auto cfg = small_config(0.2, eps);
            Plan plan = plan_day_ahead(cfg, samples, support);
            CHECK(plan.objective >= prev - 1e-7 * std::max(1.0, prev));
            prev = plan.objective;
        }
    }
    SUBCASE("nonincreasing in beta") {
        double prev = std::numeric_limits<double>::infinity();
        for (double beta : {0.02, 0.2, 0.5}) {
            auto cfg = small_config(beta, 1e-3);
            Plan plan = plan_day_ahead(cfg, samples, support);
            CHECK(plan.objective <= prev + 1e-7 * std::max(1.0, plan.objective));
            prev = plan.objective;
        }
    }
}

TEST_CASE("tiers: conservative restricts, reduced shrinks, certificates hold") {
    auto cfg = small_config(0.25, 8e-3);
    auto samples = random_samples(6, 4, 2, 7);
    auto box = build_support_set(samples, 0.5, SupportKind::Box);
    auto sum = build_support_set(samples, 0.5, SupportKind::Sum);

    PlannerOptions full_opt;
    Plan full = plan_day_ahead(cfg, samples, box, full_opt);

    PlannerOptions cons_opt;
    cons_opt.tier = Tier::Conservative;
    Plan cons = plan_day_ahead(cfg, samples, box, cons_opt);

    PlannerOptions red_opt;
    red_opt.tier = Tier::Reduced;
    Plan red = plan_day_ahead(cfg, samples, sum, red_opt);

    // eta = 0 is feasible for the full model, so the restriction costs more.
    CHECK(cons.objective >= full.objective - 1e-9);
    // The sum support is a relaxation of the box, so its worst case is worse.
    CHECK(red.objective >= full.objective - 1e-9);

    CHECK(verify_certificate(full, samples, box, cfg).ok());
    CHECK(verify_certificate(cons, samples, box, cfg).ok());
    CHECK(verify_certificate(red, samples, sum, cfg).ok());

    SUBCASE("conservative solution extended with eta=0 passes full-tier rows") {
        auto model = build_dro_lp(cfg, samples, box, Tier::Full);
        Plan extended = cons;
        extended.tier = Tier::Full;
        extended.eta.assign(static_cast<size_t>(model.num_samples) *
                                model.reachable.size() * model.eta_rows,
                            0.0);
        CHECK(verify_certificate(extended, samples, box, cfg).ok());
    }
}

TEST_CASE("objective plateaus once epsilon dominates the support") {
    // For very large radii the worst case saturates at the support's
    // envelope, so the objective stops growing.
    auto samples = random_samples(5, 4, 2, 57);
    auto support = build_support_set(samples, 0.5, SupportKind::Box);
    auto big1 = small_config(0.2, 10.0);
    auto big2 = small_config(0.2, 100.0);
    Plan a = plan_day_ahead(big1, samples, support);
    Plan b = plan_day_ahead(big2, samples, support);
    CHECK(b.objective == doctest::Approx(a.objective).epsilon(1e-6));
    CHECK(b.objective >= a.objective - 1e-9);
}

TEST_CASE("replicating a constant sample does not change the plan") {
    auto cfg = small_config(0.4, 2e-3);
    SampleSet one;
    one.samples = {random_samples(1, 4, 2, 77).samples[0]};
    SampleSet many;
    for (int i = 0; i < 6; ++i) many.samples.push_back(one.samples[0]);
    auto support = build_support_set(one, 0.5, SupportKind::Box);
    Plan single = plan_day_ahead(cfg, one, support);
    Plan replicated = plan_day_ahead(cfg, many, support);
    CHECK(replicated.objective == doctest::Approx(single.objective).epsilon(1e-9));
}

TEST_CASE("scaling the cost signals scales the objective") {
    auto cfg = small_config(0.3, 1e-3);
    auto samples = random_samples(5, 4, 2, 31);
    auto support = build_support_set(samples, 0.5, SupportKind::Box);
    Plan base = plan_day_ahead(cfg, samples, support);

    const double alpha = 3.25;
    ProblemConfig scaled = cfg;
    for (double& r : scaled.carbon_price.flat()) r *= alpha;
    for (double& r : scaled.infra_price) r *= alpha;
    Plan rescaled = plan_day_ahead(scaled, samples, support);

    CHECK(rescaled.objective == doctest::Approx(alpha * base.objective).epsilon(1e-9));
    // The original optimizer stays optimal under scaling.
    CHECK(plan_cost(base.vcc, scaled) ==
          doctest::Approx(rescaled.objective).epsilon(1e-9));
}

TEST_CASE("perfect forecast oracle") {
    auto cfg = small_config(0.3, 8e-3);
    auto samples = random_samples(6, 4, 2, 17);
    auto support = build_support_set(samples, 0.5, SupportKind::Box);

    SUBCASE("zero scenario costs nothing") {
        LoadGrid zero(4, 2);
        Plan plan = plan_perfect_forecast(cfg, zero);
        CHECK(plan.objective == doctest::Approx(0.0));
        for (double v : plan.vcc.flat()) CHECK(v == doctest::Approx(0.0));
    }
    SUBCASE("oracle lower-bounds the DRO plan on covered scenarios") {
        Plan dro = plan_day_ahead(cfg, samples, support);
        for (const LoadGrid& s : samples.samples) {
            if (excess(dro.schedule, dro.vcc, s) > 0.0) continue;
            Plan oracle = plan_perfect_forecast(cfg, s);
            CHECK(oracle.objective <= dro.objective + 1e-8);
        }
    }
    SUBCASE("cheapest-hour routing on a two-hour toy") {
        // One class, delay 1, prices make hour 2 free: everything shifts.
        ProblemConfig toy;
        toy.submission_hours = 1;
        toy.clusters = 1;
        toy.classes = {{1, 1, {1}}};
        toy.true_capacity = ClusterGrid(2, 1, 5.0);
        toy.carbon_price = ClusterGrid(2, 1);
        toy.carbon_price.at(1, 1) = 2.0;
        toy.carbon_price.at(2, 1) = 0.1;
        toy.infra_price = {0.0};
        LoadGrid s(1, 1);
        s.at(1, 1) = 1.0;
        Plan plan = plan_perfect_forecast(toy, s);
        CHECK(plan.schedule.at(1, 1, 2, 1) == doctest::Approx(1.0));
        CHECK(plan.objective == doctest::Approx(0.1));
    }
    SUBCASE("min-price cells win on a two-cluster toy, matching enumeration") {
        ProblemConfig toy;
        toy.submission_hours = 1;
        toy.clusters = 2;
        toy.classes = {{1, 1, {1, 2}}};
        toy.true_capacity = ClusterGrid(2, 2, 5.0);
        toy.carbon_price = ClusterGrid(2, 2);
        toy.carbon_price.at(1, 1) = 2.0;
        toy.carbon_price.at(2, 1) = 1.2;
        toy.carbon_price.at(1, 2) = 0.7;
        toy.carbon_price.at(2, 2) = 1.5;
        toy.infra_price = {0.0, 0.0};
        LoadGrid s(1, 1);
        s.at(1, 1) = 1.0;
        Plan plan = plan_perfect_forecast(toy, s);
        // Enumerate discretized allocations over the four cells.
        double best = std::numeric_limits<double>::infinity();
        const int steps = 50;
        for (int a = 0; a <= steps; ++a)
            for (int b = 0; a + b <= steps; ++b)
                for (int c = 0; a + b + c <= steps; ++c) {
                    const int d = steps - a - b - c;
                    best = std::min(best, (2.0 * a + 1.2 * b + 0.7 * c + 1.5 * d) / steps);
                }
        CHECK(plan.objective == doctest::Approx(best));
        CHECK(plan.schedule.at(1, 1, 1, 2) == doctest::Approx(1.0));
    }
    SUBCASE("scenario exceeding all capacity is infeasible") {
        ProblemConfig tight = cfg;
        tight.true_capacity = ClusterGrid(cfg.horizon(), 2, 1e-4);
        CHECK_THROWS_AS(plan_perfect_forecast(tight, samples.samples[0]), InfeasibleError);
    }
}

TEST_CASE("infeasible day-ahead model raises a structured error") {
    auto cfg = micro_config();
    cfg.true_capacity = ClusterGrid(3, 1, 0.0); // nothing may run anywhere
    auto samples = micro_samples();
    auto support = build_support_set(samples, 0.5, SupportKind::Box);
    CHECK_THROWS_AS(plan_day_ahead(cfg, samples, support), InfeasibleError);
}
