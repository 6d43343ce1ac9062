#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <Eigen/Dense>

#include <fstream>
#include <functional>
#include <random>

#include "dcsched/lp_model.hpp"
#include "dcsched/solver.hpp"

using namespace dcsched;

TEST_CASE("minimize x subject to x >= 3") {
    LpModel m;
    int x = m.add_variable("x", 0.0, kInf, 1.0);
    m.add_row(RowSense::GE, 3.0, {x}, {1.0});
    auto sol = solve_lp(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.x[x] == doctest::Approx(3.0));
    CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("infeasible toy: x <= 0 and x >= 1") {
    LpModel m;
    int x = m.add_variable("x", -kInf, kInf, 1.0);
    m.add_row(RowSense::LE, 0.0, {x}, {1.0});
    m.add_row(RowSense::GE, 1.0, {x}, {1.0});
    auto sol = solve_lp(m);
    CHECK(sol.status == SolveStatus::Infeasible);
    CHECK(sol.x.empty());
}

TEST_CASE("unbounded: minimize -x, x >= 0") {
    LpModel m;
    m.add_variable("x", 0.0, kInf, -1.0);
    auto sol = solve_lp(m);
    CHECK(sol.status == SolveStatus::Unbounded);
}

TEST_CASE("unbounded through a row") {
    LpModel m;
    int x = m.add_variable("x", 0.0, kInf, -1.0);
    int y = m.add_variable("y", 0.0, kInf, 0.0);
    m.add_row(RowSense::LE, 1.0, {x, y}, {1.0, -1.0});
    auto sol = solve_lp(m);
    CHECK(sol.status == SolveStatus::Unbounded);
}

TEST_CASE("equality rows and free variables") {
    // min x + 2y  s.t.  x + y = 4,  x - y = 2  ->  x = 3, y = 1
    LpModel m;
    int x = m.add_variable("x", -kInf, kInf, 1.0);
    int y = m.add_variable("y", -kInf, kInf, 2.0);
    m.add_row(RowSense::EQ, 4.0, {x, y}, {1.0, 1.0});
    m.add_row(RowSense::EQ, 2.0, {x, y}, {1.0, -1.0});
    auto sol = solve_lp(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.x[x] == doctest::Approx(3.0));
    CHECK(sol.x[y] == doctest::Approx(1.0));
}

TEST_CASE("upper-bounded variables and bound flips") {
    // max x + y with x,y in [0,2], x + y <= 3  (min of negation)
    LpModel m;
    int x = m.add_variable("x", 0.0, 2.0, -1.0);
    int y = m.add_variable("y", 0.0, 2.0, -1.0);
    m.add_row(RowSense::LE, 3.0, {x, y}, {1.0, 1.0});
    auto sol = solve_lp(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-3.0));
}

TEST_CASE("degenerate diet-style LP") {
    // min 2a + 3b  s.t. a + b >= 10, a >= 4, b >= 2 -> a=8, b=2
    LpModel m;
    int a = m.add_variable("a", 0.0, kInf, 2.0);
    int b = m.add_variable("b", 0.0, kInf, 3.0);
    m.add_row(RowSense::GE, 10.0, {a, b}, {1.0, 1.0});
    m.add_row(RowSense::GE, 4.0, {a}, {1.0});
    m.add_row(RowSense::GE, 2.0, {b}, {1.0});
    auto sol = solve_lp(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(22.0));
}

namespace {

// Random dense-ish LPs with a known feasible point, cross-checked for
// optimality via weak duality on the residual check only (the adapter
// verifies feasibility; optimality is sanity-checked by perturbation).
LpModel random_lp(std::mt19937_64& rng, int n, int mrows) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.1, 2.0);
    LpModel m;
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j) {
        x0[j] = pos(rng);
        m.add_variable("x" + std::to_string(j), 0.0, 5.0, coef(rng));
    }
    for (int i = 0; i < mrows; ++i) {
        std::vector<int> vars;
        std::vector<double> coeffs;
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            const double c = coef(rng);
            if (std::abs(c) < 0.4) continue;
            vars.push_back(j);
            coeffs.push_back(c);
            act += c * x0[j];
        }
        if (vars.empty()) continue;
        // Keep x0 feasible so the instance is never infeasible.
        m.add_row(i % 2 == 0 ? RowSense::LE : RowSense::GE, act + (i % 2 == 0 ? 0.5 : -0.5),
                  vars, coeffs);
    }
    return m;
}

} // namespace

TEST_CASE("random bounded LPs solve with verified residuals") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        LpModel m = random_lp(rng, 12, 18);
        auto sol = solve_lp(m);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.max_residual <= 1e-6);
        // No strictly improving single-coordinate move of size 1e-4 exists
        // inside the bounds without violating some row: a cheap local
        // optimality probe.
        for (int j = 0; j < m.num_vars(); ++j) {
            if (m.objective()[j] >= 0.0) continue;
            if (sol.x[j] >= m.upper()[j] - 1e-9) continue;
            auto xp = sol.x;
            xp[j] += 1e-4;
            bool feasible = true;
            for (const auto& row : m.rows())
                if (m.row_violation(row, xp) > 1e-9) { feasible = false; break; }
            CHECK_FALSE(feasible);
        }
    }
}

TEST_CASE("transportation equality LP has integral optimum") {
    // 2 sources (supply 3, 4), 3 sinks (demand 2, 2, 3), costs chosen so the
    // optimum is unique: min-cost flow value computed by hand = 2*1+1*2+2*2+...
    // costs: c = [[8,6,10],[9,12,13]] -> optimal cost 100 (classic example).
    const double c[2][3] = {{8, 6, 10}, {9, 12, 13}};
    const double supply[2] = {3, 4};
    const double demand[3] = {2, 2, 3};
    LpModel m;
    int v[2][3];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            v[i][j] = m.add_variable("g" + std::to_string(i) + std::to_string(j), 0.0, kInf,
                                     c[i][j]);
    for (int i = 0; i < 2; ++i)
        m.add_row(RowSense::EQ, supply[i], {v[i][0], v[i][1], v[i][2]}, {1, 1, 1});
    for (int j = 0; j < 3; ++j)
        m.add_row(RowSense::EQ, demand[j], {v[0][j], v[1][j]}, {1, 1});
    auto sol = solve_lp(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    // Oracle: enumerate vertices via brute force over basic partitions is
    // overkill; the optimum for this classic instance is 10*0+6*2+8*1+9*...
    // computed by exhaustive search below.
    double best = 1e18;
    for (double a = 0; a <= 2.01; a += 0.5)      // flow s1->d1
        for (double b = 0; b <= 2.01; b += 0.5)  // flow s1->d2
            for (double e = 0; e <= 3.01; e += 0.5) { // flow s1->d3
                if (a + b + e > 3.0 + 1e-9) continue;
                if (std::abs(a + b + e - 3.0) > 1e-9) continue;
                const double g = 2 - a, h = 2 - b, i2 = 3 - e;
                if (g < -1e-9 || h < -1e-9 || i2 < -1e-9) continue;
                if (std::abs(g + h + i2 - 4.0) > 1e-9) continue;
                best = std::min(best, 8 * a + 6 * b + 10 * e + 9 * g + 12 * h + 13 * i2);
            }
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-9));
}

namespace {

// Exact optimum by vertex enumeration: every choice of n active constraints
// (rows as equalities plus variable bounds) yields a candidate vertex; the
// feasible one with the lowest objective is the LP optimum. Exponential, so
// only for tiny boxed instances.
double enumerate_optimum(const LpModel& m) {
    const int n = m.num_vars();
    struct Plane {
        Eigen::RowVectorXd a;
        double rhs;
    };
    std::vector<Plane> planes;
    for (const auto& row : m.rows()) {
        Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
        for (size_t j = 0; j < row.vars.size(); ++j) a[row.vars[j]] = row.coeffs[j];
        planes.push_back({a, row.rhs});
    }
    for (int j = 0; j < n; ++j) {
        Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
        a[j] = 1.0;
        planes.push_back({a, m.lower()[j]});
        planes.push_back({a, m.upper()[j]});
    }
    const int p = static_cast<int>(planes.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(n);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            Eigen::MatrixXd A(n, n);
            Eigen::VectorXd b(n);
            for (int i = 0; i < n; ++i) {
                A.row(i) = planes[idx[i]].a;
                b[i] = planes[idx[i]].rhs;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd x = lu.solve(b);
            std::vector<double> xv(x.data(), x.data() + n);
            for (int j = 0; j < n; ++j)
                if (xv[j] < m.lower()[j] - 1e-7 || xv[j] > m.upper()[j] + 1e-7) return;
            for (const auto& row : m.rows())
                if (m.row_violation(row, xv) > 1e-7) return;
            best = std::min(best, m.objective_value(xv));
            return;
        }
        for (int i = start; i < p; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

TEST_CASE("simplex matches vertex enumeration on tiny boxed LPs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.2, 1.5);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 2 + rep % 3;
        const int rows = 1 + rep % 4;
        LpModel m;
        std::vector<double> x0(n);
        for (int j = 0; j < n; ++j) {
            x0[j] = pos(rng);
            m.add_variable("x" + std::to_string(j), 0.0, 2.0, coef(rng));
        }
        for (int i = 0; i < rows; ++i) {
            std::vector<int> vars;
            std::vector<double> coeffs;
            double act = 0.0;
            for (int j = 0; j < n; ++j) {
                const double c = coef(rng);
                vars.push_back(j);
                coeffs.push_back(c);
                act += c * x0[j];
            }
            // x0 stays feasible, so the instance is solvable.
            m.add_row(i % 3 == 0 ? RowSense::GE : RowSense::LE,
                      act + (i % 3 == 0 ? -0.3 : 0.3), vars, coeffs);
        }
        auto sol = solve_lp(m);
        REQUIRE(sol.status == SolveStatus::Optimal);
        const double oracle = enumerate_optimum(m);
        CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("unknown solver backends are rejected") {
    LpModel m;
    m.add_variable("x", 0.0, 1.0, 1.0);
    setenv("DCSCHED_SOLVER", "gurobi", 1);
    CHECK_THROWS_AS(solve_lp(m), SolverError);
    setenv("DCSCHED_SOLVER", "simplex", 1);
    CHECK(solve_lp(m).status == SolveStatus::Optimal);
    unsetenv("DCSCHED_SOLVER");
}

TEST_CASE("lp file export writes a parseable model") {
    LpModel m;
    int x = m.add_variable("x", 0.0, 2.0, 1.5);
    int y = m.add_variable("y", -kInf, kInf, -1.0);
    m.add_row(RowSense::LE, 4.0, {x, y}, {1.0, 2.0});
    m.add_row(RowSense::EQ, 1.0, {y}, {1.0});
    const std::string path = "test_export.lp";
    m.write_lp_file(path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("y free") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
