#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "bowley/accounts.hpp"
#include "bowley/dynamics.hpp"

using namespace bowley;

namespace {
EconomyParams make_params(double e, double r, double omega, double w0 = 1.0,
                          double step = 1.0, double tol = 1e-9) {
    EconomyParams p;
    p.wage_bill = e;
    p.profit_rate = r;
    p.consumption_rate = omega;
    p.initial_wealth = w0;
    p.step = step;
    p.convergence_tol = tol;
    return p;
}
} // namespace

TEST_CASE("params validation", "[dynamics]") {
    CHECK_NOTHROW(make_params(1, 0.05, 0.25).validate());
    CHECK_THROWS_AS(make_params(-1, 0.05, 0.25).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, -0.05, 0.25).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 0.05, -0.25).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 0.05, 0.25, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 0.05, 0.25, 1.0, 0.0).validate(), std::invalid_argument);
    EconomyParams p = make_params(1, 0.05, 0.25);
    p.max_steps = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.max_steps = 10;
    p.convergence_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("one explicit step", "[dynamics]") {
    const EconomyParams p = make_params(1.0, 0.05, 0.25);

    SECTION("the fixed point maps to itself") {
        const StepResult s = step_single(5.0, p);
        CHECK(s.next_wealth == Catch::Approx(5.0).margin(1e-15));
        CHECK(s.record.consumption == Catch::Approx(1.25).margin(1e-15));
        CHECK(s.record.profit == Catch::Approx(0.25).margin(1e-15));
        CHECK(s.record.income == Catch::Approx(1.25).margin(1e-15));
        CHECK(s.record.income_rate == Catch::Approx(0.25).margin(1e-15));
        CHECK(s.record.bowley == Catch::Approx(0.8).margin(1e-15));
    }

    SECTION("below the fixed point wealth accumulates") {
        const StepResult s = step_single(4.0, p);
        CHECK(s.record.income == Catch::Approx(1.2).margin(1e-15));
        CHECK(s.record.consumption == Catch::Approx(1.0).margin(1e-15));
        CHECK(s.next_wealth == Catch::Approx(4.2).margin(1e-15));
    }

    SECTION("no wage bill and r = omega gives zero net flow") {
        const EconomyParams q = make_params(0.0, 0.1, 0.1, 7.0);
        CHECK(step_single(7.0, q).next_wealth == 7.0);
        CHECK(step_single(0.3, q).next_wealth == 0.3);
    }

    SECTION("an update out of the positive domain throws") {
        const EconomyParams q = make_params(0.0, 0.0, 0.9, 1.0, 2.0);
        CHECK_THROWS_AS(step_single(1.0, q), NonPositiveWealth);
        CHECK_THROWS_AS(step_single(-1.0, p), std::invalid_argument);
    }
}

TEST_CASE("closed-form steady state", "[dynamics]") {
    const NationalAccounts ss = steady_state(make_params(1.0, 0.05, 0.25));
    CHECK(ss.wealth == Catch::Approx(5.0).margin(1e-12));
    CHECK(ss.income == Catch::Approx(1.25).margin(1e-12));
    CHECK(ss.consumption == Catch::Approx(1.25).margin(1e-12));
    CHECK(shares_from_accounts(ss).bowley == Catch::Approx(0.8).margin(1e-12));
    CHECK(check_identities(ss, 1e-12).all_pass());

    const NationalAccounts no_profit = steady_state(make_params(1.0, 0.0, 0.2));
    CHECK(no_profit.wealth == Catch::Approx(5.0).margin(1e-12));
    CHECK(no_profit.income == Catch::Approx(1.0).margin(1e-12));
    CHECK(shares_from_accounts(no_profit).bowley == 1.0);

    // linear in the wage bill, share unchanged
    const NationalAccounts doubled = steady_state(make_params(2.0, 0.05, 0.25));
    CHECK(doubled.wealth == Catch::Approx(10.0).margin(1e-12));
    CHECK(shares_from_accounts(doubled).bowley == Catch::Approx(0.8).margin(1e-12));

    CHECK_THROWS_AS(steady_state(make_params(1.0, 0.25, 0.25)), NoSteadyState);
    CHECK_THROWS_AS(steady_state(make_params(1.0, 0.3, 0.25)), NoSteadyState);
    CHECK_THROWS_AS(steady_state(make_params(0.0, 0.05, 0.25)), NoSteadyState);
}

TEST_CASE("stability classification", "[dynamics]") {
    CHECK(stability_classify(make_params(1, 0.05, 0.25, 1, 1.0)) == Stability::Stable);
    CHECK(stability_classify(make_params(1, 0.05, 0.25, 1, 9.9)) == Stability::Stable);
    CHECK(stability_classify(make_params(1, 0.05, 0.25, 1, 10.0)) ==
          Stability::UnstableNumerical);
    CHECK(stability_classify(make_params(1, 0.05, 0.25, 1, 10.1)) ==
          Stability::UnstableNumerical);
    CHECK(stability_classify(make_params(1, 0.25, 0.25)) == Stability::UnstableEconomic);
    CHECK(stability_classify(make_params(1, 0.3, 0.25)) == Stability::UnstableEconomic);
}

TEST_CASE("simulate converges to the floating income rate", "[dynamics]") {
    const Trajectory traj = simulate_single(make_params(1.0, 0.05, 0.25, 1.0, 1.0, 1e-9));
    REQUIRE(traj.status == RunStatus::Converged);
    const TrajectoryPoint& last = traj.final_point();
    CHECK(std::fabs(last.bowley - 0.8) <= 1e-8);
    CHECK(std::fabs(last.income_rate - 0.25) <= 1e-9);
    CHECK(traj.steps_taken() > 0);
}

TEST_CASE("simulate at the fixed point converges immediately", "[dynamics]") {
    const Trajectory traj = simulate_single(make_params(1.0, 0.05, 0.25, 5.0));
    REQUIRE(traj.status == RunStatus::Converged);
    CHECK(traj.steps_taken() == 0);
    CHECK(traj.points.size() == 1);
    CHECK(traj.final_point().bowley == Catch::Approx(0.8).margin(1e-12));
}

TEST_CASE("simulate reports divergence without stepping", "[dynamics]") {
    const Trajectory econ = simulate_single(make_params(1.0, 0.3, 0.25));
    CHECK(econ.status == RunStatus::Diverged);
    CHECK(econ.diagnostic == "omega <= r");
    CHECK(econ.points.empty());

    const Trajectory num = simulate_single(make_params(1.0, 0.05, 0.25, 1.0, 10.1));
    CHECK(num.status == RunStatus::Diverged);
    CHECK(num.diagnostic.find("unstable step") != std::string::npos);
}

TEST_CASE("simulate runs out of steps when the budget is tiny", "[dynamics]") {
    EconomyParams p = make_params(1.0, 0.05, 0.25, 1.0);
    p.max_steps = 3;
    const Trajectory traj = simulate_single(p);
    CHECK(traj.status == RunStatus::MaxStepsReached);
    CHECK(traj.points.size() == 4);
}

TEST_CASE("trajectories are stock-flow consistent to the bit", "[dynamics]") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double r = unit(rng) * 0.1;
        const EconomyParams p = make_params(0.5 + 1.5 * unit(rng), r,
                                            r + 0.05 + 0.35 * unit(rng),
                                            0.1 + 10 * unit(rng));
        const Trajectory traj = simulate_single(p);
        REQUIRE(traj.status == RunStatus::Converged);
        for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
            const TrajectoryPoint& cur = traj.points[k];
            const TrajectoryPoint& next = traj.points[k + 1];
            CHECK(next.wealth == cur.wealth + p.step * (cur.income - cur.consumption));
            CHECK(cur.consumption == p.consumption_rate * cur.wealth);
            CHECK(cur.profit == p.profit_rate * cur.wealth);
            CHECK(cur.income == p.wage_bill + cur.profit);
        }
    }
}

TEST_CASE("emergence: the income rate floats to the consumption rate", "[dynamics]") {
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double r = 0.1 * unit(rng);
        const double omega = r + 0.05 + (0.5 - r - 0.05) * unit(rng);
        const double e = 0.5 + 1.5 * unit(rng);
        const EconomyParams p = make_params(e, r, omega, 0.1 + 20 * unit(rng));
        const Trajectory traj = simulate_single(p);
        REQUIRE(traj.status == RunStatus::Converged);
        const TrajectoryPoint& last = traj.final_point();
        CHECK(std::fabs(last.income_rate - omega) <= p.convergence_tol);
        CHECK(std::fabs(last.bowley - bowley_from_rates(r, omega)) <=
              10 * p.convergence_tol);
    }
}

TEST_CASE("converged wealth agrees with the closed form", "[dynamics]") {
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double r = 0.1 * unit(rng);
        const EconomyParams p = make_params(0.5 + 1.5 * unit(rng), r,
                                            r + 0.05 + 0.3 * unit(rng));
        const Trajectory traj = simulate_single(p);
        REQUIRE(traj.status == RunStatus::Converged);
        const double w_star = steady_state(p).wealth;
        CHECK(std::fabs(traj.final_point().wealth - w_star) <=
              p.convergence_tol * w_star);
    }
}

TEST_CASE("the limit is independent of initial wealth", "[dynamics]") {
    const std::vector<double> starts{0.01, 1.0, 5.0, 100.0, 1e6};
    std::vector<double> betas;
    for (double w0 : starts) {
        const Trajectory traj = simulate_single(make_params(1.0, 0.05, 0.25, w0));
        REQUIRE(traj.status == RunStatus::Converged);
        betas.push_back(traj.final_point().bowley);
    }
    for (double b : betas) CHECK(std::fabs(b - betas.front()) <= 1e-8);
}

TEST_CASE("trajectory ratios are scale invariant", "[dynamics]") {
    const EconomyParams base = make_params(1.3, 0.04, 0.21, 0.7);

    SECTION("power-of-two scaling is exact") {
        EconomyParams scaled = base;
        scaled.wage_bill *= 1024.0;
        scaled.initial_wealth *= 1024.0;
        const Trajectory a = simulate_single(base);
        const Trajectory b = simulate_single(scaled);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t k = 0; k < a.points.size(); ++k) {
            CHECK(a.points[k].income_rate == b.points[k].income_rate);
            CHECK(b.points[k].wealth == a.points[k].wealth * 1024.0);
        }
    }

    SECTION("decimal scaling stays within 1e-10") {
        EconomyParams scaled = base;
        scaled.wage_bill *= 1000.0;
        scaled.initial_wealth *= 1000.0;
        const Trajectory a = simulate_single(base);
        const Trajectory b = simulate_single(scaled);
        REQUIRE(a.status == RunStatus::Converged);
        REQUIRE(b.status == RunStatus::Converged);
        const std::size_t n = std::min(a.points.size(), b.points.size());
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::fabs(a.points[k].income_rate - b.points[k].income_rate) <= 1e-10);
            CHECK(std::fabs(a.points[k].bowley - b.points[k].bowley) <= 1e-10);
        }
    }
}

TEST_CASE("sweep over the plausible-rate box", "[dynamics]") {
    std::vector<SweepPoint> grid;
    for (int ri = 0; ri <= 6; ++ri)
        for (int oi = 0; oi < 2; ++oi)
            grid.push_back({1.0, 0.02 + 0.01 * ri, oi == 0 ? 0.20 : 0.25});

    const auto rows = sweep(grid, make_params(1.0, 0, 0));
    REQUIRE(rows.size() == grid.size());

    double beta_min = 1e9, beta_max = -1e9, max_residual = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].status == RunStatus::Converged);
        CHECK(rows[i].point.profit_rate == grid[i].profit_rate);  // grid order kept
        CHECK(rows[i].point.consumption_rate == grid[i].consumption_rate);
        beta_min = std::min(beta_min, rows[i].emergent_bowley);
        beta_max = std::max(beta_max, rows[i].emergent_bowley);
        max_residual = std::max(max_residual, rows[i].residual);
    }
    CHECK(max_residual <= 1e-8);
    CHECK(beta_min == Catch::Approx(0.60).margin(1e-6));
    CHECK(beta_max == Catch::Approx(0.92).margin(1e-6));
}

TEST_CASE("sweep marks diverging rows and keeps going", "[dynamics]") {
    const std::vector<SweepPoint> grid{{1.0, 0.05, 0.25}, {1.0, 0.3, 0.25},
                                       {1.0, 0.0, 0.2}};
    const auto rows = sweep(grid, make_params(1.0, 0, 0));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].status == RunStatus::Converged);
    CHECK(rows[1].status == RunStatus::Diverged);
    CHECK(std::isnan(rows[1].emergent_bowley));
    CHECK(std::isnan(rows[1].residual));
    CHECK(rows[2].status == RunStatus::Converged);
    CHECK(rows[2].emergent_bowley == 1.0);  // no profit flow at all

    CHECK_THROWS_AS(sweep({}, make_params(1.0, 0, 0)), std::invalid_argument);
}

TEST_CASE("random stable boxes keep sweep residuals tiny", "[dynamics]") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SweepPoint> grid;
    for (int i = 0; i < 100; ++i) {
        const double r = 0.1 * unit(rng);
        grid.push_back({0.5 + 1.5 * unit(rng), r, r + 0.05 + 0.35 * unit(rng)});
    }
    for (const auto& row : sweep(grid, make_params(1.0, 0, 0))) {
        REQUIRE(row.status == RunStatus::Converged);
        CHECK(row.residual <= 1e-6);
    }
}
