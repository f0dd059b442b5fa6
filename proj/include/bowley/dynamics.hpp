#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bowley/accounts.hpp"
#include "bowley/errors.hpp"

namespace bowley {

/// Exogenous inputs of the single-economy wealth flow. The wage bill, the
/// profit rate and the consumption rate are fixed; the income rate floats
/// with wealth:
///
///   C = omega * W,  pi = r * W,  Y = e + pi,
///   W' = W + delta * (Y - C)
///
/// so dW/dt = e + (r - omega) * W, with fixed point W* = e / (omega - r).
struct EconomyParams {
    double wage_bill = 1.0;          // e, currency per model year
    double profit_rate = 0.05;       // r, per year
    double consumption_rate = 0.25;  // omega, per year
    double initial_wealth = 1.0;     // W0
    double step = 1.0;               // delta, years per integration step
    long max_steps = 100000;
    double convergence_tol = 1e-9;   // on |gamma - omega|

    void validate() const {
        require(std::isfinite(wage_bill) && wage_bill >= 0.0,
                "wage_bill must be finite and nonnegative");
        require(std::isfinite(profit_rate) && profit_rate >= 0.0,
                "profit_rate must be finite and nonnegative");
        require(std::isfinite(consumption_rate) && consumption_rate >= 0.0,
                "consumption_rate must be finite and nonnegative");
        require(std::isfinite(initial_wealth) && initial_wealth > 0.0,
                "initial_wealth must be finite and positive");
        require(std::isfinite(step) && step > 0.0, "step must be finite and positive");
        require(max_steps >= 1, "max_steps must be at least 1");
        require(std::isfinite(convergence_tol) && convergence_tol > 0.0,
                "convergence_tol must be finite and positive");
    }

private:
    static void require(bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("EconomyParams: ") + what);
    }
};

enum class Stability {
    Stable,             // omega > r and delta < 2 / (omega - r)
    UnstableEconomic,   // omega <= r: no positive fixed point
    UnstableNumerical,  // fixed point exists but the explicit step oscillates away
};

/// The explicit update is W' = W (1 - delta (omega - r)) + delta e, a
/// linear recurrence that contracts iff |1 - delta (omega - r)| < 1.
inline Stability stability_classify(const EconomyParams& p) {
    p.validate();
    if (p.consumption_rate <= p.profit_rate) return Stability::UnstableEconomic;
    if (p.step >= 2.0 / (p.consumption_rate - p.profit_rate))
        return Stability::UnstableNumerical;
    return Stability::Stable;
}

struct TrajectoryPoint {
    double time;
    double wealth;       // W
    double consumption;  // C = omega * W
    double profit;       // pi = r * W
    double wage_bill;    // e
    double income;       // Y = e + pi
    double income_rate;  // gamma = Y / W
    double bowley;       // beta = e / Y (NaN when Y = 0)
};

enum class RunStatus { Converged, MaxStepsReached, Diverged };

inline constexpr std::string_view run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::MaxStepsReached: return "max_steps";
        case RunStatus::Diverged: return "diverged";
    }
    return "?";
}

struct Trajectory {
    RunStatus status = RunStatus::Diverged;
    std::string diagnostic;               // set when status == Diverged
    std::vector<TrajectoryPoint> points;  // point k is the state at time k * step

    const TrajectoryPoint& final_point() const {
        if (points.empty()) throw std::logic_error("Trajectory: no points recorded");
        return points.back();
    }

    long steps_taken() const {
        return points.empty() ? 0 : static_cast<long>(points.size()) - 1;
    }
};

namespace detail {
inline TrajectoryPoint flow_snapshot(double time, double wealth,
                                     const EconomyParams& p) {
    TrajectoryPoint rec;
    rec.time = time;
    rec.wealth = wealth;
    rec.consumption = p.consumption_rate * wealth;
    rec.profit = p.profit_rate * wealth;
    rec.wage_bill = p.wage_bill;
    rec.income = p.wage_bill + rec.profit;
    rec.income_rate = rec.income / wealth;
    rec.bowley = rec.wage_bill / rec.income;
    return rec;
}

inline double advance_wealth(double wealth, const TrajectoryPoint& rec,
                             const EconomyParams& p) {
    return wealth + p.step * (rec.income - rec.consumption);
}
} // namespace detail

struct StepResult {
    double next_wealth;
    TrajectoryPoint record;
};

/// One explicit step of the flow from the given wealth. Throws
/// NonPositiveWealth when the update leaves the positive domain.
inline StepResult step_single(double wealth, const EconomyParams& p,
                              double time = 0.0) {
    p.validate();
    if (!std::isfinite(wealth) || wealth <= 0.0)
        throw std::invalid_argument("step_single: wealth must be finite and positive");
    const TrajectoryPoint rec = detail::flow_snapshot(time, wealth, p);
    const double next = detail::advance_wealth(wealth, rec, p);
    if (!std::isfinite(next) || next <= 0.0)
        throw NonPositiveWealth("step_single: wealth left the positive domain at t=" +
                                std::to_string(time));
    return {next, rec};
}

/// Closed-form fixed point W* = e / (omega - r), returned as a full
/// accounting snapshot. Consumption is set equal to income, which is what
/// the fixed point means; that keeps the flow identities exact at any
/// currency scale.
inline NationalAccounts steady_state(const EconomyParams& p) {
    p.validate();
    if (p.consumption_rate <= p.profit_rate)
        throw NoSteadyState(
            "steady_state: no positive fixed point, consumption rate must exceed "
            "profit rate");
    if (p.wage_bill == 0.0)
        throw NoSteadyState("steady_state: zero wage bill collapses wealth to zero");
    const double wealth = p.wage_bill / (p.consumption_rate - p.profit_rate);
    const double profit = p.profit_rate * wealth;
    const double income = p.wage_bill + profit;
    return {income, income, p.wage_bill, profit, wealth};
}

/// Iterates the flow until the income rate meets the consumption rate.
///
/// The stop threshold is tightened by the contraction gap (omega - r) so
/// that a Converged trajectory's wealth always matches the closed-form
/// fixed point to within convergence_tol relative error; |gamma - omega|
/// itself ends at or below convergence_tol either way.
inline Trajectory simulate_single(const EconomyParams& p) {
    p.validate();
    Trajectory traj;
    switch (stability_classify(p)) {
        case Stability::UnstableEconomic:
            traj.status = RunStatus::Diverged;
            traj.diagnostic = "omega <= r";
            return traj;
        case Stability::UnstableNumerical:
            traj.status = RunStatus::Diverged;
            traj.diagnostic = "unstable step size: delta >= 2/(omega - r)";
            return traj;
        case Stability::Stable:
            break;
    }

    const double gap = p.consumption_rate - p.profit_rate;
    const double stop_tol = 0.5 * p.convergence_tol * std::min(1.0, gap);
    double wealth = p.initial_wealth;
    for (long k = 0;; ++k) {
        const TrajectoryPoint rec =
            detail::flow_snapshot(static_cast<double>(k) * p.step, wealth, p);
        traj.points.push_back(rec);
        if (std::fabs(rec.income_rate - p.consumption_rate) <= stop_tol) {
            traj.status = RunStatus::Converged;
            return traj;
        }
        if (k == p.max_steps) {
            traj.status = RunStatus::MaxStepsReached;
            return traj;
        }
        const double next = detail::advance_wealth(wealth, rec, p);
        if (!std::isfinite(next) || next <= 0.0) {
            traj.status = RunStatus::Diverged;
            traj.diagnostic = "wealth depleted at t=" + std::to_string(rec.time);
            return traj;
        }
        wealth = next;
    }
}

struct SweepPoint {
    double wage_bill;
    double profit_rate;
    double consumption_rate;
};

struct SweepRow {
    SweepPoint point;
    RunStatus status = RunStatus::Diverged;
    std::string diagnostic;
    long steps = 0;
    double emergent_bowley = std::numeric_limits<double>::quiet_NaN();
    double predicted_bowley = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
};

/// One simulate_single per grid point. Row order always matches grid
/// order; a diverging point marks its row and never aborts the sweep.
inline std::vector<SweepRow> sweep(const std::vector<SweepPoint>& grid,
                                   const EconomyParams& base) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const SweepPoint& pt : grid) {
        EconomyParams p = base;
        p.wage_bill = pt.wage_bill;
        p.profit_rate = pt.profit_rate;
        p.consumption_rate = pt.consumption_rate;

        SweepRow row;
        row.point = pt;
        if (pt.consumption_rate > 0.0)
            row.predicted_bowley = bowley_from_rates(pt.profit_rate, pt.consumption_rate);
        const Trajectory traj = simulate_single(p);
        row.status = traj.status;
        row.diagnostic = traj.diagnostic;
        row.steps = traj.steps_taken();
        if (!traj.points.empty()) row.emergent_bowley = traj.final_point().bowley;
        if (traj.status == RunStatus::Converged)
            row.residual = std::fabs(row.emergent_bowley - row.predicted_bowley);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bowley
