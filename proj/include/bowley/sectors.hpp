#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bowley/errors.hpp"

namespace bowley {

struct DriftPoint {
    double year;
    double multiplier;
};

/// Piecewise-linear multiplier over model years, clamped to the first and
/// last points outside their range. An empty schedule is the constant 1.
struct DriftSchedule {
    std::vector<DriftPoint> points;

    bool empty() const { return points.empty(); }

    double at(double year) const {
        if (points.empty()) return 1.0;
        if (year <= points.front().year) return points.front().multiplier;
        if (year >= points.back().year) return points.back().multiplier;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (year <= points[i].year) {
                const DriftPoint& a = points[i - 1];
                const DriftPoint& b = points[i];
                const double w = (year - a.year) / (b.year - a.year);
                return a.multiplier + w * (b.multiplier - a.multiplier);
            }
        }
        return points.back().multiplier;
    }

    void validate(const std::string& what) const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i].year))
                throw std::invalid_argument(what + ": drift year must be finite");
            if (!std::isfinite(points[i].multiplier) || points[i].multiplier < 0.0)
                throw std::invalid_argument(what +
                                            ": drift multiplier must be finite and nonnegative");
            if (i > 0 && points[i].year <= points[i - 1].year)
                throw std::invalid_argument(what + ": drift years must be strictly increasing");
        }
    }
};

/// One sector of a scenario. Non-absorber wage bills and profits follow
/// their drift schedules. The absorber's wage bill is a state variable
/// relaxing toward aggregate flow balance, and its profit is the residual
/// claim r*W minus the other sectors' profits, so aggregate profit is
/// exactly the profit rate times wealth at every step.
struct SectorSpec {
    std::string name;
    double initial_wage_bill = 0.0;  // e_i at t = 0
    double initial_profit = 0.0;     // pi_i at t = 0; must stay 0 on the absorber
    DriftSchedule wage_drift;
    DriftSchedule profit_drift;      // must stay empty on the absorber
    bool residual_absorber = false;
};

struct SectorScenario {
    std::vector<SectorSpec> sectors;
    double profit_rate = 0.05;       // r, per year
    double consumption_rate = 0.25;  // omega, per year
    double horizon = 38.0;           // model years simulated
    double step = 0.05;              // delta, years
    double relaxation = 2.0;         // lambda, per year
    double initial_wealth = 0.0;     // 0 selects the balanced start sum(e0)/(omega-r)

    std::size_t absorber_index() const {
        for (std::size_t i = 0; i < sectors.size(); ++i)
            if (sectors[i].residual_absorber) return i;
        throw std::invalid_argument("SectorScenario: no residual absorber");
    }

    void validate() const {
        if (sectors.empty())
            throw std::invalid_argument("SectorScenario: no sectors");
        std::size_t absorbers = 0;
        double total_e0 = 0.0;
        for (const SectorSpec& s : sectors) {
            if (s.name.empty())
                throw std::invalid_argument("SectorScenario: sector name must not be empty");
            for (char c : s.name)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                    throw std::invalid_argument("SectorScenario: sector name '" + s.name +
                                                "' must be alphanumeric/underscore");
            for (const SectorSpec& other : sectors)
                if (&other != &s && other.name == s.name)
                    throw std::invalid_argument("SectorScenario: duplicate sector name '" +
                                                s.name + "'");
            if (!std::isfinite(s.initial_wage_bill) || s.initial_wage_bill < 0.0)
                throw std::invalid_argument("SectorScenario: " + s.name +
                                            ": initial wage bill must be finite and nonnegative");
            if (!std::isfinite(s.initial_profit) || s.initial_profit < 0.0)
                throw std::invalid_argument("SectorScenario: " + s.name +
                                            ": initial profit must be finite and nonnegative");
            s.wage_drift.validate("SectorScenario: " + s.name + " wage drift");
            s.profit_drift.validate("SectorScenario: " + s.name + " profit drift");
            if (s.residual_absorber) {
                ++absorbers;
                if (s.initial_profit != 0.0 || !s.profit_drift.empty())
                    throw std::invalid_argument(
                        "SectorScenario: " + s.name +
                        ": absorber profit is endogenous (r*W minus the other sectors'"
                        " profits); give it no pi0 and no profit drift");
            }
            total_e0 += s.initial_wage_bill;
        }
        if (absorbers != 1)
            throw std::invalid_argument(
                "SectorScenario: exactly one sector must be the residual absorber");
        if (!(consumption_rate > profit_rate) || !std::isfinite(consumption_rate) ||
            !std::isfinite(profit_rate) || profit_rate < 0.0)
            throw std::invalid_argument(
                "SectorScenario: requires omega > r >= 0 for a balanced aggregate");
        if (!std::isfinite(relaxation) || relaxation <= 0.0)
            throw std::invalid_argument("SectorScenario: lambda must be finite and positive");
        if (!std::isfinite(horizon) || horizon <= 0.0)
            throw std::invalid_argument("SectorScenario: horizon must be finite and positive");
        if (!std::isfinite(step) || step <= 0.0)
            throw std::invalid_argument("SectorScenario: step must be finite and positive");
        if (horizon / step > 1e8)
            throw std::invalid_argument("SectorScenario: horizon/step exceeds 1e8 steps");
        if (step >= 2.0 / (consumption_rate - profit_rate))
            throw std::invalid_argument(
                "SectorScenario: step too large for the wealth flow (delta >= 2/(omega - r))");
        if (step * relaxation >= 2.0)
            throw std::invalid_argument(
                "SectorScenario: step too large for the absorber relaxation (delta*lambda >= 2)");
        if (!std::isfinite(initial_wealth) || initial_wealth < 0.0)
            throw std::invalid_argument(
                "SectorScenario: initial wealth must be finite and nonnegative (0 = balanced)");
        if (initial_wealth == 0.0 && total_e0 <= 0.0)
            throw std::invalid_argument(
                "SectorScenario: balanced start needs a positive total initial wage bill");
    }
};

struct SectorPoint {
    double wage_bill;
    double profit;
    double income;
    double bowley;
};

struct SectoralStep {
    double time;
    double wealth;
    double wage_bill;    // sum over sectors
    double profit;       // sum over sectors; equals r * wealth by construction
    double income;       // wage_bill + profit
    double consumption;  // omega * wealth
    double bowley;       // wage_bill / income
    std::vector<SectorPoint> sectors;  // scenario order
};

struct SectoralTrajectory {
    std::vector<std::string> sector_names;
    std::size_t absorber_index = 0;
    std::vector<SectoralStep> steps;
};

/// Runs the multi-sector scenario. Aggregate wealth follows the same
/// explicit flow as simulate_single with the summed wage bill, while the
/// absorber's wage bill relaxes toward the value that balances aggregate
/// consumption against aggregate income:
///
///   e_abs <- e_abs + delta * lambda * (omega*W - sum(pi) - sum_other(e) - e_abs)
///
/// Throws AbsorberNegative the first time that relaxation would push the
/// absorber's wage bill below zero, and NonPositiveWealth if aggregate
/// wealth leaves the positive domain.
inline SectoralTrajectory simulate_sectors(const SectorScenario& sc) {
    sc.validate();
    const std::size_t abs_idx = sc.absorber_index();
    const long n_steps = std::lround(sc.horizon / sc.step);

    double total_e0 = 0.0;
    for (const SectorSpec& s : sc.sectors) total_e0 += s.initial_wage_bill;
    double wealth = sc.initial_wealth > 0.0
                        ? sc.initial_wealth
                        : total_e0 / (sc.consumption_rate - sc.profit_rate);
    double absorber_wage = sc.sectors[abs_idx].initial_wage_bill;

    SectoralTrajectory traj;
    traj.absorber_index = abs_idx;
    for (const SectorSpec& s : sc.sectors) traj.sector_names.push_back(s.name);
    traj.steps.reserve(static_cast<std::size_t>(n_steps) + 1);

    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * sc.step;

        SectoralStep rec;
        rec.time = t;
        rec.wealth = wealth;
        rec.sectors.resize(sc.sectors.size());

        double others_wage = 0.0;
        double others_profit = 0.0;
        for (std::size_t i = 0; i < sc.sectors.size(); ++i) {
            if (i == abs_idx) continue;
            const SectorSpec& s = sc.sectors[i];
            SectorPoint& pt = rec.sectors[i];
            pt.wage_bill = s.initial_wage_bill * s.wage_drift.at(t);
            pt.profit = s.initial_profit * s.profit_drift.at(t);
            others_wage += pt.wage_bill;
            others_profit += pt.profit;
        }

        const double total_profit = sc.profit_rate * wealth;
        SectorPoint& ab = rec.sectors[abs_idx];
        ab.wage_bill = absorber_wage;
        ab.profit = total_profit - others_profit;  // residual claim; may go negative

        for (SectorPoint& pt : rec.sectors) {
            pt.income = pt.wage_bill + pt.profit;
            pt.bowley = pt.wage_bill / pt.income;
        }

        rec.wage_bill = others_wage + absorber_wage;
        rec.profit = total_profit;
        rec.income = rec.wage_bill + rec.profit;
        rec.consumption = sc.consumption_rate * wealth;
        rec.bowley = rec.wage_bill / rec.income;
        traj.steps.push_back(std::move(rec));

        if (k == n_steps) return traj;

        const SectoralStep& cur = traj.steps.back();
        const double next_wealth = wealth + sc.step * (cur.income - cur.consumption);
        const double next_absorber_wage =
            absorber_wage + sc.step * sc.relaxation *
                                (cur.consumption - cur.profit - others_wage - absorber_wage);
        if (!std::isfinite(next_wealth) || next_wealth <= 0.0)
            throw NonPositiveWealth("simulate_sectors: aggregate wealth left the positive "
                                    "domain at t=" +
                                    std::to_string((k + 1) * sc.step));
        if (next_absorber_wage < 0.0)
            throw AbsorberNegative(
                "simulate_sectors: absorber wage bill driven negative (" +
                    std::to_string(next_absorber_wage) + ") at t=" +
                    std::to_string((k + 1) * sc.step) + ", step " + std::to_string(k + 1),
                (k + 1) * sc.step, k + 1);
        wealth = next_wealth;
        absorber_wage = next_absorber_wage;
    }
}

} // namespace bowley
