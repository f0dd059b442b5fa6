#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bowley/errors.hpp"

namespace bowley {

/// One period's flows and the wealth stock they act on, for an economy or
/// a sector treated as one. Flows are currency per period, wealth is a
/// currency stock. Income = earnings + profit is deliberately NOT enforced
/// at construction: it is a checkable property of a snapshot, not a
/// construction rule.
struct NationalAccounts {
    double consumption;  // C
    double income;       // Y
    double earnings;     // e, the wage bill
    double profit;       // pi, returns on financial assets
    double wealth;       // W, strictly positive stock

    NationalAccounts(double consumption_, double income_, double earnings_,
                     double profit_, double wealth_)
        : consumption(consumption_),
          income(income_),
          earnings(earnings_),
          profit(profit_),
          wealth(wealth_) {
        check_flow(consumption, "consumption");
        check_flow(income, "income");
        check_flow(earnings, "earnings");
        check_flow(profit, "profit");
        if (!std::isfinite(wealth) || wealth <= 0.0)
            throw std::invalid_argument(
                "NationalAccounts: wealth must be finite and positive");
    }

    /// The same snapshot in rescaled currency units.
    NationalAccounts scaled(double factor) const {
        if (!std::isfinite(factor) || factor <= 0.0)
            throw std::invalid_argument(
                "NationalAccounts::scaled: factor must be positive");
        return {consumption * factor, income * factor, earnings * factor,
                profit * factor, wealth * factor};
    }

private:
    static void check_flow(double value, const char* name) {
        if (!std::isfinite(value) || value < 0.0)
            throw std::invalid_argument(std::string("NationalAccounts: ") +
                                        name + " must be finite and nonnegative");
    }
};

/// The three flow rates, each a per-period fraction of wealth.
struct RateSet {
    double consumption_rate;  // omega = C / W
    double income_rate;       // gamma = Y / W
    double profit_rate;       // r     = pi / W
};

/// The two income shares. Not clamped: profit rates above the consumption
/// rate yield a Bowley ratio below zero, reported as-is.
struct ShareSet {
    double bowley;        // beta = e / Y
    double profit_ratio;  // rho  = pi / Y
};

inline RateSet rates_from_accounts(const NationalAccounts& acc) {
    return {acc.consumption / acc.wealth, acc.income / acc.wealth,
            acc.profit / acc.wealth};
}

inline ShareSet shares_from_accounts(const NationalAccounts& acc) {
    if (acc.income == 0.0)
        throw ZeroIncome("shares_from_accounts: income is zero, shares undefined");
    return {acc.earnings / acc.income, acc.profit / acc.income};
}

namespace detail {
inline void check_rate_args(double profit_rate, double consumption_rate,
                            const char* where) {
    if (!std::isfinite(profit_rate) || profit_rate < 0.0)
        throw std::invalid_argument(std::string(where) +
                                    ": profit rate must be finite and nonnegative");
    if (!std::isfinite(consumption_rate) || consumption_rate < 0.0)
        throw std::invalid_argument(std::string(where) +
                                    ": consumption rate must be finite and nonnegative");
    if (consumption_rate == 0.0)
        throw ZeroConsumptionRate(std::string(where) +
                                  ": consumption rate is zero, ratio undefined");
}
} // namespace detail

/// rho = r / omega.
inline double profit_ratio_from_rates(double profit_rate, double consumption_rate) {
    detail::check_rate_args(profit_rate, consumption_rate, "profit_ratio_from_rates");
    return profit_rate / consumption_rate;
}

/// beta = 1 - r / omega. Complement of profit_ratio_from_rates by
/// construction.
inline double bowley_from_rates(double profit_rate, double consumption_rate) {
    detail::check_rate_args(profit_rate, consumption_rate, "bowley_from_rates");
    return 1.0 - profit_rate / consumption_rate;
}

/// The identities a consistent snapshot satisfies. The two flow-balance
/// rows carry the same numbers on purpose: one is the balance read off the
/// accounts, the other is the closure recovered at the end of the
/// rate-identity chain, and they are reported separately.
enum class Identity {
    ConsumptionEqualsIncome,         // C = Y
    IncomeDecomposition,             // Y = e + pi
    SharesSumToOne,                  // beta + rho = 1
    ProfitShareFromConsumptionRate,  // rho = r / omega
    BowleyFromConsumptionRate,       // beta = 1 - r / omega
    ProfitShareFromIncomeRate,       // rho = r / gamma
    RatesEqual,                      // omega = gamma
    FlowBalanceClosure,              // C = Y again, via the rate chain
};

inline constexpr std::string_view identity_formula(Identity id) {
    switch (id) {
        case Identity::ConsumptionEqualsIncome: return "C=Y";
        case Identity::IncomeDecomposition: return "Y=e+pi";
        case Identity::SharesSumToOne: return "beta+rho=1";
        case Identity::ProfitShareFromConsumptionRate: return "rho=r/omega";
        case Identity::BowleyFromConsumptionRate: return "beta=1-r/omega";
        case Identity::ProfitShareFromIncomeRate: return "rho=r/gamma";
        case Identity::RatesEqual: return "omega=gamma";
        case Identity::FlowBalanceClosure: return "C=Y (closure)";
    }
    return "?";
}

struct IdentityCheck {
    Identity id;
    double left;
    double right;
    double residual;  // |left - right|; undefined sides count as infinite
    bool pass;        // residual <= tolerance
};

struct IdentityReport {
    double tolerance;
    std::vector<IdentityCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const IdentityCheck& check(Identity id) const {
        for (const auto& c : checks)
            if (c.id == id) return c;
        throw std::logic_error("IdentityReport: identity not present");
    }
};

/// Evaluates every identity on the snapshot with absolute residuals.
/// Failures are reported, never thrown. Shares and rate ratios that are
/// undefined for this snapshot (zero income, zero consumption rate) get an
/// infinite residual, so they fail every finite tolerance and pass an
/// infinite one.
inline IdentityReport check_identities(const NationalAccounts& acc, double tolerance) {
    if (std::isnan(tolerance) || tolerance < 0.0)
        throw std::invalid_argument("check_identities: tolerance must be nonnegative");

    const RateSet rates = rates_from_accounts(acc);
    const double beta = acc.earnings / acc.income;  // NaN/inf at Y = 0
    const double rho = acc.profit / acc.income;

    IdentityReport report{tolerance, {}};
    report.checks.reserve(8);
    const auto add = [&](Identity id, double left, double right) {
        double residual = std::fabs(left - right);
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        report.checks.push_back({id, left, right, residual, residual <= tolerance});
    };

    add(Identity::ConsumptionEqualsIncome, acc.consumption, acc.income);
    add(Identity::IncomeDecomposition, acc.income, acc.earnings + acc.profit);
    add(Identity::SharesSumToOne, beta + rho, 1.0);
    add(Identity::ProfitShareFromConsumptionRate, rho,
        rates.profit_rate / rates.consumption_rate);
    add(Identity::BowleyFromConsumptionRate, beta,
        1.0 - rates.profit_rate / rates.consumption_rate);
    add(Identity::ProfitShareFromIncomeRate, rho,
        rates.profit_rate / rates.income_rate);
    add(Identity::RatesEqual, rates.consumption_rate, rates.income_rate);
    add(Identity::FlowBalanceClosure, acc.consumption, acc.income);
    return report;
}

} // namespace bowley
