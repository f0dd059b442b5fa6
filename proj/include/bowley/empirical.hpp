#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bowley/accounts.hpp"
#include "bowley/errors.hpp"
#include "bowley/text.hpp"

namespace bowley {

/// Plausible ranges for the profit and consumption rates, both per year.
struct ParameterBox {
    double profit_lo;
    double profit_hi;
    double omega_lo;
    double omega_hi;

    void validate() const {
        if (!std::isfinite(profit_lo) || !std::isfinite(profit_hi) ||
            !std::isfinite(omega_lo) || !std::isfinite(omega_hi))
            throw std::invalid_argument("ParameterBox: bounds must be finite");
        if (!(0.0 <= profit_lo && profit_lo <= profit_hi))
            throw std::invalid_argument("ParameterBox: need 0 <= r_lo <= r_hi");
        if (!(0.0 < omega_lo && omega_lo <= omega_hi))
            throw std::invalid_argument("ParameterBox: need 0 < omega_lo <= omega_hi");
    }
};

struct BowleyRange {
    double lo;
    double hi;
};

/// Extremes of beta = 1 - r/omega over the box. beta is decreasing in r
/// and increasing in omega, so the corners (r_hi, omega_lo) and
/// (r_lo, omega_hi) are extremal.
inline BowleyRange bowley_range(const ParameterBox& box) {
    box.validate();
    return {bowley_from_rates(box.profit_hi, box.omega_lo),
            bowley_from_rates(box.profit_lo, box.omega_hi)};
}

/// omega = (C/Y) / (W/Y): consumption share of gdp over capital-to-gdp.
inline double omega_from_macro(double consumption_share_of_gdp, double capital_to_gdp) {
    if (!std::isfinite(consumption_share_of_gdp) || consumption_share_of_gdp <= 0.0)
        throw std::invalid_argument("omega_from_macro: consumption share must be positive");
    if (!std::isfinite(capital_to_gdp) || capital_to_gdp <= 0.0)
        throw std::invalid_argument("omega_from_macro: capital-to-gdp must be positive");
    return consumption_share_of_gdp / capital_to_gdp;
}

/// Commonly quoted band of measured labour shares. Reported next to the
/// rate-implied range; the toolkit surfaces both and adjudicates neither.
inline constexpr double observed_bowley_lo = 0.50;
inline constexpr double observed_bowley_hi = 0.75;

/// A period label: a year, optionally with a quarter ("1958" or "1958Q2").
/// Annual labels order before the quarters of the same year.
struct Period {
    int year = 0;
    int quarter = 0;  // 0 = annual, 1..4 = quarter

    friend auto operator<=>(const Period&, const Period&) = default;

    std::string str() const {
        if (quarter == 0) return std::to_string(year);
        return std::to_string(year) + "Q" + std::to_string(quarter);
    }

    static Period parse(std::string_view token) {
        token = detail::trim(token);
        const auto q = token.find('Q');
        Period p;
        long year = 0;
        if (q == std::string_view::npos) {
            if (!detail::parse_long(token, year))
                throw std::invalid_argument("Period: expected year or YYYYQn, got '" +
                                            std::string(token) + "'");
            p.year = static_cast<int>(year);
            return p;
        }
        long quarter = 0;
        if (!detail::parse_long(token.substr(0, q), year) ||
            !detail::parse_long(token.substr(q + 1), quarter) || quarter < 1 ||
            quarter > 4)
            throw std::invalid_argument("Period: expected year or YYYYQn, got '" +
                                        std::string(token) + "'");
        p.year = static_cast<int>(year);
        p.quarter = static_cast<int>(quarter);
        return p;
    }
};

struct AccountsRecord {
    Period period;
    NationalAccounts accounts;
};

/// Ordered accounting series: period labels strictly increasing, every
/// record individually valid (valid by construction of NationalAccounts).
struct AccountsSeries {
    std::vector<AccountsRecord> records;

    void validate() const {
        for (std::size_t i = 1; i < records.size(); ++i)
            if (!(records[i - 1].period < records[i].period))
                throw std::invalid_argument("AccountsSeries: periods must be strictly "
                                            "increasing (at " +
                                            records[i].period.str() + ")");
    }
};

struct RatioRow {
    Period period;
    double bowley = std::numeric_limits<double>::quiet_NaN();
    double profit_ratio = std::numeric_limits<double>::quiet_NaN();
    double omega;
    double gamma;
    double profit_rate;
    double c_minus_y;      // flow imbalance; nonzero flags an off-equilibrium period
    bool shares_defined;   // false when the period's income is zero
};

/// Per-period rates and shares via the accounting definitions. Zero-income
/// periods are flagged and carried through rather than dropped.
inline std::vector<RatioRow> ratio_series(const AccountsSeries& series) {
    series.validate();
    std::vector<RatioRow> rows;
    rows.reserve(series.records.size());
    for (const AccountsRecord& rec : series.records) {
        RatioRow row;
        row.period = rec.period;
        const RateSet rates = rates_from_accounts(rec.accounts);
        row.omega = rates.consumption_rate;
        row.gamma = rates.income_rate;
        row.profit_rate = rates.profit_rate;
        row.c_minus_y = rec.accounts.consumption - rec.accounts.income;
        try {
            const ShareSet shares = shares_from_accounts(rec.accounts);
            row.bowley = shares.bowley;
            row.profit_ratio = shares.profit_ratio;
            row.shares_defined = true;
        } catch (const ZeroIncome&) {
            row.shares_defined = false;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace bowley
