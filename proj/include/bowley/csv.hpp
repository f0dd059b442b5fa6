#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bowley/empirical.hpp"
#include "bowley/errors.hpp"
#include "bowley/text.hpp"

namespace bowley {

/// Fixed-point decimal with a canonical zero (no "-0.000000"). NaN and
/// infinities print as bare tokens so tables stay machine-splittable.
inline std::string format_fixed(double value, int decimals = 6) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    const int len = std::snprintf(nullptr, 0, "%.*f", decimals, value);
    std::string out(static_cast<std::size_t>(len), '\0');
    std::snprintf(out.data(), out.size() + 1, "%.*f", decimals, value);
    if (out.front() == '-' &&
        out.find_first_not_of("0.", 1) == std::string::npos)
        out.erase(0, 1);
    return out;
}

inline constexpr std::string_view accounts_csv_header = "period,C,Y,e,pi,W";
inline constexpr std::string_view ratio_csv_header =
    "period,beta,rho,omega,gamma,r,c_minus_y";

/// Reads the accounts schema: header `period,C,Y,e,pi,W`, one row per
/// period, `#` comment lines and blank lines ignored. Errors carry the
/// 1-based physical line number.
inline AccountsSeries read_accounts_csv(std::istream& in) {
    AccountsSeries series;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = detail::trim(line);
        if (content.empty() || content.front() == '#') continue;

        std::vector<std::string_view> fields = detail::split(content, ',');
        for (auto& f : fields) f = detail::trim(f);

        if (!header_seen) {
            if (fields.size() != 6 || fields[0] != "period" || fields[1] != "C" ||
                fields[2] != "Y" || fields[3] != "e" || fields[4] != "pi" ||
                fields[5] != "W")
                throw ParseError(line_no, "expected header '" +
                                              std::string(accounts_csv_header) + "'");
            header_seen = true;
            continue;
        }

        if (fields.size() != 6)
            throw ParseError(line_no, "expected 6 fields, got " +
                                          std::to_string(fields.size()));
        Period period;
        try {
            period = Period::parse(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        double v[5];
        static constexpr const char* names[5] = {"C", "Y", "e", "pi", "W"};
        for (int i = 0; i < 5; ++i)
            if (!detail::parse_double(fields[i + 1], v[i]))
                throw ParseError(line_no, std::string("bad numeric field ") + names[i] +
                                              ": '" + std::string(fields[i + 1]) + "'");
        if (!series.records.empty() && !(series.records.back().period < period))
            throw OrderError(line_no, "period " + period.str() +
                                          " does not increase past " +
                                          series.records.back().period.str());
        try {
            series.records.push_back({period, NationalAccounts(v[0], v[1], v[2], v[3], v[4])});
        } catch (const std::invalid_argument& e) {
            throw ValidationError(line_no, e.what());
        }
    }
    if (!header_seen) throw ParseError(line_no, "missing header row");
    return series;
}

inline void write_accounts_csv(std::ostream& out, const AccountsSeries& series,
                               int decimals = 6) {
    out << accounts_csv_header << '\n';
    for (const AccountsRecord& rec : series.records) {
        const NationalAccounts& a = rec.accounts;
        out << rec.period.str() << ',' << format_fixed(a.consumption, decimals) << ','
            << format_fixed(a.income, decimals) << ',' << format_fixed(a.earnings, decimals)
            << ',' << format_fixed(a.profit, decimals) << ','
            << format_fixed(a.wealth, decimals) << '\n';
    }
}

inline void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows,
                            int decimals = 6) {
    out << ratio_csv_header << '\n';
    for (const RatioRow& r : rows) {
        out << r.period.str() << ',' << format_fixed(r.bowley, decimals) << ','
            << format_fixed(r.profit_ratio, decimals) << ','
            << format_fixed(r.omega, decimals) << ',' << format_fixed(r.gamma, decimals)
            << ',' << format_fixed(r.profit_rate, decimals) << ','
            << format_fixed(r.c_minus_y, decimals) << '\n';
    }
}

} // namespace bowley
