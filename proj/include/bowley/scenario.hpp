#pragma once

#include <istream>
#include <set>
#include <string>
#include <string_view>

#include "bowley/errors.hpp"
#include "bowley/sectors.hpp"
#include "bowley/text.hpp"

namespace bowley {

namespace detail {

inline DriftSchedule parse_drift(std::string_view value, int line_no) {
    DriftSchedule sched;
    for (std::string_view part : split(value, ',')) {
        part = trim(part);
        const auto colon = part.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(line_no, "drift point '" + std::string(part) +
                                          "' must be year:multiplier");
        DriftPoint pt;
        if (!parse_double(part.substr(0, colon), pt.year) ||
            !parse_double(part.substr(colon + 1), pt.multiplier))
            throw ParseError(line_no, "bad drift point '" + std::string(part) + "'");
        sched.points.push_back(pt);
    }
    return sched;
}

inline bool parse_bool(std::string_view value, int line_no) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ParseError(line_no, "expected true/false, got '" + std::string(value) + "'");
}

} // namespace detail

/// Reads the flat key=value scenario format:
///
///   r = 0.05            # global scalars first
///   omega = 0.25
///   horizon = 38
///   step = 0.05         # optional
///   lambda = 2.0        # optional
///   initial_wealth = 49 # optional; omit for the balanced start
///
///   [sector]
///   name = agriculture
///   e0 = 0.8
///   pi0 = 0.2
///   wage_drift = 0:1, 38:0.75
///   profit_drift = 0:1, 38:2.0
///
///   [sector]
///   name = services
///   e0 = 6.0
///   absorber = true
///
/// Cross-sector invariants (one absorber, omega > r, step bounds) are
/// enforced by SectorScenario::validate() at simulation time, not here.
inline SectorScenario read_scenario(std::istream& in) {
    SectorScenario sc;
    sc.step = 0.05;
    sc.relaxation = 2.0;

    std::string line;
    int line_no = 0;
    bool in_sector = false;
    int sector_start_line = 0;
    SectorSpec cur;
    std::set<std::string> seen;  // keys of the current block
    std::set<std::string> seen_global;

    const auto finish_sector = [&]() {
        if (!in_sector) return;
        if (!seen.count("name"))
            throw ParseError(sector_start_line, "sector block missing 'name'");
        if (!seen.count("e0"))
            throw ParseError(sector_start_line, "sector '" + cur.name + "' missing 'e0'");
        try {
            cur.wage_drift.validate("wage_drift");
            cur.profit_drift.validate("profit_drift");
        } catch (const std::invalid_argument& e) {
            throw ParseError(sector_start_line,
                             "sector '" + cur.name + "': " + e.what());
        }
        sc.sectors.push_back(cur);
        cur = SectorSpec{};
        seen.clear();
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = detail::trim(line);
        if (content.empty() || content.front() == '#') continue;

        if (content.front() == '[') {
            if (content != "[sector]")
                throw ParseError(line_no, "unknown section '" + std::string(content) + "'");
            finish_sector();
            in_sector = true;
            sector_start_line = line_no;
            continue;
        }

        const auto eq = content.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected key = value");
        const std::string key{detail::trim(content.substr(0, eq))};
        const std::string_view value = detail::trim(content.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(line_no, "expected key = value");

        auto& keyset = in_sector ? seen : seen_global;
        if (!keyset.insert(key).second)
            throw ParseError(line_no, "duplicate key '" + key + "'");

        const auto number = [&](double& out) {
            if (!detail::parse_double(value, out))
                throw ParseError(line_no, "bad numeric value for '" + key + "': '" +
                                              std::string(value) + "'");
        };

        if (!in_sector) {
            if (key == "r") number(sc.profit_rate);
            else if (key == "omega") number(sc.consumption_rate);
            else if (key == "horizon") number(sc.horizon);
            else if (key == "step") number(sc.step);
            else if (key == "lambda") number(sc.relaxation);
            else if (key == "initial_wealth") number(sc.initial_wealth);
            else throw ParseError(line_no, "unknown key '" + key + "'");
        } else {
            if (key == "name") cur.name = std::string(value);
            else if (key == "e0") number(cur.initial_wage_bill);
            else if (key == "pi0") number(cur.initial_profit);
            else if (key == "wage_drift") cur.wage_drift = detail::parse_drift(value, line_no);
            else if (key == "profit_drift") cur.profit_drift = detail::parse_drift(value, line_no);
            else if (key == "absorber") cur.residual_absorber = detail::parse_bool(value, line_no);
            else throw ParseError(line_no, "unknown sector key '" + key + "'");
        }
    }
    finish_sector();

    for (const char* required : {"r", "omega", "horizon"})
        if (!seen_global.count(required))
            throw ParseError(line_no, std::string("missing required key '") + required + "'");
    if (sc.sectors.empty()) throw ParseError(line_no, "no [sector] blocks");
    return sc;
}

} // namespace bowley
