// bowley: command-line front end for the stock-flow toy economy and the
// national-accounts ratio toolkit.
//
// Exit codes: 0 success, 1 identity failure, 2 input/usage error,
// 3 divergence or non-convergence, 4 infeasible scenario.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bowley/accounts.hpp"
#include "bowley/csv.hpp"
#include "bowley/dynamics.hpp"
#include "bowley/empirical.hpp"
#include "bowley/scenario.hpp"
#include "bowley/sectors.hpp"
#include "bowley/text.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_identity_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_diverged = 3;
constexpr int exit_infeasible = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return bowley::format_fixed(v); }

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
    if (!out) throw UsageError("cannot open output file '" + path + "'");
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    return in;
}

// ---------------------------------------------------------------------------
// identities

struct IdentityArgs {
    double consumption = 0, income = 0, earnings = 0, profit = 0, wealth = 0;
    CLI::Option *opt_c = nullptr, *opt_y = nullptr, *opt_e = nullptr,
                *opt_pi = nullptr, *opt_w = nullptr;
    std::string csv_path;
    std::string period;
    double tol = 1e-9;
    std::string format = "pretty";
    std::string output;
};

void render_identity_table(std::ostream& out, const bowley::IdentityReport& report,
                           bool as_csv) {
    if (as_csv) {
        out << "identity,left,right,residual,status\n";
        for (const auto& c : report.checks)
            out << bowley::identity_formula(c.id) << ',' << fmt(c.left) << ','
                << fmt(c.right) << ',' << fmt(c.residual) << ','
                << (c.pass ? "pass" : "FAIL") << '\n';
        return;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-16s %14s %14s %14s  %s\n", "identity", "left",
                  "right", "residual", "status");
    out << buf;
    for (const auto& c : report.checks) {
        std::snprintf(buf, sizeof buf, "%-16s %14s %14s %14s  %s\n",
                      std::string(bowley::identity_formula(c.id)).c_str(),
                      fmt(c.left).c_str(), fmt(c.right).c_str(), fmt(c.residual).c_str(),
                      c.pass ? "pass" : "FAIL");
        out << buf;
    }
}

int run_identities(const IdentityArgs& args) {
    std::optional<bowley::NationalAccounts> acc;
    if (!args.csv_path.empty()) {
        auto in = open_input(args.csv_path);
        const bowley::AccountsSeries series = bowley::read_accounts_csv(in);
        if (series.records.empty()) throw UsageError("csv has no data rows");
        if (args.period.empty()) {
            acc = series.records.front().accounts;
        } else {
            const bowley::Period wanted = bowley::Period::parse(args.period);
            for (const auto& rec : series.records)
                if (rec.period == wanted) acc = rec.accounts;
            if (!acc) throw UsageError("period '" + args.period + "' not in csv");
        }
    } else {
        const bool all_given = args.opt_c->count() && args.opt_y->count() &&
                               args.opt_e->count() && args.opt_pi->count() &&
                               args.opt_w->count();
        if (!all_given)
            throw UsageError("give --C --Y --e --pi --W, or --csv FILE [--period P]");
        acc = bowley::NationalAccounts(args.consumption, args.income, args.earnings,
                                       args.profit, args.wealth);
    }

    const bowley::IdentityReport report = bowley::check_identities(*acc, args.tol);
    const bool as_csv = args.format == "csv";
    if (args.output.empty()) {
        render_identity_table(std::cout, report, as_csv);
    } else {
        auto out = open_output(args.output);
        render_identity_table(out, report, as_csv);
    }
    return report.all_pass() ? exit_ok : exit_identity_failure;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    bowley::EconomyParams params;
    std::string output;
};

void write_trajectory_csv(std::ostream& out, const bowley::Trajectory& traj) {
    out << "time,W,C,pi,e,Y,gamma,beta\n";
    for (const auto& p : traj.points)
        out << fmt(p.time) << ',' << fmt(p.wealth) << ',' << fmt(p.consumption) << ','
            << fmt(p.profit) << ',' << fmt(p.wage_bill) << ',' << fmt(p.income) << ','
            << fmt(p.income_rate) << ',' << fmt(p.bowley) << '\n';
}

int run_simulate(const SimulateArgs& args) {
    const bowley::Trajectory traj = bowley::simulate_single(args.params);
    if (!args.output.empty()) {
        auto out = open_output(args.output);
        write_trajectory_csv(out, traj);
    }
    switch (traj.status) {
        case bowley::RunStatus::Converged: {
            const double predicted = bowley::bowley_from_rates(
                args.params.profit_rate, args.params.consumption_rate);
            const double beta = traj.final_point().bowley;
            std::cout << "converged steps=" << traj.steps_taken() << " beta=" << fmt(beta)
                      << " predicted=" << fmt(predicted)
                      << " residual=" << fmt(std::fabs(beta - predicted)) << '\n';
            return exit_ok;
        }
        case bowley::RunStatus::MaxStepsReached:
            std::cout << "max steps reached without convergence (steps="
                      << traj.steps_taken() << ")\n";
            return exit_diverged;
        case bowley::RunStatus::Diverged:
            std::cout << "diverged: " << traj.diagnostic << '\n';
            return exit_diverged;
    }
    return exit_diverged;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string grid;
    bowley::EconomyParams base;
    std::string output;
};

std::vector<double> expand_axis(const std::string& axis) {
    const auto parts = bowley::detail::split(axis, ':');
    double lo = 0, hi = 0, step = 0;
    if (parts.size() == 1) {
        if (!bowley::detail::parse_double(parts[0], lo))
            throw UsageError("bad grid value '" + axis + "'");
        return {lo};
    }
    if (parts.size() != 3 || !bowley::detail::parse_double(parts[0], lo) ||
        !bowley::detail::parse_double(parts[1], hi) ||
        !bowley::detail::parse_double(parts[2], step))
        throw UsageError("grid axis '" + axis + "' must be lo:hi:step or a single value");
    if (step <= 0.0) throw UsageError("grid step must be positive in '" + axis + "'");
    if (hi < lo) throw UsageError("grid axis '" + axis + "' has hi < lo");
    if ((hi - lo) / step > 1e6) throw UsageError("grid axis '" + axis + "' is too fine");
    const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-6));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        double v = lo + static_cast<double>(i) * step;
        if (i == n && std::fabs(v - hi) <= 1e-6 * step) v = hi;
        values.push_back(v);
    }
    return values;
}

std::vector<bowley::SweepPoint> expand_grid(const std::string& grid_text,
                                            const bowley::EconomyParams& base) {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    for (std::string_view dim : bowley::detail::split(grid_text, ',')) {
        dim = bowley::detail::trim(dim);
        const auto eq = dim.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("grid dimension '" + std::string(dim) + "' must be name=values");
        const std::string name{bowley::detail::trim(dim.substr(0, eq))};
        if (name != "e" && name != "r" && name != "omega")
            throw UsageError("unknown grid dimension '" + name + "' (use e, r, omega)");
        for (const auto& ax : axes)
            if (ax.first == name) throw UsageError("duplicate grid dimension '" + name + "'");
        axes.emplace_back(name, expand_axis(std::string(bowley::detail::trim(dim.substr(eq + 1)))));
    }
    if (axes.empty()) throw UsageError("empty grid");

    std::vector<bowley::SweepPoint> grid;
    bowley::SweepPoint pt{base.wage_bill, base.profit_rate, base.consumption_rate};
    // row-major over the axes in the order written
    const std::function<void(std::size_t)> rec = [&](std::size_t level) {
        if (level == axes.size()) {
            grid.push_back(pt);
            return;
        }
        for (double v : axes[level].second) {
            if (axes[level].first == "e") pt.wage_bill = v;
            else if (axes[level].first == "r") pt.profit_rate = v;
            else pt.consumption_rate = v;
            rec(level + 1);
        }
    };
    rec(0);
    return grid;
}

void write_sweep_csv(std::ostream& out, const std::vector<bowley::SweepRow>& rows) {
    out << "e,r,omega,status,steps,beta,predicted,residual\n";
    for (const auto& row : rows)
        out << fmt(row.point.wage_bill) << ',' << fmt(row.point.profit_rate) << ','
            << fmt(row.point.consumption_rate) << ',' << bowley::run_status_name(row.status)
            << ',' << row.steps << ',' << fmt(row.emergent_bowley) << ','
            << fmt(row.predicted_bowley) << ',' << fmt(row.residual) << '\n';
}

int run_sweep(const SweepArgs& args) {
    const auto grid = expand_grid(args.grid, args.base);
    const auto rows = bowley::sweep(grid, args.base);
    {
        auto out = open_output(args.output);
        write_sweep_csv(out, rows);
    }
    std::size_t converged = 0;
    double beta_min = std::numeric_limits<double>::quiet_NaN();
    double beta_max = std::numeric_limits<double>::quiet_NaN();
    double max_residual = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        if (row.status != bowley::RunStatus::Converged) continue;
        ++converged;
        if (std::isnan(beta_min) || row.emergent_bowley < beta_min)
            beta_min = row.emergent_bowley;
        if (std::isnan(beta_max) || row.emergent_bowley > beta_max)
            beta_max = row.emergent_bowley;
        if (std::isnan(max_residual) || row.residual > max_residual)
            max_residual = row.residual;
    }
    std::cout << "points=" << rows.size() << " converged=" << converged
              << " beta_min=" << fmt(beta_min) << " beta_max=" << fmt(beta_max)
              << " max_residual=" << fmt(max_residual) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sectors

struct SectorsArgs {
    std::string scenario_path;
    std::string output;
    double burn_in = 5.0;
    CLI::Option* opt_burn_in = nullptr;
    std::vector<std::string> overrides;
};

void apply_override(bowley::SectorScenario& sc, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("override '" + kv + "' must be key=value");
    const std::string key{bowley::detail::trim(std::string_view(kv).substr(0, eq))};
    double value = 0;
    if (!bowley::detail::parse_double(std::string_view(kv).substr(eq + 1), value))
        throw UsageError("override '" + kv + "' has a bad numeric value");
    if (key == "r") sc.profit_rate = value;
    else if (key == "omega") sc.consumption_rate = value;
    else if (key == "horizon") sc.horizon = value;
    else if (key == "step") sc.step = value;
    else if (key == "lambda") sc.relaxation = value;
    else if (key == "initial_wealth") sc.initial_wealth = value;
    else throw UsageError("unknown override key '" + key + "'");
}

void write_sectors_csv(std::ostream& out, const bowley::SectoralTrajectory& traj) {
    out << "time,W,e,pi,Y,C,beta";
    for (const auto& name : traj.sector_names)
        out << ',' << name << "_e," << name << "_pi," << name << "_Y," << name << "_beta";
    out << '\n';
    for (const auto& step : traj.steps) {
        out << fmt(step.time) << ',' << fmt(step.wealth) << ',' << fmt(step.wage_bill)
            << ',' << fmt(step.profit) << ',' << fmt(step.income) << ','
            << fmt(step.consumption) << ',' << fmt(step.bowley);
        for (const auto& s : step.sectors)
            out << ',' << fmt(s.wage_bill) << ',' << fmt(s.profit) << ',' << fmt(s.income)
                << ',' << fmt(s.bowley);
        out << '\n';
    }
}

int run_sectors(const SectorsArgs& args) {
    bowley::SectorScenario sc;
    {
        auto in = open_input(args.scenario_path);
        sc = bowley::read_scenario(in);
    }
    for (const auto& kv : args.overrides) apply_override(sc, kv);
    // default burn-in shrinks with short horizons; an explicit flag must fit
    const double burn_in = args.opt_burn_in->count()
                               ? args.burn_in
                               : std::min(5.0, sc.horizon / 2.0);
    if (args.opt_burn_in->count() && (burn_in < 0.0 || burn_in >= sc.horizon))
        throw UsageError("burn-in must lie inside [0, horizon)");

    bowley::SectoralTrajectory traj;
    try {
        traj = bowley::simulate_sectors(sc);
    } catch (const bowley::AbsorberNegative& e) {
        std::cout << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const bowley::NonPositiveWealth& e) {
        std::cout << "diverged: " << e.what() << '\n';
        return exit_diverged;
    }

    if (!args.output.empty()) {
        auto out = open_output(args.output);
        write_sectors_csv(out, traj);
    }

    double beta_min = std::numeric_limits<double>::infinity();
    double beta_max = -std::numeric_limits<double>::infinity();
    for (const auto& step : traj.steps) {
        if (step.time < burn_in) continue;
        beta_min = std::min(beta_min, step.bowley);
        beta_max = std::max(beta_max, step.bowley);
    }
    std::cout << "aggregate beta_min=" << fmt(beta_min) << " beta_max=" << fmt(beta_max)
              << " spread=" << fmt(beta_max - beta_min) << " burn_in=" << fmt(burn_in)
              << '\n';
    for (std::size_t i = 0; i < traj.sector_names.size(); ++i)
        std::cout << "sector=" << traj.sector_names[i]
                  << " beta_start=" << fmt(traj.steps.front().sectors[i].bowley)
                  << " beta_end=" << fmt(traj.steps.back().sectors[i].bowley) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// empirical

struct EmpiricalArgs {
    std::string r_range;
    std::string omega_range;
    double c_share = 0;
    double k_gdp = 0;
    CLI::Option *opt_c_share = nullptr, *opt_k_gdp = nullptr;
    std::string csv_path;
    std::string output;
    double tol = 1e-9;
};

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    const auto parts = bowley::detail::split(text, ':');
    double lo = 0, hi = 0;
    if (parts.size() == 1) {
        if (!bowley::detail::parse_double(parts[0], lo))
            throw UsageError(std::string("bad ") + what + " '" + text + "'");
        return {lo, lo};
    }
    if (parts.size() != 2 || !bowley::detail::parse_double(parts[0], lo) ||
        !bowley::detail::parse_double(parts[1], hi))
        throw UsageError(std::string(what) + " '" + text + "' must be lo:hi or a single value");
    return {lo, hi};
}

int run_empirical(const EmpiricalArgs& args) {
    bool did_something = false;

    if (args.opt_c_share->count() || args.opt_k_gdp->count()) {
        if (!(args.opt_c_share->count() && args.opt_k_gdp->count()))
            throw UsageError("--c-share and --k-gdp must be given together");
        char buf[64];
        std::snprintf(buf, sizeof buf, "omega=%.2f",
                      bowley::omega_from_macro(args.c_share, args.k_gdp));
        std::cout << buf << '\n';
        did_something = true;
    }

    if (!args.r_range.empty() || !args.omega_range.empty()) {
        if (args.r_range.empty() || args.omega_range.empty())
            throw UsageError("--r and --omega must be given together");
        const auto [r_lo, r_hi] = parse_range(args.r_range, "--r range");
        const auto [o_lo, o_hi] = parse_range(args.omega_range, "--omega range");
        const bowley::ParameterBox box{r_lo, r_hi, o_lo, o_hi};
        const bowley::BowleyRange range = bowley::bowley_range(box);
        char buf[96];
        std::snprintf(buf, sizeof buf, "beta in [%.2f, %.2f]", range.lo, range.hi);
        std::cout << buf << '\n';
        std::snprintf(buf, sizeof buf, "observed beta band: [%.2f, %.2f]",
                      bowley::observed_bowley_lo, bowley::observed_bowley_hi);
        std::cout << buf << '\n';
        did_something = true;
    }

    if (!args.csv_path.empty()) {
        if (args.output.empty()) throw UsageError("--csv needs --output for the ratio table");
        auto in = open_input(args.csv_path);
        const bowley::AccountsSeries series = bowley::read_accounts_csv(in);
        const auto rows = bowley::ratio_series(series);
        {
            auto out = open_output(args.output);
            bowley::write_ratio_csv(out, rows);
        }
        std::size_t flagged = 0, off_equilibrium = 0;
        for (const auto& row : rows) {
            if (!row.shares_defined) ++flagged;
            if (std::fabs(row.c_minus_y) > args.tol) ++off_equilibrium;
        }
        std::cout << "rows=" << rows.size() << " flagged=" << flagged
                  << " off_equilibrium=" << off_equilibrium << '\n';
        did_something = true;
    }

    if (!did_something)
        throw UsageError("nothing to do: give --r/--omega, --c-share/--k-gdp, or --csv");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stock-flow toy economy and national-accounts ratio toolkit"};
    app.require_subcommand(1);

    IdentityArgs id_args;
    auto* ident = app.add_subcommand(
        "identities", "evaluate the accounting identities on one snapshot");
    id_args.opt_c = ident->add_option("--C", id_args.consumption, "consumption flow");
    id_args.opt_y = ident->add_option("--Y", id_args.income, "income flow");
    id_args.opt_e = ident->add_option("--e", id_args.earnings, "wage bill");
    id_args.opt_pi = ident->add_option("--pi", id_args.profit, "profit flow");
    id_args.opt_w = ident->add_option("--W", id_args.wealth, "wealth stock");
    ident->add_option("--csv", id_args.csv_path, "accounts csv to read the snapshot from");
    ident->add_option("--period", id_args.period, "period label to pick from the csv");
    ident->add_option("--tol", id_args.tol, "absolute residual tolerance")
        ->capture_default_str();
    ident->add_option("--format", id_args.format, "pretty-table or csv")
        ->check(CLI::IsMember({"pretty", "pretty-table", "csv"}))
        ->capture_default_str();
    ident->add_option("--output", id_args.output, "write the table here instead of stdout");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate",
                                   "run the single-economy flow until the income rate "
                                   "meets the consumption rate");
    sim->add_option("--e", sim_args.params.wage_bill, "wage bill")->capture_default_str();
    sim->add_option("--r", sim_args.params.profit_rate, "profit rate")->required();
    sim->add_option("--omega", sim_args.params.consumption_rate, "consumption rate")
        ->required();
    sim->add_option("--w0", sim_args.params.initial_wealth, "initial wealth")
        ->capture_default_str();
    sim->add_option("--delta", sim_args.params.step, "step size, years")
        ->capture_default_str();
    sim->add_option("--max-steps", sim_args.params.max_steps, "step budget")
        ->capture_default_str();
    sim->add_option("--tol", sim_args.params.convergence_tol, "convergence tolerance")
        ->capture_default_str();
    sim->add_option("--output", sim_args.output, "trajectory csv path");

    SweepArgs sweep_args;
    auto* sw = app.add_subcommand("sweep", "one simulation per grid point");
    sw->add_option("--grid", sweep_args.grid,
                   "axes over e, r, omega as name=lo:hi:step (inclusive), comma separated")
        ->required();
    sw->add_option("--e", sweep_args.base.wage_bill, "base wage bill")
        ->capture_default_str();
    sw->add_option("--w0", sweep_args.base.initial_wealth, "initial wealth")
        ->capture_default_str();
    sw->add_option("--delta", sweep_args.base.step, "step size, years")
        ->capture_default_str();
    sw->add_option("--max-steps", sweep_args.base.max_steps, "step budget")
        ->capture_default_str();
    sw->add_option("--tol", sweep_args.base.convergence_tol, "convergence tolerance")
        ->capture_default_str();
    sw->add_option("--output", sweep_args.output, "sweep table csv path")->required();

    SectorsArgs sec_args;
    auto* sec = app.add_subcommand("sectors", "run a multi-sector drift scenario");
    sec->add_option("--scenario", sec_args.scenario_path, "scenario file")->required();
    sec->add_option("--output", sec_args.output, "sectoral trajectory csv path");
    sec_args.opt_burn_in =
        sec->add_option("--burn-in", sec_args.burn_in,
                        "years excluded from the aggregate constancy summary")
            ->capture_default_str();
    sec->add_option("--set", sec_args.overrides,
                    "override a scenario scalar, key=value (repeatable)");

    EmpiricalArgs emp_args;
    auto* emp = app.add_subcommand("empirical",
                                   "rate-implied labour share range and ratio tables");
    emp->add_option("--r", emp_args.r_range, "profit rate range lo:hi");
    emp->add_option("--omega", emp_args.omega_range, "consumption rate range lo:hi");
    emp_args.opt_c_share =
        emp->add_option("--c-share", emp_args.c_share, "consumption share of gdp");
    emp_args.opt_k_gdp =
        emp->add_option("--k-gdp", emp_args.k_gdp, "capital stock to gdp ratio");
    emp->add_option("--csv", emp_args.csv_path, "accounts csv to turn into ratio series");
    emp->add_option("--output", emp_args.output, "ratio table csv path");
    emp->add_option("--tol", emp_args.tol, "|C - Y| threshold for the off-equilibrium count")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (ident->parsed()) return run_identities(id_args);
        if (sim->parsed()) return run_simulate(sim_args);
        if (sw->parsed()) return run_sweep(sweep_args);
        if (sec->parsed()) return run_sectors(sec_args);
        if (emp->parsed()) return run_empirical(emp_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const bowley::Error& e) {
        // parse/validation/order errors and any domain error that escapes a
        // command handler is an input problem from the CLI's point of view
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
