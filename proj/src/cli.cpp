#include "pcm/cli.hpp"

#include "pcm/config.hpp"
#include "pcm/csv.hpp"
#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"
#include "pcm/partition.hpp"
#include "pcm/selection.hpp"
#include "pcm/settlement.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace pcm {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError(path.string() + ": cannot write");
    return out;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string s;
    for (int id : ids)
        s += (s.empty() ? "" : " ") + std::to_string(id);
    return s;
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

SolverOptions solver_options(const RunConfig& rc) {
    SolverOptions o;
    o.verify_grid = rc.verify;
    o.verify_equilibrium = rc.verify;
    o.single_package = rc.single_package;
    return o;
}

std::vector<double> selection_weights(const MarketInstance& inst, bool single_package) {
    if (single_package)
        return single_package_weights(inst.size());
    return weights(SelectionModel(inst.selection_probabilities()));
}

// One realized scenario per hour: the fixed mask, or draws from q.
std::vector<Scenario> realized_scenarios(const MarketInstance& inst, const RunConfig& rc) {
    std::vector<Scenario> out;
    std::mt19937_64 rng(rc.seed);
    for (int t = 0; t < inst.horizon; ++t) {
        if (rc.scenario) {
            out.emplace_back(inst.size(), *rc.scenario);
            continue;
        }
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < inst.prosumers[i].q)
                mask |= std::uint64_t{1} << i;
        }
        out.emplace_back(inst.size(), mask);
    }
    return out;
}

std::vector<HourSolution> solve(const MarketInstance& inst, const RunConfig& rc) {
    const auto q = selection_weights(inst, rc.single_package);
    std::vector<Scenario> realized;
    if (rc.chain == ChainMode::replay)
        realized = realized_scenarios(inst, rc);
    return solve_day(inst, q, solver_options(rc), rc.chain, realized);
}

int collect_warnings(const std::vector<HourSolution>& day, std::ostream& summary, std::ostream& err) {
    int count = 0;
    for (const auto& sol : day) {
        for (const auto& w : sol.warnings) {
            summary << "warning: hour " << sol.hour.value() << ": " << w << '\n';
            err << "warning: hour " << sol.hour.value() << ": " << w << '\n';
            ++count;
        }
    }
    return count;
}

void write_prices(const std::filesystem::path& dir, const std::vector<HourSolution>& day) {
    auto out = open_out(dir / "prices.csv");
    CsvWriter w(out);
    w.row({"hour", "r_wp", "r_ls", "n_sigma", "order", "cell", "expected_cost", "budget", "x_prev_in",
           "x_prev_out"});
    for (const auto& s : day) {
        w.cell(s.hour.value()).cell(s.prices.r_wp).cell(s.prices.r_ls).cell(s.n_sigma_star);
        w.cell(to_string(s.order)).cell(s.cell_id).cell(s.expected_cost).cell(s.budget);
        w.cell(s.x_prev_in).cell(s.x_prev_out);
        w.end_row();
    }
}

void write_cells(const std::filesystem::path& dir, const std::vector<HourSolution>& day) {
    auto out = open_out(dir / "cells.csv");
    CsvWriter w(out);
    w.row({"hour", "cell", "n_sigma", "order", "status", "reason", "r_wp", "r_ls", "cost", "budget_active"});
    for (const auto& s : day) {
        for (const auto& c : s.per_cell) {
            const bool ok = c.status == CellStatus::optimal;
            w.cell(s.hour.value()).cell(c.cell_id).cell(c.n_sigma).cell(to_string(c.order));
            w.cell(to_string(c.status)).cell(c.reason);
            if (ok)
                w.cell(c.prices.r_wp).cell(c.prices.r_ls).cell(c.cost).cell(c.budget_active ? 1 : 0);
            else
                w.cell("").cell("").cell("").cell("");
            w.end_row();
        }
    }
}

void write_distribution(const std::filesystem::path& dir, const MarketInstance& inst,
                        const HourSolution& sol, std::span<const double> q) {
    const HourData h = hour_data(inst, sol.hour);
    const Partition part = build_partition(h);
    const SubSpace& cell = part.cells[static_cast<std::size_t>(sol.cell_id)];
    const auto k = hour_coefficients(h);

    auto out = open_out(dir / "distribution.csv");
    CsvWriter w(out);
    w.row({"hour", "n", "probability", "x_tot", "side", "social_cost"});
    for (int n = 0; n <= h.count(); ++n) {
        const auto side = cell.cb_table[static_cast<std::size_t>(n)];
        w.cell(sol.hour.value()).cell(n).cell(q[static_cast<std::size_t>(n)]);
        w.cell(equilibrium_total(h, n, sol.prices)).cell(to_string(side));
        w.cell(social_cost(h, k, n, sol.prices, side));
        w.end_row();
    }

    if (inst.size() > kDefaultScenarioCap)
        return;
    const SelectionModel model(inst.selection_probabilities());
    auto sout = open_out(dir / "scenario_distribution.csv");
    CsvWriter sw(sout);
    sw.row({"hour", "mask", "label", "n", "probability", "x_tot", "side", "social_cost"});
    for (const auto& s : enumerate_scenarios(inst.size())) {
        const int n = s.wp_count();
        const auto side = cell.cb_table[static_cast<std::size_t>(n)];
        sw.cell(sol.hour.value()).cell(static_cast<long long>(s.mask())).cell(s.label()).cell(n);
        sw.cell(scenario_prob(model, s)).cell(nash_equilibrium(h, s, sol.prices).x_tot);
        sw.cell(to_string(side)).cell(social_cost(h, k, n, sol.prices, side));
        sw.end_row();
    }
}

void summarize_day(std::ostream& os, const std::vector<HourSolution>& day) {
    os << "hour  R_WP*        R_LS*        n_sigma  order     E[cost]\n";
    double total = 0.0;
    bool ls_below = true;
    for (const auto& s : day) {
        os << s.hour.value() << (s.hour.value() < 10 ? "     " : "    ") << fixed(s.prices.r_wp) << "    "
           << fixed(s.prices.r_ls) << "    " << s.n_sigma_star << "        " << to_string(s.order)
           << "  " << fixed(s.expected_cost, 2) << '\n';
        total += s.expected_cost;
        ls_below = ls_below && s.prices.r_ls < s.prices.r_wp;
    }
    os << "day expected social cost: " << fixed(total, 2) << '\n';
    os << "R_LS* < R_WP* at every hour: " << (ls_below ? "yes" : "no") << '\n';
}

int run_optimize(const RunConfig& rc, std::ostream& log, std::ostream& err) {
    const auto cfg = load_config(rc.config, rc.regulation_csv);
    const auto& inst = cfg.instance;
    const auto day = solve(inst, rc);
    const auto q = selection_weights(inst, rc.single_package);

    const int hour = rc.hour.value_or(std::min(5, inst.horizon));
    if (hour < 1 || hour > inst.horizon)
        throw InputError("--hour " + std::to_string(hour) + " outside 1.." + std::to_string(inst.horizon));

    write_prices(rc.out_dir, day);
    write_cells(rc.out_dir, day);
    write_distribution(rc.out_dir, inst, day[static_cast<std::size_t>(hour - 1)], q);

    auto summary = open_out(rc.out_dir / "summary.txt");
    summary << "mode: optimize\nconfig: " << rc.config.string() << "\nprosumers: " << inst.size()
            << "\nhours: " << inst.horizon << "\nchain: "
            << (rc.chain == ChainMode::planning ? "planning" : "replay") << "\n\n";
    summarize_day(summary, day);
    summary << "distribution hour: " << hour << '\n';
    const int warnings = collect_warnings(day, summary, err);
    log << "optimized " << day.size() << " hours, outputs in " << rc.out_dir.string() << '\n';
    return rc.verify && warnings > 0 ? kExitNumeric : kExitOk;
}

int run_settle(const RunConfig& rc, std::ostream& log, std::ostream& err) {
    const auto cfg = load_config(rc.config, rc.regulation_csv);
    const auto& inst = cfg.instance;
    const auto day = solve(inst, rc);
    const SelectionModel model(inst.selection_probabilities());

    std::vector<Scenario> scenarios;
    if (rc.scenario)
        scenarios.emplace_back(inst.size(), *rc.scenario);
    else
        scenarios = enumerate_scenarios(inst.size());

    if (rc.hour && (*rc.hour < 1 || *rc.hour > inst.horizon))
        throw InputError("--hour " + std::to_string(*rc.hour) + " outside 1.." + std::to_string(inst.horizon));

    auto out = open_out(rc.out_dir / "settlement.csv");
    auto pout = open_out(rc.out_dir / "profits.csv");
    CsvWriter w(out);
    CsvWriter pw(pout);
    w.row({"hour", "mask", "label", "n", "prosumer", "package", "x", "b_star", "service", "expected_da_cost"});
    pw.row({"hour", "mask", "label", "n", "probability", "x_tot", "cb_used", "ea_profit", "z_hat", "da_demand"});

    std::size_t records = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& sol : day) {
        if (rc.hour && sol.hour.value() != *rc.hour)
            continue;
        const HourData h = hour_data(inst, sol.hour);
        for (const auto& s : scenarios) {
            const SettlementRecord r = settle(h, sol, s);
            ++records;
            min_margin = std::min(min_margin, r.ea_profit - r.z_hat);
            const auto mask = static_cast<long long>(s.mask());
            std::size_t ls = 0;
            for (std::size_t i = 0; i < inst.size(); ++i) {
                w.cell(sol.hour.value()).cell(mask).cell(s.label()).cell(s.wp_count());
                w.cell(inst.prosumers[i].id).cell(s.is_wp(i) ? "WP" : "LS").cell(r.x[i]);
                if (s.is_wp(i)) {
                    w.cell("").cell("").cell("");
                } else {
                    const auto& p = r.ls_prices[ls++];
                    w.cell(p.b_star).cell(p.service).cell(p.expected_da_cost);
                }
                w.end_row();
            }
            pw.cell(sol.hour.value()).cell(mask).cell(s.label()).cell(s.wp_count());
            pw.cell(scenario_prob(model, s)).cell(r.x_tot).cell(to_string(r.cb_used));
            pw.cell(r.ea_profit).cell(r.z_hat).cell(r.da_demand);
            pw.end_row();
        }
    }

    auto summary = open_out(rc.out_dir / "summary.txt");
    summary << "mode: settle\nconfig: " << rc.config.string() << "\nscenarios per hour: " << scenarios.size()
            << "\nsettlement records: " << records << '\n';
    if (records > 0)
        summary << "smallest ea_profit - z_hat: " << fixed(min_margin, 6) << '\n';
    summary << '\n';
    summarize_day(summary, day);
    const int warnings = collect_warnings(day, summary, err);
    log << "settled " << records << " scenario-hours, outputs in " << rc.out_dir.string() << '\n';
    return rc.verify && warnings > 0 ? kExitNumeric : kExitOk;
}

int run_scenarios(const RunConfig& rc, std::ostream& log) {
    const auto cfg = load_config(rc.config, rc.regulation_csv);
    const auto& inst = cfg.instance;
    const SelectionModel model(inst.selection_probabilities());
    const auto all = enumerate_scenarios(inst.size());
    const auto q = weights(model);

    auto out = open_out(rc.out_dir / "scenarios.csv");
    CsvWriter w(out);
    w.row({"index", "mask", "label", "wp_set", "n", "probability"});
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& s = all[i];
        w.cell(static_cast<long long>(i + 1)).cell(static_cast<long long>(s.mask())).cell(s.label());
        w.cell(join_ids(s.wp_set())).cell(s.wp_count()).cell(scenario_prob(model, s));
        w.end_row();
    }

    auto summary = open_out(rc.out_dir / "summary.txt");
    summary << "mode: scenarios\nprosumers: " << inst.size() << "\nscenarios: " << all.size() << "\n\n";
    summary << "n  Q(n)\n";
    for (std::size_t n = 0; n < q.size(); ++n)
        summary << n << "  " << fixed(q[n], 6) << '\n';
    log << "wrote " << all.size() << " scenarios to " << (rc.out_dir / "scenarios.csv").string() << '\n';
    return kExitOk;
}

int run_usm_compare(const RunConfig& rc, std::ostream& log, std::ostream& err) {
    const auto cfg = load_config(rc.config, rc.regulation_csv);
    const auto& inst = cfg.instance;
    RunConfig two = rc;
    two.single_package = false;
    const auto day = solve(inst, two);

    SolverOptions single = solver_options(rc);
    single.single_package = true;
    const auto q1 = single_package_weights(inst.size());

    auto out = open_out(rc.out_dir / "usm.csv");
    CsvWriter w(out);
    w.row({"hour", "optimized_cost", "single_package_cost", "single_package_r_wp", "usm_x_tot", "usm_side",
           "usm_cost"});
    double opt_total = 0.0, single_total = 0.0, usm_total = 0.0;
    int single_missing = 0, usm_missing = 0;
    std::ostringstream notes;
    for (const auto& sol : day) {
        const HourData h = hour_data(inst, sol.hour);
        w.cell(sol.hour.value()).cell(sol.expected_cost);
        opt_total += sol.expected_cost;
        try {
            const auto s = solve_hour(h, q1, sol.x_prev_in, single);
            w.cell(s.expected_cost).cell(s.prices.r_wp);
            single_total += s.expected_cost;
        } catch (const InfeasibleError& e) {
            w.cell("").cell("");
            ++single_missing;
            notes << "single package: " << e.what() << '\n';
        }
        try {
            const auto u = usm_baseline(h);
            w.cell(u.x_hat_tot).cell(to_string(u.side)).cell(u.social_cost);
            usm_total += u.social_cost;
        } catch (const ParameterError& e) {
            w.cell("").cell("").cell("");
            ++usm_missing;
            notes << "usm: " << e.what() << '\n';
        }
        w.end_row();
    }

    auto summary = open_out(rc.out_dir / "summary.txt");
    summary << "mode: usm-compare\nconfig: " << rc.config.string() << "\n\n";
    summary << "day cost, two packages:   " << fixed(opt_total, 2) << '\n';
    summary << "day cost, single package: " << fixed(single_total, 2);
    if (single_missing)
        summary << " (" << single_missing << " infeasible hours excluded)";
    summary << "\nday cost, USM baseline:   " << fixed(usm_total, 2);
    if (usm_missing)
        summary << " (" << usm_missing << " hours excluded)";
    summary << '\n' << notes.str();
    const int warnings = collect_warnings(day, summary, err);
    log << "compared " << day.size() << " hours, outputs in " << rc.out_dir.string() << '\n';
    return rc.verify && warnings > 0 ? kExitNumeric : kExitOk;
}

int run_synth(const RunConfig& rc, std::ostream& log) {
    if (rc.horizon < 1)
        throw InputError("--horizon must be positive");
    if (!(rc.level > 0.0) || !(rc.volatility >= 0.0))
        throw InputError("--level must be positive and --volatility non-negative");
    const auto prices = synthesize_regulation_prices(rc.horizon, rc.seed, rc.level, rc.volatility);
    const auto path = rc.out_dir / "regulation.csv";
    write_regulation_csv(path, prices);
    log << "wrote " << rc.horizon << " hours to " << path.string() << '\n';
    return kExitOk;
}

}  // namespace

Mode parse_mode(std::string_view name) {
    if (name == "optimize")
        return Mode::optimize;
    if (name == "settle")
        return Mode::settle;
    if (name == "scenarios")
        return Mode::scenarios;
    if (name == "usm-compare")
        return Mode::usm_compare;
    if (name == "synth-prices")
        return Mode::synth_prices;
    throw InputError("unknown mode '" + std::string(name) + "'");
}

const char* to_string(Mode mode) {
    switch (mode) {
    case Mode::optimize: return "optimize";
    case Mode::settle: return "settle";
    case Mode::scenarios: return "scenarios";
    case Mode::usm_compare: return "usm-compare";
    case Mode::synth_prices: return "synth-prices";
    }
    return "?";
}

EbmPrices synthesize_regulation_prices(int horizon, std::uint64_t seed, double level, double volatility) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    auto normal = [&] {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    // Hour-to-hour persistence of the noise, as in observed regulation prices.
    constexpr double rho = 0.7;
    const double innovation = std::sqrt(1.0 - rho * rho);
    double e_up = normal();
    double e_down = normal();
    EbmPrices out;
    for (int t = 1; t <= horizon; ++t) {
        // Morning and evening peaks over a night trough.
        const double phase = 2.0 * std::numbers::pi * (t - 1) / 24.0;
        const double shape = 1.0 - 0.25 * std::cos(phase) - 0.1 * std::cos(2.0 * phase);
        const double base = level * shape;
        const double up = base * (1.15 + 0.5 * volatility * std::abs(e_up));
        const double down = base * (0.75 - 0.5 * volatility * std::abs(e_down));
        out.up.push_back(std::round(up * 100.0) / 100.0);
        out.down.push_back(std::round(down * 100.0) / 100.0);
        e_up = rho * e_up + innovation * normal();
        e_down = rho * e_down + innovation * normal();
    }
    return out;
}

int run(const RunConfig& rc, std::ostream& log, std::ostream& err) {
    try {
        std::filesystem::create_directories(rc.out_dir);
        switch (rc.mode) {
        case Mode::optimize: return run_optimize(rc, log, err);
        case Mode::settle: return run_settle(rc, log, err);
        case Mode::scenarios: return run_scenarios(rc, log);
        case Mode::usm_compare: return run_usm_compare(rc, log, err);
        case Mode::synth_prices: return run_synth(rc, log);
        }
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParameterError& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kExitInput;
    } catch (const ResourceError& e) {
        err << "too large: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "file error: " << e.what() << '\n';
        return kExitInput;
    }
    return 1;
}

}  // namespace pcm
