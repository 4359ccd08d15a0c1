#include "pcm/cli.hpp"
#include "pcm/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Two-package incentive pricing for a prosumer community"};

    pcm::RunConfig rc;
    std::string mode = "optimize";
    std::string chain = "planning";
    std::string config;
    std::string regulation;
    std::string out = "out";
    int hour = 0;
    std::uint64_t scenario = 0;

    app.add_option("--config", config, "JSON instance file");
    app.add_option("--mode", mode, "optimize | settle | scenarios | usm-compare | synth-prices")
        ->check(CLI::IsMember({"optimize", "settle", "scenarios", "usm-compare", "synth-prices"}));
    auto* hour_opt = app.add_option("--hour", hour, "hour for the distribution report; settle only this hour");
    auto* scen_opt = app.add_option("--scenario", scenario, "WP bitmask, prosumer 1 least significant");
    app.add_option("--out", out, "output directory");
    app.add_option("--regulation", regulation, "regulation price CSV, overrides the config");
    app.add_flag("--verify", rc.verify, "grid and best-response cross-checks; warnings exit 4");
    app.add_option("--chain", chain, "how hour t feeds the ramp window of hour t+1")
        ->check(CLI::IsMember({"planning", "replay"}));
    app.add_flag("--single-package", rc.single_package, "offer the WP package only");
    app.add_option("--seed", rc.seed, "seed for sampled scenarios and synthetic prices");
    app.add_option("--horizon", rc.horizon, "hours of synthetic prices");
    app.add_option("--level", rc.level, "synthetic price level, EUR/MWh");
    app.add_option("--volatility", rc.volatility, "relative noise of synthetic prices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pcm::kExitInput;
    }

    try {
        rc.mode = pcm::parse_mode(mode);
    } catch (const pcm::InputError& e) {
        std::cerr << e.what() << '\n';
        return pcm::kExitInput;
    }
    if (rc.mode != pcm::Mode::synth_prices && config.empty()) {
        std::cerr << "--config is required for mode " << mode << '\n';
        return pcm::kExitInput;
    }
    rc.config = config;
    rc.regulation_csv = regulation;
    rc.out_dir = out;
    rc.chain = chain == "replay" ? pcm::ChainMode::replay : pcm::ChainMode::planning;
    if (*hour_opt)
        rc.hour = hour;
    if (*scen_opt)
        rc.scenario = scenario;
    return pcm::run(rc, std::cout, std::cerr);
}
