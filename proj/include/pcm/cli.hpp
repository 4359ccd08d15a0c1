#pragma once

#include "pcm/model.hpp"
#include "pcm/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace pcm {

enum class Mode { optimize, settle, scenarios, usm_compare, synth_prices };

/// Throws InputError on an unknown name.
Mode parse_mode(std::string_view name);
const char* to_string(Mode mode);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNumeric = 4;

struct RunConfig {
    std::filesystem::path config;
    std::filesystem::path regulation_csv;  // overrides the config's file when set
    Mode mode = Mode::optimize;
    std::filesystem::path out_dir = "out";
    std::optional<int> hour;                // distribution hour; settle restricts to it
    std::optional<std::uint64_t> scenario;  // WP bitmask, prosumer 1 least significant
    bool verify = false;                    // grid and best-response cross-checks; warnings exit 4
    ChainMode chain = ChainMode::planning;
    bool single_package = false;
    std::uint64_t seed = 1;
    // synth-prices
    int horizon = 24;
    double level = 40.0;
    double volatility = 0.25;
};

/// Runs one mode and writes its CSVs and summary.txt under out_dir.
/// Returns the process exit status; diagnostics go to err.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Synthetic hourly regulation prices: a daily shape scaled by level with
/// seeded AR(1) noise of relative size volatility. Identical for equal
/// inputs.
EbmPrices synthesize_regulation_prices(int horizon, std::uint64_t seed, double level, double volatility);

}  // namespace pcm
