#pragma once

#include "pcm/csv.hpp"
#include "pcm/model.hpp"

#include <filesystem>
#include <string>

namespace pcm {

/// Files a config refers to, resolved against the config's directory.
struct ConfigPaths {
    std::filesystem::path config;
    std::filesystem::path demand_csv;
    std::filesystem::path wind_mean_csv;
    std::filesystem::path regulation_csv;
};

struct LoadedConfig {
    MarketInstance instance;
    ConfigPaths paths;
};

/// Reads a JSON config and the CSVs it names, then validates the result.
/// Every failure is an InputError naming the file (and line for CSVs).
/// regulation_override replaces the config's regulation_csv when set.
LoadedConfig load_config(const std::filesystem::path& path,
                         const std::filesystem::path& regulation_override = {});

/// hour,up_price,down_price with hours 1..horizon in order.
EbmPrices read_regulation_csv(const std::filesystem::path& path, int horizon);
void write_regulation_csv(const std::filesystem::path& path, const EbmPrices& prices);

/// hour column plus one column per prosumer id.
std::vector<std::vector<double>> read_profile_csv(const std::filesystem::path& path, int horizon,
                                                  const std::vector<int>& ids);

}  // namespace pcm
