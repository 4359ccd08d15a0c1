#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pcm {

/// One-based hour of the optimization horizon. Profiles are stored
/// zero-based; index() performs the offset.
class Hour {
public:
    constexpr explicit Hour(int value) : value_(value) {}

    constexpr int value() const { return value_; }
    constexpr std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }

    friend constexpr bool operator==(Hour, Hour) = default;

private:
    int value_;
};

/// Which regulation price settles the community's net balancing energy.
enum class BalancingSide { up, down };

const char* to_string(BalancingSide side);

/// Quadratic DA generation cost G(d) = a/2 d^2 + b d + c.
struct GeneratorCost {
    double a = 0.0;  // EUR/MWh^2
    double b = 0.0;  // EUR/MWh
    double c = 0.0;  // EUR

    /// Marginal DA price a d + b.
    double price(double demand) const { return a * demand + b; }
};

struct WindModelParams {
    double capacity = 0.0;            // MW
    std::vector<double> mean_profile;  // MWh, per hour
    double spread = 0.0;               // percentage-style spread, see wind_from_spread
};

struct ProsumerProfile {
    int id = 0;
    std::vector<double> demand;  // MWh, per hour
    WindModelParams wind;
    double q = 0.0;  // probability of choosing the WP package
};

/// Up- and down-regulation prices; either may be negative.
struct EbmPrices {
    std::vector<double> up;
    std::vector<double> down;
};

struct EaConstraints {
    std::vector<double> r_wp_floor;  // EUR/MWh
    std::vector<double> r_ls_floor;  // EUR/MWh
    std::vector<double> ramp_up;     // MWh/h, > 0
    std::vector<double> ramp_down;   // MWh/h, < 0
    double x_prev_init = 0.0;        // settled balancing energy before hour 1
};

struct MarketInstance {
    GeneratorCost gen;
    std::vector<ProsumerProfile> prosumers;
    EbmPrices ebm;
    EaConstraints ea;
    int horizon = 0;

    std::size_t size() const { return prosumers.size(); }
    std::vector<double> selection_probabilities() const;
};

struct Violation {
    std::string field;
    std::string bound;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Checks every type invariant plus the price-floor condition
/// 0 <= b <= min over hours of both floors. Never throws.
ValidationReport validate(const MarketInstance& instance);

/// Moment data of one prosumer for one hour.
struct ProsumerHour {
    double demand = 0.0;         // u
    double mean_wind = 0.0;      // mu, MWh
    double second_moment = 0.0;  // E[w^2], MWh^2
    double capacity = 0.0;

    double net_demand() const { return demand - mean_wind; }
};

/// Everything the per-hour operations need, with wind moments resolved.
struct HourData {
    Hour hour{1};
    GeneratorCost gen;
    std::vector<ProsumerHour> prosumers;
    double up_price = 0.0;
    double down_price = 0.0;
    double r_wp_floor = 0.0;
    double r_ls_floor = 0.0;
    double ramp_up = 0.0;
    double ramp_down = 0.0;

    std::size_t size() const { return prosumers.size(); }
    int count() const { return static_cast<int>(prosumers.size()); }
    double balancing_price(BalancingSide side) const {
        return side == BalancingSide::up ? up_price : down_price;
    }
    double sum_net_demand() const;
    double min_net_demand() const;
    /// a (N + 1), the denominator shared by all equilibrium totals.
    double slope_denominator() const { return gen.a * (count() + 1); }
    /// N b + a (N + 1) sum(u - mu): the sub-space boundary constant.
    double boundary_rhs() const;
};

/// Resolves the wind moments of every prosumer for one hour. E[w^2] comes
/// from the CF/CCF quadrature. Throws ParameterError if the hour is outside
/// the horizon or a wind profile cannot be moment-matched.
HourData hour_data(const MarketInstance& instance, Hour hour);

}  // namespace pcm
