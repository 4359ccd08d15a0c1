#pragma once

#include "pcm/model.hpp"
#include "pcm/price_plane.hpp"
#include "pcm/selection.hpp"

#include <span>
#include <vector>

namespace pcm {

/// Equilibrium balancing purchases of all prosumers for one scenario.
struct NeOutcome {
    std::vector<double> x;  // MWh, negative means injection
    double x_tot = 0.0;
    double multiplier = 0.0;  // the shared-constraint multiplier; zero at the interior point
};

/// R_WP for WP prosumers, R_LS for LS prosumers.
double incentive_for(const Scenario& s, std::size_t i, IncentivePair prices);

/// Expected DA cost E[P d_i] of prosumer i given everyone's purchases x.
double expected_da_cost(const HourData& h, std::size_t i, std::span<const double> x);

/// Expected total cost R_i x_i + E[P d_i] of prosumer i.
double prosumer_cost(const HourData& h, std::size_t i, std::span<const double> x, double incentive);

/// d cost / d x_i.
double prosumer_cost_gradient(const HourData& h, std::size_t i, std::span<const double> x,
                              double incentive);

/// Closed-form equilibrium total for n WP prosumers:
/// (N b - (n R_WP + (N - n) R_LS)) / (a (N + 1)) + sum(u - mu).
double equilibrium_total(const HourData& h, int n, IncentivePair prices);

/// Closed-form Nash equilibrium. Requires prices at or above b (guaranteed
/// for validated instances and prices above the floors).
NeOutcome nash_equilibrium(const HourData& h, const Scenario& s, IncentivePair prices);

/// Same equilibrium through a dense LU solve of the stacked first-order
/// conditions. Throws NumericError if the system is singular.
NeOutcome best_response_oracle(const HourData& h, const Scenario& s, IncentivePair prices);

}  // namespace pcm
