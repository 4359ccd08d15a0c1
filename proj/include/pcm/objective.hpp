#pragma once

#include "pcm/model.hpp"
#include "pcm/partition.hpp"
#include "pcm/price_plane.hpp"

#include <span>
#include <utility>

namespace pcm {

/// Price-independent pieces of the social cost for one hour.
struct HourCoefficients {
    double phi_up = 0.0;    // C_UR - 2a sum(u - mu) - b
    double phi_down = 0.0;  // C_DnR - 2a sum(u - mu) - b
    double psi = 0.0;       // EUR
    double rhs = 0.0;       // N b + a (N + 1) sum(u - mu)
    double sum_net_demand = 0.0;

    double phi(BalancingSide side) const { return side == BalancingSide::up ? phi_up : phi_down; }
};

HourCoefficients hour_coefficients(const HourData& h);

/// W = a x^2 + Phi x + Psi with x the n-WP equilibrium total.
double social_cost(const HourData& h, const HourCoefficients& k, int n, IncentivePair prices,
                   BalancingSide side);
double social_cost(const HourData& h, int n, IncentivePair prices, BalancingSide side);

/// sum_n Q(n) W_n with the balancing side of each n taken from the cell.
double expected_social_cost(const HourData& h, IncentivePair prices, const SubSpace& cell,
                            std::span<const double> q);

/// expected_social_cost with the cell located by classify.
double expected_social_cost(const HourData& h, const Partition& partition, IncentivePair prices,
                            std::span<const double> q);

/// The equilibrium totals at n = 0 and n = N; every other n lies between.
std::pair<double, double> extreme_totals(const HourData& h, IncentivePair prices);

/// The n-WP equilibrium total as an affine function of the prices.
Affine2 total_affine(const HourData& h, int n);

/// expected_social_cost inside a fixed cell, assembled as one quadratic.
Quadratic2 expected_cost_quadratic(const HourData& h, const SubSpace& cell, std::span<const double> q);

}  // namespace pcm
