#pragma once

#include "pcm/model.hpp"
#include "pcm/partition.hpp"
#include "pcm/price_plane.hpp"

#include <span>
#include <vector>

namespace pcm {

/// Lower bounds on the summed equilibrium purchases of the WP and LS
/// groups of an n-WP scenario, using min_i (u_i - mu_i) for every member.
struct PackageTotals {
    double wp = 0.0;
    double ls = 0.0;
};

PackageTotals wp_ls_totals_lb(const HourData& h, int n, IncentivePair prices);

/// Affine forms of the two bounds above.
Affine2 wp_total_lb_affine(const HourData& h, int n);
Affine2 ls_total_lb_affine(const HourData& h, int n);

/// Conservative EA profit of an n-WP scenario:
/// R_WP * wp_lb + R_LS * ls_lb - C_B * x_n.
double profit_lower_bound(const HourData& h, int n, IncentivePair prices, BalancingSide side);

struct ProfitBound {
    std::vector<double> z_hat;  // indexed by n
    double i_t = 0.0;           // sum_n Q(n) z_hat(n)
    double min_net_demand = 0.0;
};

ProfitBound profit_floor(const HourData& h, IncentivePair prices, const SubSpace& cell,
                         std::span<const double> q);

/// i_t inside a fixed cell, assembled as one quadratic in the prices.
Quadratic2 budget_quadratic(const HourData& h, const SubSpace& cell, std::span<const double> q);

/// Accepted slack on i_t >= 0, EUR.
inline constexpr double kBudgetTolerance = 1e-9;

}  // namespace pcm
