#pragma once

// Brute-force reference for one hour: a uniform grid over the box the ramp
// window and floors allow, each point checked against the constraints and
// priced from the equilibrium totals directly.

#include "oracles.hpp"

#include "pcm/budget.hpp"
#include "pcm/equilibrium.hpp"
#include "pcm/model.hpp"

#include <limits>
#include <optional>
#include <span>

namespace oracle {

struct GridPoint {
    pcm::IncentivePair p;
    double cost = 0.0;
};

struct GridFeasibility {
    bool floors = true;
    bool ramp = true;
    bool budget = true;
    bool ok() const { return floors && ramp && budget; }
};

inline GridFeasibility check_point(const pcm::HourData& h, std::span<const double> q, double x_prev,
                                   pcm::IncentivePair p, double tol = 1e-9) {
    GridFeasibility f;
    f.floors = p.r_wp >= h.r_wp_floor - tol && p.r_ls >= h.r_ls_floor - tol;
    double budget = 0.0;
    for (int n = 0; n <= h.count(); ++n) {
        const double x = oracle::equilibrium_total(h, n, p);
        const double scale = std::max(1.0, std::abs(x_prev) + std::abs(x));
        if (x > x_prev + h.ramp_up + tol * scale || x < x_prev + h.ramp_down - tol * scale)
            f.ramp = false;
        budget += q[static_cast<std::size_t>(n)] * pcm::profit_lower_bound(h, n, p, side_of(x));
    }
    f.budget = budget >= -1e-9;
    return f;
}

inline double cost_at(const pcm::HourData& h, std::span<const double> q, pcm::IncentivePair p) {
    double c = 0.0;
    for (int n = 0; n <= h.count(); ++n) {
        const double x = oracle::equilibrium_total(h, n, p);
        c += q[static_cast<std::size_t>(n)] * oracle::social_cost(h, x, h.balancing_price(side_of(x)));
    }
    return c;
}

/// Best feasible point of a size x size grid, or nothing if none is feasible.
inline std::optional<GridPoint> grid_minimum(const pcm::HourData& h, std::span<const double> q,
                                             double x_prev, int size = 400) {
    const double N = h.count();
    const double k = h.slope_denominator();
    const double rhs = h.boundary_rhs();
    // x_0 depends on R_LS only and x_N on R_WP only; both must sit in the window.
    const double lo = (rhs - k * (x_prev + h.ramp_up)) / N;
    const double hi = (rhs - k * (x_prev + h.ramp_down)) / N;
    const double w_lo = std::max(lo, h.r_wp_floor), l_lo = std::max(lo, h.r_ls_floor);
    if (w_lo > hi || l_lo > hi)
        return std::nullopt;
    std::optional<GridPoint> best;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const pcm::IncentivePair p{w_lo + (hi - w_lo) * i / (size - 1), l_lo + (hi - l_lo) * j / (size - 1)};
            if (!check_point(h, q, x_prev, p).ok())
                continue;
            const double c = cost_at(h, q, p);
            if (!best || c < best->cost)
                best = GridPoint{p, c};
        }
    }
    return best;
}

}  // namespace oracle
