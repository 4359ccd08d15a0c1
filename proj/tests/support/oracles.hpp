#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include "pcm/model.hpp"
#include "pcm/price_plane.hpp"
#include "pcm/selection.hpp"
#include "pcm/wind.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Q(n) by summing the probability of every one of the 2^N selections.
inline std::vector<double> brute_force_weights(const std::vector<double>& q) {
    const std::size_t n = q.size();
    std::vector<double> out(n + 1, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double p = 1.0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool wp = (mask >> i) & 1u;
            p *= wp ? q[i] : 1.0 - q[i];
            count += wp;
        }
        out[static_cast<std::size_t>(count)] += p;
    }
    return out;
}

/// Beta variance of w on [0, cap] from alpha and beta directly.
inline double wind_variance(const pcm::BetaWind& w) {
    const double s = w.alpha + w.beta;
    return w.capacity * w.capacity * w.alpha * w.beta / (s * s * (s + 1.0));
}

inline double wind_variance(const pcm::ProsumerHour& p) {
    return p.second_moment - p.mean_wind * p.mean_wind;
}

/// E[(a D + b) d_i] with D = sum_z d_z, d_z = u_z - x_z - w_z and the w_z
/// independent: a (E[d_i] E[D] + Var w_i) + b E[d_i].
inline double expected_da_cost(const pcm::HourData& h, std::size_t i, const std::vector<double>& x) {
    double mean_total = 0.0;
    for (std::size_t z = 0; z < h.size(); ++z)
        mean_total += h.prosumers[z].demand - x[z] - h.prosumers[z].mean_wind;
    const double mean_i = h.prosumers[i].demand - x[i] - h.prosumers[i].mean_wind;
    return h.gen.a * (mean_i * mean_total + wind_variance(h.prosumers[i])) + h.gen.b * mean_i;
}

/// Expected DA payment of the whole community plus the balancing charge:
/// a (E[D]^2 + Var D) + b E[D] + C_B x_tot.
inline double social_cost(const pcm::HourData& h, double x_tot, double balancing_price) {
    double s = 0.0;
    double var = 0.0;
    for (const auto& p : h.prosumers) {
        s += p.demand - p.mean_wind;
        var += wind_variance(p);
    }
    const double d = s - x_tot;
    return h.gen.a * (d * d + var) + h.gen.b * d + balancing_price * x_tot;
}

/// Gauss-Legendre-free check of the beta second moment: midpoint rule on a
/// fine grid of the density.
inline double second_moment_by_midpoint(const pcm::BetaWind& w, int steps = 20000) {
    const double h = w.capacity / steps;
    double m2 = 0.0;
    const double lb = std::lgamma(w.alpha) + std::lgamma(w.beta) - std::lgamma(w.alpha + w.beta);
    for (int k = 0; k < steps; ++k) {
        const double z = (k + 0.5) / steps;
        const double dens = std::exp((w.alpha - 1) * std::log(z) + (w.beta - 1) * std::log1p(-z) - lb) /
                            w.capacity;
        const double v = z * w.capacity;
        m2 += v * v * dens * h;
    }
    return m2;
}

/// Sign-based balancing side, straight from the dual-price rule.
inline pcm::BalancingSide side_of(double x_tot) {
    return x_tot >= 0.0 ? pcm::BalancingSide::up : pcm::BalancingSide::down;
}

/// Equilibrium total of the n-WP scenario. Each prosumer's first-order
/// condition reads a (sum_z r_z + r_i) = R_i - b with r = u - x - mu; summing
/// over i gives a (N + 1) sum r = sum R - N b, and x_tot = sum(u - mu) - sum r.
inline double equilibrium_total(const pcm::HourData& h, int n, pcm::IncentivePair p) {
    const double N = h.count();
    double s = 0.0;
    for (const auto& pr : h.prosumers)
        s += pr.demand - pr.mean_wind;
    const double sum_r = (n * p.r_wp + (N - n) * p.r_ls - N * h.gen.b) / (h.gen.a * (N + 1.0));
    return s - sum_r;
}

}  // namespace oracle
