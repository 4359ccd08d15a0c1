#include "pcm/objective.hpp"

#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"

#include <cassert>

namespace pcm {

namespace {

void require_weights(const HourData& h, std::span<const double> q) {
    if (q.size() != h.size() + 1)
        throw InputError("selection weights have " + std::to_string(q.size()) + " entries, expected " +
                         std::to_string(h.size() + 1));
}

}  // namespace

HourCoefficients hour_coefficients(const HourData& h) {
    const double a = h.gen.a;
    const double b = h.gen.b;
    double sum_u = 0.0;
    double sum_mu = 0.0;
    double sum_mu_sq = 0.0;
    double sum_second = 0.0;
    for (const auto& p : h.prosumers) {
        sum_u += p.demand;
        sum_mu += p.mean_wind;
        sum_mu_sq += p.mean_wind * p.mean_wind;
        sum_second += p.second_moment;
    }
    HourCoefficients k;
    k.sum_net_demand = h.sum_net_demand();
    k.rhs = h.boundary_rhs();
    k.phi_up = h.up_price - 2.0 * a * k.sum_net_demand - b;
    k.phi_down = h.down_price - 2.0 * a * k.sum_net_demand - b;
    // Cross moments sum_{i != z} mu_i mu_z = (sum mu)^2 - sum mu^2.
    const double cross = sum_mu * sum_mu - sum_mu_sq;
    k.psi = a * sum_u * sum_u - 2.0 * a * sum_u * sum_mu + a * sum_second + a * cross +
            b * k.sum_net_demand;
    return k;
}

double social_cost(const HourData& h, const HourCoefficients& k, int n, IncentivePair prices,
                   BalancingSide side) {
    const double x = equilibrium_total(h, n, prices);
    return h.gen.a * x * x + k.phi(side) * x + k.psi;
}

double social_cost(const HourData& h, int n, IncentivePair prices, BalancingSide side) {
    return social_cost(h, hour_coefficients(h), n, prices, side);
}

double expected_social_cost(const HourData& h, IncentivePair prices, const SubSpace& cell,
                            std::span<const double> q) {
    require_weights(h, q);
    assert(cell.contains(prices));
    const auto k = hour_coefficients(h);
    double total = 0.0;
    for (int n = 0; n <= h.count(); ++n) {
        const auto idx = static_cast<std::size_t>(n);
        if (q[idx] == 0.0)
            continue;
        total += q[idx] * social_cost(h, k, n, prices, cell.cb_table[idx]);
    }
    return total;
}

double expected_social_cost(const HourData& h, const Partition& partition, IncentivePair prices,
                            std::span<const double> q) {
    return expected_social_cost(h, prices, classify(partition, prices), q);
}

std::pair<double, double> extreme_totals(const HourData& h, IncentivePair prices) {
    return {equilibrium_total(h, 0, prices), equilibrium_total(h, h.count(), prices)};
}

Affine2 total_affine(const HourData& h, int n) {
    const double d = h.slope_denominator();
    return {h.boundary_rhs() / d, -static_cast<double>(n) / d,
            -static_cast<double>(h.count() - n) / d};
}

Quadratic2 expected_cost_quadratic(const HourData& h, const SubSpace& cell, std::span<const double> q) {
    require_weights(h, q);
    const auto k = hour_coefficients(h);
    Quadratic2 f;
    for (int n = 0; n <= h.count(); ++n) {
        const auto idx = static_cast<std::size_t>(n);
        if (q[idx] == 0.0)
            continue;
        const Affine2 x = total_affine(h, n);
        Quadratic2 w = product(x, x) * h.gen.a;
        w += lift(x * k.phi(cell.cb_table[idx]));
        w.c += k.psi;
        f += w * q[idx];
    }
    return f;
}

}  // namespace pcm
