#include "pcm/budget.hpp"

#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"

namespace pcm {

Affine2 wp_total_lb_affine(const HourData& h, int n) {
    const double d = h.slope_denominator();
    const double N = h.count();
    const double k = n;
    const double m = h.min_net_demand();
    // [n b + n (N - n)(R_LS - R_WP) - n R_WP] / d + n m
    return {(k * h.gen.b) / d + k * m, -(k * (N - k) + k) / d, k * (N - k) / d};
}

Affine2 ls_total_lb_affine(const HourData& h, int n) {
    const double d = h.slope_denominator();
    const double N = h.count();
    const double k = n;
    const double m = h.min_net_demand();
    // [(N - n) b + n (N - n)(R_WP - R_LS) - (N - n) R_LS] / d + (N - n) m
    return {((N - k) * h.gen.b) / d + (N - k) * m, k * (N - k) / d, -(k * (N - k) + (N - k)) / d};
}

PackageTotals wp_ls_totals_lb(const HourData& h, int n, IncentivePair prices) {
    return {wp_total_lb_affine(h, n)(prices), ls_total_lb_affine(h, n)(prices)};
}

double profit_lower_bound(const HourData& h, int n, IncentivePair prices, BalancingSide side) {
    const auto lb = wp_ls_totals_lb(h, n, prices);
    return prices.r_wp * lb.wp + prices.r_ls * lb.ls -
           h.balancing_price(side) * equilibrium_total(h, n, prices);
}

ProfitBound profit_floor(const HourData& h, IncentivePair prices, const SubSpace& cell,
                         std::span<const double> q) {
    if (q.size() != h.size() + 1)
        throw InputError("selection weights have " + std::to_string(q.size()) + " entries, expected " +
                         std::to_string(h.size() + 1));
    ProfitBound out;
    out.min_net_demand = h.min_net_demand();
    out.z_hat.resize(h.size() + 1);
    for (int n = 0; n <= h.count(); ++n) {
        const auto idx = static_cast<std::size_t>(n);
        out.z_hat[idx] = profit_lower_bound(h, n, prices, cell.cb_table[idx]);
        out.i_t += q[idx] * out.z_hat[idx];
    }
    return out;
}

Quadratic2 budget_quadratic(const HourData& h, const SubSpace& cell, std::span<const double> q) {
    const Affine2 r_wp{0.0, 1.0, 0.0};
    const Affine2 r_ls{0.0, 0.0, 1.0};
    Quadratic2 out;
    for (int n = 0; n <= h.count(); ++n) {
        const auto idx = static_cast<std::size_t>(n);
        if (q[idx] == 0.0)
            continue;
        Quadratic2 z = product(r_wp, wp_total_lb_affine(h, n));
        z += product(r_ls, ls_total_lb_affine(h, n));
        z += lift(total_affine(h, n) * -h.balancing_price(cell.cb_table[idx]));
        out += z * q[idx];
    }
    return out;
}

}  // namespace pcm
