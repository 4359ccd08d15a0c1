#include "pcm/settlement.hpp"

#include "pcm/budget.hpp"
#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"

namespace pcm {

SettlementRecord settle(const HourData& h, const HourSolution& solution, const Scenario& scenario) {
    if (scenario.size() != h.size())
        throw InputError("scenario covers " + std::to_string(scenario.size()) +
                         " prosumers, hour has " + std::to_string(h.size()));
    SettlementRecord r;
    r.hour = h.hour;
    r.scenario = scenario;
    r.prices = solution.prices;

    const NeOutcome ne = nash_equilibrium(h, scenario, solution.prices);
    r.x = ne.x;
    r.x_tot = ne.x_tot;
    r.cb_used = r.x_tot >= 0.0 ? BalancingSide::up : BalancingSide::down;

    double wp_sum = 0.0;
    double ls_sum = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        r.da_demand += h.prosumers[i].net_demand() - r.x[i];
        if (scenario.is_wp(i)) {
            wp_sum += r.x[i];
            continue;
        }
        ls_sum += r.x[i];
        LsPrice p;
        p.id = static_cast<int>(i) + 1;
        p.service = solution.prices.r_ls * r.x[i];
        p.expected_da_cost = expected_da_cost(h, i, r.x);
        p.b_star = p.service + p.expected_da_cost;
        r.ls_prices.push_back(p);
    }
    r.ea_profit = solution.prices.r_wp * wp_sum + solution.prices.r_ls * ls_sum -
                  h.balancing_price(r.cb_used) * r.x_tot;
    r.z_hat = profit_lower_bound(h, scenario.wp_count(), solution.prices, r.cb_used);
    return r;
}

UsmResult usm_baseline(const HourData& h) {
    const double c_ur = h.up_price;
    if (h.gen.b < 0.0 || h.gen.b > c_ur)
        throw ParameterError("hour " + std::to_string(h.hour.value()) +
                             ": baseline needs 0 <= b <= C_UR, got b = " + std::to_string(h.gen.b) +
                             ", C_UR = " + std::to_string(c_ur));
    const IncentivePair p{c_ur, c_ur};
    UsmResult out;
    out.x_hat_tot = equilibrium_total(h, h.count(), p);
    out.side = out.x_hat_tot >= 0.0 ? BalancingSide::up : BalancingSide::down;
    out.social_cost = social_cost(h, h.count(), p, out.side);
    return out;
}

}  // namespace pcm
