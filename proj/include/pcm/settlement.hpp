#pragma once

#include "pcm/model.hpp"
#include "pcm/selection.hpp"
#include "pcm/solver.hpp"

#include <vector>

namespace pcm {

/// Lump-sum price of one LS prosumer.
struct LsPrice {
    int id = 0;                     // one-based prosumer id
    double b_star = 0.0;            // EUR; negative is a reward from the EA
    double service = 0.0;           // R_LS x_j, the balancing-service part
    double expected_da_cost = 0.0;  // E[P d_j]
};

struct SettlementRecord {
    Hour hour{1};
    Scenario scenario{0, 0};
    IncentivePair prices;
    std::vector<double> x;  // MWh per prosumer
    double x_tot = 0.0;
    std::vector<LsPrice> ls_prices;
    double ea_profit = 0.0;  // realized Z, EUR
    double z_hat = 0.0;      // the conservative bound for the same n
    double da_demand = 0.0;  // sum(u - mu - x), MWh
    BalancingSide cb_used = BalancingSide::up;
};

/// Settles one realized selection at the hour's optimal prices. Throws
/// InputError if the scenario size does not match the hour.
SettlementRecord settle(const HourData& h, const HourSolution& solution, const Scenario& scenario);

struct UsmResult {
    double x_hat_tot = 0.0;
    double social_cost = 0.0;
    BalancingSide side = BalancingSide::up;
};

/// Uncoordinated baseline where every prosumer faces C_UR. Throws
/// ParameterError unless 0 <= b <= C_UR.
UsmResult usm_baseline(const HourData& h);

}  // namespace pcm
