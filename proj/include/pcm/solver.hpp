#pragma once

#include "pcm/model.hpp"
#include "pcm/partition.hpp"
#include "pcm/price_plane.hpp"
#include "pcm/selection.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pcm {

/// g(R_WP, R_LS) >= 0.
struct LinearConstraint {
    Affine2 g;
    std::string family;  // case, subspace, floor_wp, floor_ls, ramp_up, ramp_down
};

/// Constraint families that make up one cell problem.
struct SubProblem {
    SubSpace cell;
    Quadratic2 objective;  // expected social cost inside the cell
    Quadratic2 budget;     // i_t; feasible where budget >= 0
    std::vector<LinearConstraint> linear;
};

/// Offset applied to strict half-planes: lhs > rhs becomes lhs >= rhs + eps.
double strict_margin(double rhs);

/// Builds the cell problem for one hour. The ramp limits bound the larger
/// of the two extreme totals from above and the smaller from below.
SubProblem assemble_subproblem(const HourData& h, const SubSpace& cell, std::span<const double> q,
                               double x_prev);

enum class CellStatus { optimal, infeasible };

const char* to_string(CellStatus status);

struct CellResult {
    int cell_id = 0;
    int n_sigma = 0;
    PriceOrder order = PriceOrder::ls_ge_wp;
    CellStatus status = CellStatus::infeasible;
    std::string reason;  // why a cell is infeasible
    IncentivePair prices;
    double cost = 0.0;
    bool budget_active = false;
    std::vector<std::string> warnings;
};

struct SolverOptions {
    /// Cross-check each cell optimum against a grid over the cell's
    /// bounding box.
    bool verify_grid = false;
    int grid_size = 400;
    /// Cross-check the closed-form equilibrium against the dense solve at
    /// the chosen prices.
    bool verify_equilibrium = false;
    /// Only the WP package is offered: Q is a point mass at n = N and
    /// R_LS is tied to R_WP, so its floor and the ls-side ramp bound drop out.
    bool single_package = false;
    /// Solve the cells of an hour concurrently.
    bool parallel = false;
};

/// Minimizes the cell's objective over its feasible set.
CellResult solve_cell(const SubProblem& sub, const SolverOptions& options = {});

struct HourSolution {
    Hour hour{1};
    IncentivePair prices;
    int n_sigma_star = 0;
    PriceOrder order = PriceOrder::ls_ge_wp;
    int cell_id = 0;
    double expected_cost = 0.0;
    double budget = 0.0;  // i_t at the chosen prices
    std::vector<CellResult> per_cell;
    double x_prev_in = 0.0;
    double x_prev_out = 0.0;  // expected total sum_n Q(n) x_n unless replayed
    std::vector<std::string> warnings;
};

/// Sweeps every cell and keeps the cheapest feasible one. Costs within
/// 1e-9 relative count as ties and go to the lowest n_sigma, with ls>=wp
/// before ls<wp. Throws InfeasibleError when no cell is feasible.
HourSolution solve_hour(const HourData& h, std::span<const double> q, double x_prev,
                        const SolverOptions& options = {});

/// How the settled balancing energy of hour t feeds the ramp limits of
/// hour t + 1.
enum class ChainMode { planning, replay };

/// Solves hours 1..T in order. In replay mode, realized[t] is the scenario
/// of hour t + 1 and its equilibrium total is carried forward.
std::vector<HourSolution> solve_day(const MarketInstance& instance, std::span<const double> q,
                                    const SolverOptions& options = {},
                                    ChainMode mode = ChainMode::planning,
                                    const std::vector<Scenario>& realized = {});

/// Point mass at n = N.
std::vector<double> single_package_weights(std::size_t size);

}  // namespace pcm
