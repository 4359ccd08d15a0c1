"""Two-package incentive pricing for a prosumer community."""

from ._core import (
    BalancingSide,
    ChainMode,
    HourSolution,
    IncentivePair,
    InfeasibleError,
    InputError,
    MarketInstance,
    Scenario,
    SettlementRecord,
    SolverOptions,
    enumerate_scenarios,
    expected_social_cost,
    hour_data,
    load_config,
    nash_equilibrium,
    best_response_oracle,
    scenario_prob,
    selection_weights,
    settle,
    single_package_weights,
    solve_day,
    solve_hour,
    usm_baseline,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
