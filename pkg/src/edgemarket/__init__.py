"""Equilibrium solver for the joint sponsored and edge-cached content market.

The market has three decision stages solved by backward induction: the
mobile user's demand split (innermost), the competition between the
sponsored and the edge caching content providers, and the network
operator's price. ``solve_stackelberg_grid`` runs the whole nest;
``oracle`` holds brute-force references for auditing every stage.
"""

from .config import MARKET_KEYS, ConfigError, SolverSettings, load_config
from .demand import (
    Boundary,
    DemandSensitivities,
    DemandSolution,
    best_response_x,
    sensitivities,
)
from .model import (
    ConditionCheck,
    ConditionReport,
    MarketParams,
    PayoffVector,
    StrategyProfile,
    check_conditions,
    eccsp_profit,
    f_demand,
    g_quality,
    h_ad,
    mu_utility,
    payoff_vector,
    scsp_profit,
    wno_payoff,
)
from .nash import (
    NashSolution,
    eccsp_best_response,
    eccsp_profit_slope,
    scsp_best_response,
    scsp_profit_slope,
    solve_nash,
)
from .oracle import GridSpec, deviation_gain, oracle_best_x, oracle_nash, oracle_price
from .pricing import (
    PriceSearchMethod,
    StackelbergResult,
    evaluate_price,
    solve_stackelberg_grid,
    solve_stackelberg_subgradient,
)
from .sweep import CSV_HEADER, SWEEPABLE_PARAMS, SweepRow, SweepSpec, rows_to_csv, run_sweep

__version__ = "0.1.0"

__all__ = [
    "MARKET_KEYS",
    "ConfigError",
    "SolverSettings",
    "load_config",
    "Boundary",
    "DemandSensitivities",
    "DemandSolution",
    "best_response_x",
    "sensitivities",
    "ConditionCheck",
    "ConditionReport",
    "MarketParams",
    "PayoffVector",
    "StrategyProfile",
    "check_conditions",
    "eccsp_profit",
    "f_demand",
    "g_quality",
    "h_ad",
    "mu_utility",
    "payoff_vector",
    "scsp_profit",
    "wno_payoff",
    "NashSolution",
    "eccsp_best_response",
    "eccsp_profit_slope",
    "scsp_best_response",
    "scsp_profit_slope",
    "solve_nash",
    "GridSpec",
    "deviation_gain",
    "oracle_best_x",
    "oracle_nash",
    "oracle_price",
    "PriceSearchMethod",
    "StackelbergResult",
    "evaluate_price",
    "solve_stackelberg_grid",
    "solve_stackelberg_subgradient",
    "CSV_HEADER",
    "SWEEPABLE_PARAMS",
    "SweepRow",
    "SweepSpec",
    "rows_to_csv",
    "run_sweep",
]
