#!/usr/bin/env python3
"""Cross-check the fast solvers against the brute-force grid references.

Prints solver-versus-oracle values for the optimal price, the provider
equilibrium, and the user response, plus a unilateral deviation scan at
the solved equilibrium.

Usage:
    python scripts/audit_solution.py [--config configs/defaults.toml] [--grid 101]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from edgemarket import (
    GridSpec,
    deviation_gain,
    load_config,
    oracle_best_x,
    oracle_nash,
    oracle_price,
    solve_stackelberg_grid,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n", 1)[0])
    parser.add_argument("--config", default="configs/defaults.toml")
    parser.add_argument("--grid", type=int, default=101, help="price-oracle resolution")
    args = parser.parse_args()

    params, settings = load_config(args.config)
    result = solve_stackelberg_grid(
        params,
        grid_points=settings.grid_points,
        nash_tol=settings.nash_tol,
        nash_max_sweeps=settings.nash_max_sweeps,
    )
    nash = result.lower

    oracle_p = oracle_price(params, GridSpec(args.grid))
    o_theta, o_t, mutual, eps_grid = oracle_nash(
        result.p_star, params, GridSpec(settings.oracle_nash_grid)
    )
    o_x = oracle_best_x(
        nash.theta_star, nash.t_star, result.p_star, params,
        GridSpec(settings.oracle_demand_grid),
    )
    eps = deviation_gain(
        nash.theta_star, nash.t_star, result.p_star, params, GridSpec(1001)
    )

    print(f"{'quantity':12s} {'solver':>14s} {'oracle':>14s} {'deviation':>12s}")
    for name, solver_v, oracle_v in [
        ("p_star", result.p_star, oracle_p),
        ("theta_star", nash.theta_star, o_theta),
        ("t_star", nash.t_star, o_t),
        ("x_star", nash.x_star, o_x),
    ]:
        print(f"{name:12s} {solver_v:14.8f} {oracle_v:14.8f} {abs(solver_v - oracle_v):12.2e}")
    print(f"grid mutual best response found: {mutual} (grid eps {eps_grid:.2e})")
    print(f"unilateral deviation gain at solved equilibrium: {eps:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
