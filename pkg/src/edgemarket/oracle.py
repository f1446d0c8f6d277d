"""Exhaustive grid references for auditing the solvers.

These deliberately dumb searches are the ground truth the fast paths are
tested against: a utility scan for the user's demand split, a mutual
best-response scan over the provider strategy square, a unilateral
deviation scan measuring how far a profile is from equilibrium, and a
price scan for the outer stage. Only the searched variables are gridded;
the user response inside the provider and price scans comes from the full
precision demand solver so that each audit isolates one component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demand import best_response_x
from .model import MarketParams, eccsp_profit, mu_utility, scsp_profit, wno_payoff
from .nash import solve_nash

__all__ = [
    "GridSpec",
    "oracle_best_x",
    "oracle_nash",
    "oracle_price",
    "deviation_gain",
]


@dataclass(frozen=True)
class GridSpec:
    """Number of grid points per axis (endpoints included)."""

    resolution: int = 1001

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError(f"resolution must be at least 2, got {self.resolution}")

    def points(self, lo: float = 0.0, hi: float = 1.0) -> list[float]:
        n = self.resolution
        # endpoints pinned exactly; scaled arithmetic may round past them
        return [lo] + [lo + (hi - lo) * i / (n - 1) for i in range(1, n - 1)] + [hi]


def oracle_best_x(
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
    grid: GridSpec = GridSpec(),
) -> float:
    """Grid point maximizing the user utility; ties go to the smallest x."""
    best_x, best_u = 0.0, -np.inf
    for x in grid.points():
        u = mu_utility(x, theta, t, p, params)
        if u > best_u:
            best_x, best_u = x, u
    return best_x


def oracle_nash(
    p: float,
    params: MarketParams,
    grid: GridSpec = GridSpec(resolution=201),
    demand_tol: float = 1e-10,
) -> tuple[float, float, bool, float]:
    """Mutual best-response scan over the provider strategy square.

    Builds both profit matrices on an n-by-n grid (user response at full
    precision per cell), collects the profiles where each strategy is a
    grid best response to the other, and returns the one minimizing the
    larger unilateral grid improvement, together with that improvement.
    The boolean reports whether an exact mutual best response existed; if
    none does, the minimum-improvement profile is returned instead.
    """
    pts = grid.points()
    n = len(pts)
    profit_s = np.empty((n, n))
    profit_e = np.empty((n, n))
    for i, theta in enumerate(pts):
        for j, t in enumerate(pts):
            x = best_response_x(theta, t, p, params, tol=demand_tol).x_star
            profit_s[i, j] = scsp_profit(x, theta, p, params)
            profit_e[i, j] = eccsp_profit(x, t, params)

    # eps[i, j]: the larger of the two players' best unilateral grid gains
    gain_s = profit_s.max(axis=0, keepdims=True) - profit_s
    gain_e = profit_e.max(axis=1, keepdims=True) - profit_e
    eps = np.maximum(gain_s, gain_e)

    mutual = (gain_s == 0.0) & (gain_e == 0.0)
    if mutual.any():
        candidates = np.argwhere(mutual)
        is_mutual = True
    else:
        candidates = np.argwhere(eps == eps.min())
        is_mutual = False
    # row-major order makes ties deterministic (smallest theta, then t)
    i, j = candidates[0]
    return pts[i], pts[j], is_mutual, float(eps[i, j])


def deviation_gain(
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
    grid: GridSpec = GridSpec(),
    demand_tol: float = 1e-10,
) -> float:
    """Largest profit gain any single player finds on a deviation grid.

    Scans unilateral deviations of each provider from (theta, t) while the
    other stays put; a profile is an eps-equilibrium for eps equal to the
    returned value (floored at zero).
    """

    def x_at(th: float, tt: float) -> float:
        return best_response_x(th, tt, p, params, tol=demand_tol).x_star

    base_s = scsp_profit(x_at(theta, t), theta, p, params)
    base_e = eccsp_profit(x_at(theta, t), t, params)
    gain = 0.0
    for s in grid.points():
        gain = max(gain, scsp_profit(x_at(s, t), s, p, params) - base_s)
        gain = max(gain, eccsp_profit(x_at(theta, s), s, params) - base_e)
    return gain


def oracle_price(
    params: MarketParams,
    grid: GridSpec = GridSpec(resolution=101),
    nash_tol: float = 1e-8,
    nash_max_sweeps: int = 500,
    demand_tol: float = 1e-10,
) -> float:
    """Grid price maximizing the nested operator payoff; ties to the smallest."""
    best_p, best_v = 0.0, -np.inf
    for p in grid.points(0.0, params.p_bar):
        nash = solve_nash(
            p, params, tol=nash_tol, max_sweeps=nash_max_sweeps, demand_tol=demand_tol
        )
        v = wno_payoff(nash.x_star, p, params)
        if v > best_v:
            best_p, best_v = p, v
    return best_p
