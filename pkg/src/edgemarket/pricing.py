"""Operator pricing stage: the outer level of the nested equilibrium solve.

The operator picks a price in [0, p_bar] anticipating the providers' Nash
equilibrium and the user's induced demand at every candidate price. The
lower level is resolved numerically at each price; nothing about the
response map is assumed beyond continuity.

Two search paths are provided. The grid path (uniform scan plus
golden-section refinement inside the bracketing cell) is the correctness
anchor: deterministic and derivative-free. The projected sub-gradient path
climbs a finite-difference payoff slope with a diminishing step size and
reports its best iterate; it exists to exercise the iterative scheme and
is cross-checked against the grid path in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import sqrt

from .model import MarketParams, wno_payoff
from .nash import NashSolution, solve_nash
from .optim import golden_section_max

__all__ = [
    "PriceSearchMethod",
    "StackelbergResult",
    "evaluate_price",
    "solve_stackelberg_grid",
    "solve_stackelberg_subgradient",
]

# Consecutive non-improving sub-gradient steps tolerated before stopping early.
_STALL_LIMIT = 50


class PriceSearchMethod(Enum):
    GRID_REFINE = "grid_refine"
    SUB_GRADIENT = "sub_gradient"


@dataclass(frozen=True)
class StackelbergResult:
    """Solved outer stage: optimal price, its lower-level equilibrium, and trace.

    ``trace`` lists the (price, payoff) pairs in evaluation order (grid
    scan then refinement for the grid path, iterates for the sub-gradient
    path). ``at_price_cap`` is True when the optimum sits within one grid
    cell of the cap. ``converged`` means the sub-gradient run stopped on
    its stall rule rather than exhausting its step budget; the grid path
    always sets it.
    """

    p_star: float
    lower: NashSolution
    wno_payoff: float
    method: PriceSearchMethod
    trace: tuple[tuple[float, float], ...]
    at_price_cap: bool
    converged: bool


def evaluate_price(
    p: float,
    params: MarketParams,
    nash_tol: float = 1e-8,
    nash_max_sweeps: int = 500,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> tuple[NashSolution, float]:
    """Lower-level equilibrium at price ``p`` and the operator payoff it induces."""
    nash = solve_nash(
        p,
        params,
        tol=nash_tol,
        max_sweeps=nash_max_sweeps,
        demand_tol=demand_tol,
        demand_max_iter=demand_max_iter,
    )
    return nash, wno_payoff(nash.x_star, p, params)


def solve_stackelberg_grid(
    params: MarketParams,
    grid_points: int = 101,
    refine_tol: float = 1e-6,
    strict_conditions: bool = False,
    nash_tol: float = 1e-8,
    nash_max_sweeps: int = 500,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> StackelbergResult:
    """Maximize the operator payoff over [0, p_bar] by grid scan plus refinement.

    Evaluates a uniform ``grid_points`` grid, then golden-section refines
    the payoff inside the cell bracketing the grid argmax until the bracket
    is narrower than ``refine_tol``. The reported optimum is the best price
    actually evaluated, so refinement can only improve on the grid. With
    ``strict_conditions`` set, prices whose induced equilibrium violates a
    point condition are excluded from the argmax (they remain in the
    trace); if every price is excluded the filter is dropped.
    """
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}")
    if not refine_tol > 0.0:
        raise ValueError(f"refine_tol must be positive, got {refine_tol}")

    p_bar = params.p_bar
    cache: dict[float, tuple[NashSolution, float]] = {}
    trace: list[tuple[float, float]] = []

    def payoff_at(p: float) -> float:
        # golden-section arithmetic can land an ulp outside the box
        p = min(max(p, 0.0), p_bar)
        if p not in cache:
            cache[p] = evaluate_price(
                p, params, nash_tol, nash_max_sweeps, demand_tol, demand_max_iter
            )
            trace.append((p, cache[p][1]))
        return cache[p][1]

    grid = [p_bar * i / (grid_points - 1) for i in range(grid_points - 1)] + [p_bar]
    for p in grid:
        payoff_at(p)

    def eligible(p: float) -> bool:
        return not strict_conditions or not cache[p][0].conditions.point_conditions_violated()

    candidates = [p for p in grid if eligible(p)]
    if not candidates:
        candidates = grid
    best_grid = max(candidates, key=lambda p: cache[p][1])
    i = grid.index(best_grid)
    golden_section_max(
        payoff_at,
        grid[max(0, i - 1)],
        grid[min(grid_points - 1, i + 1)],
        width=refine_tol,
    )

    evaluated = [p for p in cache if eligible(p)]
    if not evaluated:
        evaluated = list(cache)
    # ties keep the earlier (lower-price) evaluation for determinism
    p_star = evaluated[0]
    for p in evaluated[1:]:
        if cache[p][1] > cache[p_star][1]:
            p_star = p

    lower, payoff = cache[p_star]
    cell = p_bar / (grid_points - 1)
    return StackelbergResult(
        p_star=p_star,
        lower=lower,
        wno_payoff=payoff,
        method=PriceSearchMethod.GRID_REFINE,
        trace=tuple(trace),
        at_price_cap=(p_bar - p_star) <= cell,
        converged=lower.converged,
    )


def solve_stackelberg_subgradient(
    params: MarketParams,
    p0: float,
    steps: int = 300,
    nash_tol: float = 1e-8,
    nash_max_sweeps: int = 500,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> StackelbergResult:
    """Projected sub-gradient ascent on the operator payoff from ``p0``.

    Each step estimates the payoff slope by a symmetric finite difference
    through the full lower-level solve (the stencil is clamped into
    [0, p_bar]), moves by eta_0 / sqrt(k) with eta_0 = p_bar / 10, and
    projects back into the box. The best iterate by payoff is returned.
    The run stops early after 50 consecutive steps without improvement.
    """
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    if not 0.0 <= p0 <= params.p_bar:
        raise ValueError(f"p0 must lie in [0, p_bar], got {p0}")

    p_bar = params.p_bar
    eta0 = p_bar / 10.0
    half_width = max(1e-4 * p_bar, 1e-6)

    def solve_at(p: float) -> tuple[NashSolution, float]:
        return evaluate_price(
            p, params, nash_tol, nash_max_sweeps, demand_tol, demand_max_iter
        )

    p = p0
    nash, payoff = solve_at(p)
    trace: list[tuple[float, float]] = [(p, payoff)]
    best_p, best_nash, best_payoff = p, nash, payoff
    stall = 0
    stopped_early = False
    for k in range(1, steps + 1):
        hi = min(p_bar, p + half_width)
        lo = max(0.0, p - half_width)
        slope = (solve_at(hi)[1] - solve_at(lo)[1]) / (hi - lo)
        p = min(p_bar, max(0.0, p + eta0 / sqrt(k) * slope))
        nash, payoff = solve_at(p)
        trace.append((p, payoff))
        if payoff > best_payoff:
            best_p, best_nash, best_payoff = p, nash, payoff
            stall = 0
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                stopped_early = True
                break

    return StackelbergResult(
        p_star=best_p,
        lower=best_nash,
        wno_payoff=best_payoff,
        method=PriceSearchMethod.SUB_GRADIENT,
        trace=tuple(trace),
        at_price_cap=(p_bar - best_p) <= p_bar / 100.0,
        converged=stopped_early,
    )
