"""Provider competition stage: Nash equilibrium between sponsor and cacher.

For a fixed operator price the two content providers play a simultaneous
game: the sponsor picks its sponsorship factor, the cacher its caching
effort, and each profit is evaluated at the user's induced best response.
The equilibrium is computed by alternating exact best responses
(Gauss-Seidel, sponsor first) from a configurable starting profile until
the profile stops moving in max-norm.

Each best response maximizes a conditionally concave profit over [0, 1]:
a golden-section pass localizes the maximizer (robust even if concavity
fails), then a bisection pass on the analytic first-order condition pins
it. The refinement matters: comparing nearly equal profit values near a
smooth maximum is limited by float rounding to roughly sqrt(eps) accuracy,
while the first-order condition crosses zero linearly and resolves the
maximizer to near machine precision, which the outer fixed-point iteration
needs in order to converge below its tolerance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .demand import best_response_x, sensitivities
from .model import (
    ConditionReport,
    MarketParams,
    StrategyProfile,
    check_conditions,
    eccsp_profit,
    scsp_profit,
)
from .optim import golden_section_max

__all__ = [
    "NashSolution",
    "scsp_best_response",
    "eccsp_best_response",
    "scsp_profit_slope",
    "eccsp_profit_slope",
    "solve_nash",
]

# Candidates closer than this to a box endpoint are treated as boundary
# maximizers; below the golden-section resolution the distinction is noise.
_SNAP = 1e-7

# Effort evaluations stay off t = 0 where the marginal cached quality blows up.
_T_FLOOR = 1e-12

_GOLDEN_ITERATIONS = 48


@dataclass(frozen=True)
class NashSolution:
    """Fixed point of the provider game at one price, with diagnostics."""

    theta_star: float
    t_star: float
    x_star: float
    scsp_profit: float
    eccsp_profit: float
    converged: bool
    sweeps: int
    conditions: ConditionReport


def scsp_profit_slope(
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> tuple[float, float]:
    """First and second derivative of the sponsor profit in theta.

    The chain rule runs through the user's best response; at a clamped
    response the demand split is locally constant, so the slope reduces to
    the direct sponsorship-cost term.
    """
    sol = best_response_x(theta, t, p, params, tol=demand_tol, max_iter=demand_max_iter)
    x = sol.x_star
    if not 0.0 < x < 1.0:
        return -p * x, 0.0
    sens = sensitivities(x, theta, t, p, params)
    g = params.gamma
    sc = params.sigma_c
    first = sc * x ** (-g) * sens.dx_dtheta - p * x - theta * p * sens.dx_dtheta
    second = (
        -g * sc * x ** (-g - 1.0) * sens.dx_dtheta ** 2
        + sc * x ** (-g) * sens.d2x_dtheta2
        - 2.0 * p * sens.dx_dtheta
        - theta * p * sens.d2x_dtheta2
    )
    return first, second


def eccsp_profit_slope(
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> tuple[float, float]:
    """First and second derivative of the cacher profit in t (t > 0)."""
    sol = best_response_x(theta, t, p, params, tol=demand_tol, max_iter=demand_max_iter)
    x = sol.x_star
    if not 0.0 < x < 1.0:
        # Revenue is pinned while the response stays clamped; only the
        # linear caching cost moves.
        return -params.C_cache, 0.0
    sens = sensitivities(x, theta, t, p, params)
    g = params.gamma
    sc = params.sigma_c
    rev = sc * (1.0 - x) ** (-g)
    first = -rev * sens.dx_dt - params.C_cache
    second = -g * sc * (1.0 - x) ** (-g - 1.0) * sens.dx_dt ** 2 - rev * sens.d2x_dt2
    return first, second


def _maximize_profit(profit, slope_curvature, tol: float, floor: float, label: str) -> float:
    """Golden-section localization plus first-order-condition bisection.

    ``slope_curvature(s)`` returns (profit', profit'') at s. The bisection
    needs a sign change profit'(lo) >= 0 >= profit'(hi) around the golden
    candidate; the window grows geometrically until one is found. Without a
    sign change (boundary maximizer or flat profit) the golden candidate
    stands. A positive curvature at the result is reported as a warning and
    the search falls back to the golden candidate.
    """
    candidate = golden_section_max(profit, 0.0, 1.0, iterations=_GOLDEN_ITERATIONS)
    if candidate < _SNAP:
        return 0.0
    if candidate > 1.0 - _SNAP:
        return 1.0

    refined = candidate
    window = 1e-6
    while window <= 0.0625:
        lo = max(floor, candidate - window)
        hi = min(1.0, candidate + window)
        s_lo, _ = slope_curvature(lo)
        s_hi, _ = slope_curvature(hi)
        if s_lo >= 0.0 >= s_hi:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                s_mid, _ = slope_curvature(mid)
                if s_mid > 0.0:
                    lo = mid
                elif s_mid < 0.0:
                    hi = mid
                else:
                    lo = hi = mid
            refined = 0.5 * (lo + hi)
            break
        window *= 8.0

    _, curvature = slope_curvature(refined)
    if curvature > 0.0:
        warnings.warn(
            f"{label} profit is not locally concave at its candidate maximizer; "
            "returning the search-grid best",
            RuntimeWarning,
            stacklevel=3,
        )
        return candidate
    return refined


def scsp_best_response(
    t: float,
    p: float,
    params: MarketParams,
    tol: float = 1e-12,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> float:
    """Sponsorship factor maximizing the sponsor profit against effort ``t``.

    Flat stretches (for example p = 0, where sponsorship costs nothing and
    moves nothing) resolve to the smallest maximizer.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if not 0.0 <= p <= params.p_bar:
        raise ValueError(f"p must lie in [0, p_bar], got {p}")

    def profit(theta: float) -> float:
        sol = best_response_x(theta, t, p, params, tol=demand_tol, max_iter=demand_max_iter)
        return scsp_profit(sol.x_star, theta, p, params)

    def slope_curvature(theta: float) -> tuple[float, float]:
        return scsp_profit_slope(theta, t, p, params, demand_tol, demand_max_iter)

    return _maximize_profit(profit, slope_curvature, tol, 0.0, "sponsor")


def eccsp_best_response(
    theta: float,
    p: float,
    params: MarketParams,
    tol: float = 1e-12,
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> float:
    """Caching effort maximizing the cacher profit against sponsorship ``theta``."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    if not 0.0 <= p <= params.p_bar:
        raise ValueError(f"p must lie in [0, p_bar], got {p}")

    def profit(t: float) -> float:
        sol = best_response_x(theta, t, p, params, tol=demand_tol, max_iter=demand_max_iter)
        return eccsp_profit(sol.x_star, t, params)

    def slope_curvature(t: float) -> tuple[float, float]:
        return eccsp_profit_slope(theta, t, p, params, demand_tol, demand_max_iter)

    return _maximize_profit(profit, slope_curvature, tol, _T_FLOOR, "cacher")


def solve_nash(
    p: float,
    params: MarketParams,
    tol: float = 1e-8,
    max_sweeps: int = 500,
    initial: tuple[float, float] = (0.5, 0.5),
    demand_tol: float = 1e-10,
    demand_max_iter: int = 200,
) -> NashSolution:
    """Equilibrium of the provider game at price ``p`` by alternating best responses.

    Converged means the last sweep moved the profile by at most ``tol`` in
    max-norm. Non-convergence (possible when the uniqueness condition
    fails) returns the last iterate flagged converged=False rather than
    raising. The condition report is evaluated at the returned profile
    either way.
    """
    if not 0.0 <= p <= params.p_bar:
        raise ValueError(f"p must lie in [0, p_bar], got {p}")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be at least 1, got {max_sweeps}")

    theta, t = initial
    converged = False
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        theta_next = scsp_best_response(t, p, params, demand_tol=demand_tol,
                                        demand_max_iter=demand_max_iter)
        t_next = eccsp_best_response(theta_next, p, params, demand_tol=demand_tol,
                                     demand_max_iter=demand_max_iter)
        delta = max(abs(theta_next - theta), abs(t_next - t))
        theta, t = theta_next, t_next
        if delta <= tol:
            converged = True
            break

    sol = best_response_x(theta, t, p, params, tol=demand_tol, max_iter=demand_max_iter)
    x = sol.x_star
    report = check_conditions(StrategyProfile(p=p, theta=theta, t=t, x=x), params)
    return NashSolution(
        theta_star=theta,
        t_star=t,
        x_star=x,
        scsp_profit=scsp_profit(x, theta, p, params),
        eccsp_profit=eccsp_profit(x, t, params),
        converged=converged,
        sweeps=sweeps,
        conditions=report,
    )
