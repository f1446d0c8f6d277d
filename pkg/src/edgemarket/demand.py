"""User-side demand stage: best response of the mobile user and its sensitivities.

For fixed (theta, t, p) the user utility is strictly concave in the demand
split, so the best response is the unique root of the stationarity function

    F(x) = x^(-alpha) - k(t) * (1-x)^(-alpha) - [(1-theta)*p - c] / (tau*sigma_e)

with k(t) = t^(1-beta) / (1-beta). For t > 0, F decreases strictly from
+inf at 0+ to -inf at 1-, so an interior root always exists; the solver is
bracketed bisection accelerated by Newton steps (a Newton step that leaves
the bracket falls back to the midpoint). For t = 0 the cached term drops
and the root is available in closed form, clamping to x = 1 whenever the
unconstrained response exceeds the strategy space.

The first and second derivatives of the best response with respect to the
sponsorship factor and the caching effort are evaluated from their
closed forms (implicit differentiation of F = 0); solvers upstream consume
them, and tests cross-check them against finite differences of this
module's numeric best response.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import MarketParams

__all__ = [
    "Boundary",
    "DemandSolution",
    "DemandSensitivities",
    "best_response_x",
    "sensitivities",
]

# Bracket endpoints stay this far inside [0, 1] to dodge the power-law
# singularities at the boundary.
_BRACKET_EPS = 1e-12


class Boundary(Enum):
    """Which regime produced the best response."""

    INTERIOR = "interior"
    CLAMPED_LOW = "clamped_low"
    CLAMPED_HIGH = "clamped_high"


@dataclass(frozen=True)
class DemandSolution:
    """Best response of the user plus solver diagnostics.

    ``residual`` is the stationarity value F at ``x_star`` (zero up to the
    root tolerance for interior solutions, the one-sided value for clamped
    ones). ``iterations`` counts root-finder steps; closed-form and clamped
    paths report zero.
    """

    x_star: float
    boundary: Boundary
    residual: float
    iterations: int


@dataclass(frozen=True)
class DemandSensitivities:
    """First and second derivatives of the best response.

    ``dx_dtheta`` is positive whenever p > 0 (a larger sponsorship share
    makes the sponsored path cheaper) and ``dx_dt`` is negative for t > 0
    (better cached quality pulls demand away from the sponsored path). The
    t-derivatives are NaN when evaluated at t = 0, where the quality kernel
    has unbounded slope.
    """

    dx_dtheta: float
    d2x_dtheta2: float
    dx_dt: float
    d2x_dt2: float


def _stationarity_terms(theta: float, t: float, p: float, params: MarketParams) -> tuple[float, float]:
    kt = t ** (1.0 - params.beta) / (1.0 - params.beta)
    rhs = ((1.0 - theta) * p - params.c_handover) / (params.tau * params.sigma_e)
    return kt, rhs


def best_response_x(
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> DemandSolution:
    """Solve the user's demand split for fixed (theta, t, p).

    ``tol`` bounds the absolute stationarity residual |F(x_star)| for
    interior solutions. If the residual tolerance is not reached within
    ``max_iter`` steps, the best bracketed iterate found so far is returned
    with its residual; the bracket itself cannot fail because F is strictly
    monotone.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if not 0.0 <= p <= params.p_bar:
        raise ValueError(f"p must lie in [0, p_bar], got {p}")

    alpha = params.alpha
    kt, rhs = _stationarity_terms(theta, t, p, params)

    if t == 0.0:
        # F reduces to x^(-alpha) = rhs with infimum 1 on (0, 1]: an
        # interior root needs rhs > 1, anything else clamps high.
        if rhs > 1.0:
            x = rhs ** (-1.0 / alpha)
            return DemandSolution(x, Boundary.INTERIOR, x ** (-alpha) - rhs, 0)
        return DemandSolution(1.0, Boundary.CLAMPED_HIGH, 1.0 - rhs, 0)

    def f_of(x: float) -> float:
        return x ** (-alpha) - kt * (1.0 - x) ** (-alpha) - rhs

    lo, hi = _BRACKET_EPS, 1.0 - _BRACKET_EPS
    f_lo = f_of(lo)
    if f_lo < 0.0:
        # Unreachable for t > 0 (F -> +inf at 0+); kept for defensive
        # completeness against pathological inputs.
        return DemandSolution(0.0, Boundary.CLAMPED_LOW, f_lo, 0)
    f_hi = f_of(hi)
    if f_hi > 0.0:
        return DemandSolution(1.0, Boundary.CLAMPED_HIGH, f_hi, 0)

    x = 0.5
    f = f_of(x)
    best_x, best_f = x, f
    iterations = 0
    while abs(f) > tol and iterations < max_iter:
        iterations += 1
        if f > 0.0:
            lo = x
        else:
            hi = x
        slope = -alpha * (x ** (-alpha - 1.0) + kt * (1.0 - x) ** (-alpha - 1.0))
        x_next = x - f / slope
        if not lo < x_next < hi:
            x_next = 0.5 * (lo + hi)
        x = x_next
        f = f_of(x)
        if abs(f) < abs(best_f):
            best_x, best_f = x, f
    return DemandSolution(best_x, Boundary.INTERIOR, best_f, iterations)


def sensitivities(
    x_star: float,
    theta: float,
    t: float,
    p: float,
    params: MarketParams,
) -> DemandSensitivities:
    """Closed-form derivatives of the best response at an interior point.

    Requires 0 < x_star < 1; boundary points make the power terms singular
    and are rejected. At t = 0 the two t-derivatives are returned as NaN.
    """
    if not 0.0 < x_star < 1.0:
        raise ValueError(
            f"sensitivities need an interior best response, got x_star={x_star}"
        )
    a = params.alpha
    tau_se = params.tau * params.sigma_e
    kt, _ = _stationarity_terms(theta, t, p, params)

    # denom is -F'(x)/alpha, strictly positive on the interior
    denom = x_star ** (-a - 1.0) + kt * (1.0 - x_star) ** (-a - 1.0)
    # bracket is dF'(x)/dx up to the factor (alpha+1); its sign decides the
    # curvature of the response
    bracket = -(x_star ** (-a - 2.0)) + kt * (1.0 - x_star) ** (-a - 2.0)

    dx_dtheta = p / (a * tau_se * denom)
    d2x_dtheta2 = bracket * (-(a + 1.0) * p * p) / (a * a * tau_se * tau_se * denom ** 3)

    if t > 0.0:
        t_pow = t ** (-params.beta)
        one_mx = (1.0 - x_star) ** (-a)
        dx_dt = -t_pow * one_mx / (a * denom)
        prefactor = t_pow * one_mx / (a * denom)
        braces = (
            2.0 * t_pow * (1.0 - x_star) ** (-a - 1.0) / denom
            + params.beta / t
            + (-(a + 1.0) * t_pow * one_mx * bracket) / (a * denom * denom)
        )
        d2x_dt2 = prefactor * braces
    else:
        dx_dt = math.nan
        d2x_dt2 = math.nan

    return DemandSensitivities(
        dx_dtheta=dx_dtheta,
        d2x_dtheta2=d2x_dtheta2,
        dx_dt=dx_dt,
        d2x_dt2=d2x_dt2,
    )
