"""Market primitives for the joint sponsored and edge-cached content market.

Four actors trade content delivery. A wireless network operator sells data
transport at unit price ``p``. A sponsored content provider pays a fraction
``theta`` of that price on the user's behalf in exchange for advertisement
exposure. An edge caching provider spends effort ``t`` to serve content
locally, bypassing the operator. The mobile user routes a fraction ``x`` of
a unit content demand to the sponsored path and ``1 - x`` to the cached path.

This module holds the parameter container, the closed-form utility and
profit functions of all four actors, and the equilibrium existence and
uniqueness condition checks. Everything here is a pure function of its
arguments; there is no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MarketParams",
    "StrategyProfile",
    "PayoffVector",
    "ConditionCheck",
    "ConditionReport",
    "f_demand",
    "g_quality",
    "h_ad",
    "mu_utility",
    "scsp_profit",
    "eccsp_profit",
    "wno_payoff",
    "payoff_vector",
    "check_conditions",
]


@dataclass(frozen=True)
class MarketParams:
    """Exogenous constants of the content market.

    alpha, beta, gamma are curvature coefficients in (0, 1) for the demand
    utility, caching quality, and advertisement revenue functions. ``l_a``
    is the normalized advertisement amount per unit content, ``sigma_e`` the
    user utility coefficient, ``sigma_c`` the advertisement revenue
    coefficient, ``c_handover`` the per-unit handover cost of the cached
    path, ``C_cache`` the baseline caching cost per unit effort, ``w`` the
    operator's unit delivery cost, and ``p_bar`` the price cap.
    """

    alpha: float
    beta: float
    gamma: float
    l_a: float
    sigma_e: float
    sigma_c: float
    c_handover: float
    C_cache: float
    w: float
    p_bar: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
        if not 0.0 <= self.l_a <= 1.0:
            raise ValueError(f"l_a must lie in [0, 1], got {self.l_a}")
        if not self.sigma_e > 0.0:
            raise ValueError(f"sigma_e must be positive, got {self.sigma_e}")
        if self.sigma_c < 0.0:
            raise ValueError(f"sigma_c must be non-negative, got {self.sigma_c}")
        if self.c_handover < 0.0:
            raise ValueError(f"c_handover must be non-negative, got {self.c_handover}")
        if not self.C_cache > 0.0:
            raise ValueError(f"C_cache must be positive, got {self.C_cache}")
        if not self.w > 0.0:
            raise ValueError(f"w must be positive, got {self.w}")
        if not self.p_bar > 0.0:
            raise ValueError(f"p_bar must be positive, got {self.p_bar}")

    @property
    def tau(self) -> float:
        """Advertisement discount 1 / (1 + l_a), in [1/2, 1]."""
        return 1.0 / (1.0 + self.l_a)


@dataclass(frozen=True)
class StrategyProfile:
    """One point in strategy space: price, sponsorship, effort, demand split."""

    p: float
    theta: float
    t: float
    x: float

    def __post_init__(self) -> None:
        if self.p < 0.0:
            raise ValueError(f"p must be non-negative, got {self.p}")
        for name in ("theta", "t", "x"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class PayoffVector:
    """All four actors' objective values at one strategy profile."""

    mu_utility: float
    scsp_profit: float
    eccsp_profit: float
    wno_payoff: float


@dataclass(frozen=True)
class ConditionCheck:
    """Margin (left-hand side) and verdict of one strict inequality.

    ``applicable`` is False when the margin cannot be evaluated, which
    happens for the point conditions when the demand split sits on the
    boundary of [0, 1] and the power terms are singular.
    """

    margin: float
    holds: bool
    applicable: bool = True


@dataclass(frozen=True)
class ConditionReport:
    """Existence and uniqueness conditions evaluated at a strategy profile.

    cond_25 and cond_26 are point conditions (they depend on the profile),
    cond_27 and cond_29 depend on the curvature parameters only. Existence
    of the provider equilibrium is guaranteed when cond_25, cond_26 and
    cond_27 all hold; uniqueness additionally needs cond_29.
    """

    cond_25: ConditionCheck
    cond_26: ConditionCheck
    cond_27: ConditionCheck
    cond_29: ConditionCheck

    def items(self) -> list[tuple[str, ConditionCheck]]:
        return [
            ("cond_25", self.cond_25),
            ("cond_26", self.cond_26),
            ("cond_27", self.cond_27),
            ("cond_29", self.cond_29),
        ]

    def violated(self) -> bool:
        """True when any applicable condition fails."""
        return any(c.applicable and not c.holds for _, c in self.items())

    def point_conditions_violated(self) -> bool:
        """True when cond_25 or cond_26 is applicable and fails."""
        return any(
            c.applicable and not c.holds for c in (self.cond_25, self.cond_26)
        )


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _check_curvature(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")


def f_demand(y: float, alpha: float) -> float:
    """Demand utility kernel y^(1-alpha) / (1-alpha).

    Non-decreasing and concave on [0, 1] with f(0) = 0; the decreasing
    marginal term models satiation in content consumption.
    """
    _check_unit_interval("y", y)
    _check_curvature("alpha", alpha)
    return y ** (1.0 - alpha) / (1.0 - alpha)


def g_quality(t: float, beta: float) -> float:
    """Cached-delivery quality t^(1-beta) / (1-beta), concave in effort."""
    _check_unit_interval("t", t)
    _check_curvature("beta", beta)
    return t ** (1.0 - beta) / (1.0 - beta)


def h_ad(x: float, gamma: float) -> float:
    """Advertisement revenue kernel x^(1-gamma) / (1-gamma)."""
    _check_unit_interval("x", x)
    _check_curvature("gamma", gamma)
    return x ** (1.0 - gamma) / (1.0 - gamma)


def mu_utility(x: float, theta: float, t: float, p: float, params: MarketParams) -> float:
    """Mobile user utility at demand split ``x``.

    Sponsored consumption earns tau*sigma_e*f(x) and costs (1-theta)*x*p;
    cached consumption earns tau*sigma_e*f(1-x)*g(t) and costs (1-x)*c.
    The advertisement discount tau applies to both content streams.
    """
    tau_se = params.tau * params.sigma_e
    return (
        tau_se * f_demand(x, params.alpha)
        + tau_se * f_demand(1.0 - x, params.alpha) * g_quality(t, params.beta)
        - (1.0 - x) * params.c_handover
        - (1.0 - theta) * x * p
    )


def scsp_profit(x: float, theta: float, p: float, params: MarketParams) -> float:
    """Sponsored provider profit: advertisement revenue minus sponsorship cost."""
    return params.sigma_c * h_ad(x, params.gamma) - theta * p * x


def eccsp_profit(x: float, t: float, params: MarketParams) -> float:
    """Edge caching provider profit: revenue on cached traffic minus caching cost."""
    return params.sigma_c * h_ad(1.0 - x, params.gamma) - params.C_cache * t


def wno_payoff(x: float, p: float, params: MarketParams) -> float:
    """Operator payoff p*x - w*x^2; the quadratic term is congestion cost."""
    _check_unit_interval("x", x)
    return p * x - params.w * x * x


def payoff_vector(profile: StrategyProfile, params: MarketParams) -> PayoffVector:
    """Evaluate all four objectives at one profile."""
    return PayoffVector(
        mu_utility=mu_utility(profile.x, profile.theta, profile.t, profile.p, params),
        scsp_profit=scsp_profit(profile.x, profile.theta, profile.p, params),
        eccsp_profit=eccsp_profit(profile.x, profile.t, params),
        wno_payoff=wno_payoff(profile.x, profile.p, params),
    )


def check_conditions(profile: StrategyProfile, params: MarketParams) -> ConditionReport:
    """Evaluate the four equilibrium conditions at ``profile``.

    The point conditions need a strictly interior demand split; on the
    boundary they are reported as inapplicable (margin NaN) instead of
    raising.
    """
    a, b, g = params.alpha, params.beta, params.gamma
    x, t = profile.x, profile.t
    interior = 0.0 < x < 1.0

    if interior:
        m25 = params.sigma_c * x ** (-g) - profile.theta * profile.p
        kt = t ** (1.0 - b) / (1.0 - b)
        m26 = -(x ** (-a - 2.0)) + kt * (1.0 - x) ** (-a - 2.0)
        cond_25 = ConditionCheck(margin=m25, holds=m25 > 0.0)
        cond_26 = ConditionCheck(margin=m26, holds=m26 > 0.0)
    else:
        cond_25 = ConditionCheck(margin=math.nan, holds=False, applicable=False)
        cond_26 = ConditionCheck(margin=math.nan, holds=False, applicable=False)

    m27 = g + a - 1.0
    m29 = 2.0 * a - 1.0
    return ConditionReport(
        cond_25=cond_25,
        cond_26=cond_26,
        cond_27=ConditionCheck(margin=m27, holds=m27 > 0.0),
        cond_29=ConditionCheck(margin=m29, holds=m29 > 0.0),
    )
