"""One-parameter experiment sweeps with deterministic CSV output.

A sweep re-solves the full three-stage game at every value of one market
parameter, optionally under fixed overrides of other parameters (family
curves are produced by repeated sweeps with different overrides). Each
point is solved independently from the same cold start, so output bytes
are a pure function of (base parameters, sweep spec, solver settings).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .config import MARKET_KEYS, SolverSettings
from .model import ConditionReport, MarketParams, mu_utility
from .pricing import solve_stackelberg_grid

__all__ = ["SWEEPABLE_PARAMS", "SweepSpec", "SweepRow", "run_sweep", "rows_to_csv", "CSV_HEADER"]

SWEEPABLE_PARAMS = ("p_bar", "w", "sigma_e", "sigma_c", "C_cache", "c_handover", "l_a")

CSV_HEADER = (
    "swept_value",
    "p_star",
    "theta_star",
    "t_star",
    "x_star",
    "mu_utility",
    "scsp_profit",
    "eccsp_profit",
    "wno_payoff",
    "cond_25",
    "cond_26",
    "cond_27",
    "cond_29",
    "converged",
)


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive uniform sweep of one market parameter.

    ``overrides`` pins other market parameters for the duration of the
    sweep, e.g. a second delivery-cost curve on the same axis.
    """

    param: str
    start: float
    stop: float
    steps: int
    overrides: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.param not in SWEEPABLE_PARAMS:
            raise ValueError(
                f"param must be one of {SWEEPABLE_PARAMS}, got '{self.param}'"
            )
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(
                f"sweep range must satisfy start < stop, got [{self.start}, {self.stop}]"
            )
        for key in self.overrides:
            if key not in MARKET_KEYS:
                raise ValueError(f"unknown override key '{key}'")

    def values(self) -> list[float]:
        n = self.steps
        inner = [self.start + (self.stop - self.start) * i / (n - 1) for i in range(1, n - 1)]
        return [self.start] + inner + [self.stop]


@dataclass(frozen=True)
class SweepRow:
    """Solved equilibrium at one sweep point.

    The boolean cond_* fields are the CSV flags; the full report with
    margins and applicability rides along in ``conditions``.
    """

    swept_value: float
    p_star: float
    theta_star: float
    t_star: float
    x_star: float
    mu_utility: float
    scsp_profit: float
    eccsp_profit: float
    wno_payoff: float
    cond_25: bool
    cond_26: bool
    cond_27: bool
    cond_29: bool
    converged: bool
    conditions: ConditionReport


def run_sweep(
    params: MarketParams,
    spec: SweepSpec,
    settings: SolverSettings = SolverSettings(),
) -> list[SweepRow]:
    """Solve the full game at each sweep value, in ascending order.

    A non-convergent point is recorded with converged=False rather than
    aborting the sweep. Sweep values that violate a parameter invariant
    raise ValueError before any solving starts.
    """
    base = dataclasses.replace(params, **spec.overrides)
    swept = [dataclasses.replace(base, **{spec.param: v}) for v in spec.values()]

    rows: list[SweepRow] = []
    for value, point_params in zip(spec.values(), swept):
        result = solve_stackelberg_grid(
            point_params,
            grid_points=settings.grid_points,
            refine_tol=settings.refine_tol,
            strict_conditions=settings.strict_conditions,
            nash_tol=settings.nash_tol,
            nash_max_sweeps=settings.nash_max_sweeps,
            demand_tol=settings.demand_tol,
            demand_max_iter=settings.demand_max_iter,
        )
        nash = result.lower
        report = nash.conditions
        rows.append(
            SweepRow(
                swept_value=value,
                p_star=result.p_star,
                theta_star=nash.theta_star,
                t_star=nash.t_star,
                x_star=nash.x_star,
                mu_utility=mu_utility(
                    nash.x_star, nash.theta_star, nash.t_star, result.p_star, point_params
                ),
                scsp_profit=nash.scsp_profit,
                eccsp_profit=nash.eccsp_profit,
                wno_payoff=result.wno_payoff,
                cond_25=report.cond_25.holds,
                cond_26=report.cond_26.holds,
                cond_27=report.cond_27.holds,
                cond_29=report.cond_29.holds,
                converged=nash.converged,
                conditions=report,
            )
        )
    return rows


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return format(value, ".12g")


def rows_to_csv(rows: list[SweepRow]) -> str:
    """Render rows as CSV: 12 significant digits, LF endings, fixed header."""
    lines = [",".join(CSV_HEADER)]
    for row in rows:
        lines.append(
            ",".join(_format_value(getattr(row, name)) for name in CSV_HEADER)
        )
    return "\n".join(lines) + "\n"
