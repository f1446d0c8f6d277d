"""Command-line front end: solve, sweep, check, oracle.

Exit codes: 0 success, 2 configuration error, 3 the reported point did not
converge (results are still printed), 4 an equilibrium condition is
violated at the reported point (results are still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import MARKET_KEYS, ConfigError, SolverSettings, load_config
from .model import MarketParams, mu_utility
from .nash import NashSolution
from .oracle import GridSpec, oracle_best_x, oracle_nash, oracle_price
from .pricing import (
    StackelbergResult,
    solve_stackelberg_grid,
    solve_stackelberg_subgradient,
)
from .sweep import CSV_HEADER, SweepSpec, rows_to_csv, run_sweep

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NOT_CONVERGED = 3
EXIT_CONDITIONS_VIOLATED = 4


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _report_dict(report) -> dict:
    return {
        name: {"margin": check.margin, "holds": check.holds, "applicable": check.applicable}
        for name, check in report.items()
    }


def _result_fields(result: StackelbergResult, params: MarketParams) -> dict:
    nash = result.lower
    return {
        "p_star": result.p_star,
        "theta_star": nash.theta_star,
        "t_star": nash.t_star,
        "x_star": nash.x_star,
        "mu_utility": mu_utility(
            nash.x_star, nash.theta_star, nash.t_star, result.p_star, params
        ),
        "scsp_profit": nash.scsp_profit,
        "eccsp_profit": nash.eccsp_profit,
        "wno_payoff": result.wno_payoff,
        "cond_25": nash.conditions.cond_25.holds,
        "cond_26": nash.conditions.cond_26.holds,
        "cond_27": nash.conditions.cond_27.holds,
        "cond_29": nash.conditions.cond_29.holds,
        "converged": nash.converged,
    }


def _exit_status(nash: NashSolution) -> int:
    if not nash.converged:
        return EXIT_NOT_CONVERGED
    if nash.conditions.violated():
        return EXIT_CONDITIONS_VIOLATED
    return EXIT_OK


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _run_full_solve(args, params: MarketParams, settings: SolverSettings) -> StackelbergResult:
    method = getattr(args, "method", "grid")
    if method == "subgradient":
        p0 = args.p0 if args.p0 is not None else params.p_bar / 2.0
        steps = args.steps if args.steps is not None else settings.subgradient_steps
        return solve_stackelberg_subgradient(
            params,
            p0,
            steps=steps,
            nash_tol=settings.nash_tol,
            nash_max_sweeps=settings.nash_max_sweeps,
            demand_tol=settings.demand_tol,
            demand_max_iter=settings.demand_max_iter,
        )
    return solve_stackelberg_grid(
        params,
        grid_points=settings.grid_points,
        refine_tol=settings.refine_tol,
        strict_conditions=settings.strict_conditions,
        nash_tol=settings.nash_tol,
        nash_max_sweeps=settings.nash_max_sweeps,
        demand_tol=settings.demand_tol,
        demand_max_iter=settings.demand_max_iter,
    )


def _cmd_solve(args, params: MarketParams, settings: SolverSettings) -> int:
    result = _run_full_solve(args, params, settings)
    fields = _result_fields(result, params)
    if args.format == "csv":
        header = [name for name in CSV_HEADER if name != "swept_value"]
        values = [
            "true" if fields[n] is True else "false" if fields[n] is False else _fmt(fields[n])
            for n in header
        ]
        text = ",".join(header) + "\n" + ",".join(values) + "\n"
    else:
        doc = {
            "p_star": result.p_star,
            "at_price_cap": result.at_price_cap,
            "method": result.method.value,
            "profile": {
                "p": result.p_star,
                "theta": result.lower.theta_star,
                "t": result.lower.t_star,
                "x": result.lower.x_star,
            },
            "payoffs": {
                "mu_utility": fields["mu_utility"],
                "scsp_profit": fields["scsp_profit"],
                "eccsp_profit": fields["eccsp_profit"],
                "wno_payoff": fields["wno_payoff"],
            },
            "conditions": _report_dict(result.lower.conditions),
            "diagnostics": {
                "converged": result.lower.converged,
                "nash_sweeps": result.lower.sweeps,
                "price_evaluations": len(result.trace),
            },
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, getattr(args, "out", None))
    return _exit_status(result.lower)


def _parse_overrides(pairs: list[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got '{pair}'")
        if key not in MARKET_KEYS:
            raise ConfigError(f"unknown override key '{key}'")
        try:
            overrides[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"override '{key}' must be a number, got '{raw}'") from exc
    return overrides


def _cmd_sweep(args, params: MarketParams, settings: SolverSettings) -> int:
    spec = SweepSpec(
        param=args.param,
        start=args.sweep_from,
        stop=args.sweep_to,
        steps=args.steps,
        overrides=_parse_overrides(args.set or []),
    )
    rows = run_sweep(params, spec, settings)
    if args.format == "json":
        doc = [
            {name: getattr(row, name) for name in CSV_HEADER}
            for row in rows
        ]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = rows_to_csv(rows)
    _emit(text, args.out)
    if any(not row.converged for row in rows):
        return EXIT_NOT_CONVERGED
    if any(row.conditions.violated() for row in rows):
        return EXIT_CONDITIONS_VIOLATED
    return EXIT_OK


def _cmd_check(args, params: MarketParams, settings: SolverSettings) -> int:
    result = _run_full_solve(args, params, settings)
    nash = result.lower
    if args.format == "csv":
        lines = ["condition,margin,holds,applicable"]
        for name, check in nash.conditions.items():
            lines.append(
                f"{name},{_fmt(check.margin)},"
                f"{'true' if check.holds else 'false'},"
                f"{'true' if check.applicable else 'false'}"
            )
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            "at": {
                "p": result.p_star,
                "theta": nash.theta_star,
                "t": nash.t_star,
                "x": nash.x_star,
            },
            "conditions": _report_dict(nash.conditions),
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, getattr(args, "out", None))
    return _exit_status(nash)


def _cmd_oracle(args, params: MarketParams, settings: SolverSettings) -> int:
    result = _run_full_solve(args, params, settings)
    nash = result.lower

    price_grid = GridSpec(args.grid if args.grid is not None else settings.oracle_price_grid)
    oracle_p = oracle_price(
        params,
        price_grid,
        nash_tol=settings.nash_tol,
        nash_max_sweeps=settings.nash_max_sweeps,
        demand_tol=settings.demand_tol,
    )
    o_theta, o_t, is_mutual, eps = oracle_nash(
        result.p_star,
        params,
        GridSpec(settings.oracle_nash_grid),
        demand_tol=settings.demand_tol,
    )
    oracle_x = oracle_best_x(
        nash.theta_star,
        nash.t_star,
        result.p_star,
        params,
        GridSpec(settings.oracle_demand_grid),
    )

    comparisons = {
        "p_star": (result.p_star, oracle_p),
        "theta_star": (nash.theta_star, o_theta),
        "t_star": (nash.t_star, o_t),
        "x_star": (nash.x_star, oracle_x),
    }
    if args.format == "csv":
        lines = ["quantity,solver,oracle,deviation"]
        for name, (solver_v, oracle_v) in comparisons.items():
            lines.append(
                f"{name},{_fmt(solver_v)},{_fmt(oracle_v)},{_fmt(abs(solver_v - oracle_v))}"
            )
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            name: {
                "solver": solver_v,
                "oracle": oracle_v,
                "deviation": abs(solver_v - oracle_v),
            }
            for name, (solver_v, oracle_v) in comparisons.items()
        }
        doc["nash_oracle"] = {"mutual_best_response": is_mutual, "eps": eps}
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, getattr(args, "out", None))
    return _exit_status(nash)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgemarket",
        description="Equilibrium solver for the joint sponsored and edge-cached content market",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="full three-stage solve")
    solve.add_argument("--config", required=True)
    solve.add_argument("--method", choices=("grid", "subgradient"), default="grid")
    solve.add_argument("--p0", type=float, default=None,
                       help="sub-gradient start price (default p_bar/2)")
    solve.add_argument("--steps", type=int, default=None,
                       help="sub-gradient step budget")
    solve.add_argument("--format", choices=("json", "csv"), default="json")
    solve.add_argument("--out", default=None)
    solve.set_defaults(handler=_cmd_solve)

    sweep = sub.add_parser("sweep", help="one-parameter experiment sweep")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--param", required=True)
    sweep.add_argument("--from", dest="sweep_from", type=float, required=True)
    sweep.add_argument("--to", dest="sweep_to", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="fixed market override, repeatable")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", default=None)
    sweep.set_defaults(handler=_cmd_sweep)

    check = sub.add_parser("check", help="equilibrium condition margins at the solved point")
    check.add_argument("--config", required=True)
    check.add_argument("--format", choices=("json", "csv"), default="json")
    check.add_argument("--out", default=None)
    check.set_defaults(handler=_cmd_check)

    oracle = sub.add_parser("oracle", help="solver versus brute-force grid audit")
    oracle.add_argument("--config", required=True)
    oracle.add_argument("--grid", type=int, default=None,
                        help="price-oracle resolution (default from solver settings)")
    oracle.add_argument("--format", choices=("json", "csv"), default="json")
    oracle.add_argument("--out", default=None)
    oracle.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        params, settings = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        return args.handler(args, params, settings)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
