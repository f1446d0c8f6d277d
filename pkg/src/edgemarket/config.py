"""TOML configuration loading for the command-line front end.

A configuration file has a required ``[market]`` table holding exactly the
ten market constants and an optional ``[solver]`` table; every solver knob
has a default, so a minimal file contains only the market table:

    [market]
    alpha = 0.8
    beta = 0.5
    gamma = 0.8
    l_a = 1.0
    sigma_e = 40.0
    sigma_c = 120.0
    c_handover = 80.0
    C_cache = 120.0
    w = 1.0
    p_bar = 100.0
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .model import MarketParams

__all__ = ["ConfigError", "SolverSettings", "MARKET_KEYS", "load_config"]

MARKET_KEYS = (
    "alpha",
    "beta",
    "gamma",
    "l_a",
    "sigma_e",
    "sigma_c",
    "c_handover",
    "C_cache",
    "w",
    "p_bar",
)


class ConfigError(Exception):
    """Malformed configuration; the message names the offending key."""


@dataclass(frozen=True)
class SolverSettings:
    """Numerical knobs shared by the CLI commands. All have defaults."""

    demand_tol: float = 1e-10
    demand_max_iter: int = 200
    nash_tol: float = 1e-8
    nash_max_sweeps: int = 500
    grid_points: int = 101
    refine_tol: float = 1e-6
    subgradient_steps: int = 300
    oracle_demand_grid: int = 1001
    oracle_nash_grid: int = 201
    oracle_price_grid: int = 101
    strict_conditions: bool = False

    def __post_init__(self) -> None:
        for name in ("demand_tol", "nash_tol", "refine_tol"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"solver key '{name}' must be positive")
        for name in ("demand_max_iter", "nash_max_sweeps", "subgradient_steps"):
            if getattr(self, name) < 1:
                raise ConfigError(f"solver key '{name}' must be at least 1")
        for name in ("grid_points", "oracle_demand_grid", "oracle_nash_grid",
                     "oracle_price_grid"):
            if getattr(self, name) < 2:
                raise ConfigError(f"solver key '{name}' must be at least 2")


def _as_number(section: str, key: str, value: object) -> float:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section} key '{key}' must be a number, got {value!r}")
    return float(value)


def _parse_market(table: object) -> MarketParams:
    if not isinstance(table, dict):
        raise ConfigError("'market' must be a table of key-value pairs")
    for key in table:
        if key not in MARKET_KEYS:
            raise ConfigError(f"unknown market key '{key}'")
    for key in MARKET_KEYS:
        if key not in table:
            raise ConfigError(f"missing market key '{key}'")
    values = {key: _as_number("market", key, table[key]) for key in MARKET_KEYS}
    try:
        return MarketParams(**values)
    except ValueError as exc:
        raise ConfigError(f"invalid market value: {exc}") from exc


def _parse_solver(table: object) -> SolverSettings:
    if not isinstance(table, dict):
        raise ConfigError("'solver' must be a table of key-value pairs")
    known = {f.name: f.type for f in fields(SolverSettings)}
    kwargs: dict[str, object] = {}
    for key, value in table.items():
        if key not in known:
            raise ConfigError(f"unknown solver key '{key}'")
        if key == "strict_conditions":
            if not isinstance(value, bool):
                raise ConfigError(f"solver key '{key}' must be a boolean")
            kwargs[key] = value
        elif key in ("demand_tol", "nash_tol", "refine_tol"):
            kwargs[key] = _as_number("solver", key, value)
        else:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"solver key '{key}' must be an integer")
            kwargs[key] = value
    return SolverSettings(**kwargs)


def load_config(path: str | Path) -> tuple[MarketParams, SolverSettings]:
    """Read a config file; raises ConfigError naming the first offending key."""
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        doc = tomllib.loads(text.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc

    for key in doc:
        if key not in ("market", "solver"):
            raise ConfigError(f"unknown config section '{key}'")
    if "market" not in doc:
        raise ConfigError("missing config section 'market'")

    params = _parse_market(doc["market"])
    settings = _parse_solver(doc.get("solver", {}))
    return params, settings
