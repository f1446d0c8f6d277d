"""Shared scalar search helper."""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["golden_section_max"]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    iterations: int | None = None,
    width: float | None = None,
) -> float:
    """Golden-section maximizer on [lo, hi]; returns the final bracket midpoint.

    Runs a fixed number of ``iterations`` or until the bracket is narrower
    than ``width`` (exactly one of the two must be given). Ties move the
    bracket left, so a flat objective resolves to the smallest maximizer.
    One new evaluation per iteration.
    """
    if (iterations is None) == (width is None):
        raise ValueError("specify exactly one of iterations or width")
    a, b = lo, hi
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = f(c), f(d)
    k = 0
    while True:
        if iterations is not None and k >= iterations:
            break
        if width is not None and b - a <= width:
            break
        k += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = f(d)
    return 0.5 * (a + b)
