"""Truncation of the thermal image sums over l."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import ConvergenceError

DEFAULT_TOL = 1e-12
DEFAULT_L_MAX = 10_000
HARD_L_MAX = 100_000


def image_sum(
    term: Callable[[np.ndarray], np.ndarray],
    *,
    start: int = 1,
    tol: float = DEFAULT_TOL,
    l_max: int = DEFAULT_L_MAX,
    run: int = 3,
):
    """Sum ``term(l)`` for l = start, start+1, ... until it has settled.

    ``term`` receives an integer array and returns the matching terms.  The
    sum stops once ``run`` consecutive terms satisfy
    ``|term| < tol * |partial sum|``; the summation order is fixed, so the
    result is reproducible bit for bit.
    """
    l_max = min(l_max, HARD_L_MAX)
    total = 0.0
    streak = 0
    l = start
    chunk = 8
    while l <= l_max:
        ls = np.arange(l, min(l + chunk, l_max + 1))
        values = np.asarray(term(ls))
        for v in values.tolist():
            total += v
            if abs(v) <= tol * abs(total):
                streak += 1
                if streak >= run:
                    return total
            else:
                streak = 0
        l += len(ls)
        chunk = min(2 * chunk, 4096)
    raise ConvergenceError(f"image sum not converged to {tol:g} within l_max={l_max}")
