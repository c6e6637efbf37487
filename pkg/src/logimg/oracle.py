"""Exhaustive grid search for the least-squares (alpha, beta).

Used to cross-check ``solve_mmse``: it evaluates the sum of squared
residuals at every grid node and never forms or solves the normal
equations.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np

from .enhance import LsqSystem

try:
    from numba import njit

    _HAS_NUMBA = True
except Exception:  # pragma: no cover - numba is optional
    _HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _grid_argmin_numba(grid, p, q, t):
    # for fixed alpha the objective is sum_e (r_e + beta q_e)^2 with
    # r_e = alpha p_e - t_e, i.e. rr + beta (2 rq + beta qq)
    qq = 0.0
    for e in range(q.shape[0]):
        qq += q[e] * q[e]
    best = np.inf
    best_i = 0
    best_j = 0
    n = grid.shape[0]
    for i in range(n):
        a = grid[i]
        rr = 0.0
        rq = 0.0
        for e in range(p.shape[0]):
            r = a * p[e] - t[e]
            rr += r * r
            rq += r * q[e]
        for j in range(n):
            b = grid[j]
            s = rr + b * (2.0 * rq + b * qq)
            if s < best:
                best = s
                best_i = i
                best_j = j
    return best_i, best_j


def _grid_argmin_numpy(grid, p, q, t):
    qq = float(q @ q)
    r = grid[:, None] * p[None, :] - t[None, :]
    rr = np.einsum("ie,ie->i", r, r)
    rq = r @ q
    best = np.inf
    best_i = best_j = 0
    for i in range(grid.size):
        s = rr[i] + grid * (2.0 * rq[i] + grid * qq)
        j = int(np.argmin(s))
        if s[j] < best:
            best, best_i, best_j = s[j], i, j
    return best_i, best_j


def mmse_oracle(
    system: LsqSystem, grid_halfwidth: float = 4.0, step: float = 0.001
) -> Tuple[float, float]:
    """Grid node in ``[-h, h]^2`` with the smallest residual sum of squares."""
    if grid_halfwidth <= 0 or step <= 0:
        raise ValueError("grid_halfwidth and step must be positive")
    n = int(round(grid_halfwidth / step))
    grid = np.arange(-n, n + 1) * step
    p, q, t = system.design()
    if _HAS_NUMBA:
        i, j = _grid_argmin_numba(grid, p, q, t)
    else:
        i, j = _grid_argmin_numpy(grid, p, q, t)
    return float(grid[i]), float(grid[j])
