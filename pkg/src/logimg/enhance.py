"""Affine enhancement ``t(f) = alpha <x> f <+> beta <x> k`` with MMSE parameters.

Both algorithms pose an overdetermined system whose unknowns are
``alpha`` and ``beta``.  Each vector row ``alpha <x> p <+> beta <x> q = target``
is linear in arctanh coordinates, so it expands to three scalar equations
``alpha * phi(p_i) + beta * phi(q_i) = phi(target_i)`` and the system is
solved through its 2x2 normal equations.

Algorithm A translates every pixel by a multiple of the constant color
``U_L = (tanh 1, tanh 1, tanh 1)``.  Algorithm B translates by a multiple
of the image mean ``v0``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .image import ImageStats, RasterImage, compute_stats
from .logspace import THETA, ColorVec, log_add, log_smul, norm3, vec_sub

W0 = THETA
W1 = ColorVec.splat(-0.5)
W2 = ColorVec.splat(0.5)
U_L = ColorVec.splat(math.tanh(1.0))

ZERO_NORM_TOL = 1e-9
SINGULAR_RTOL = 1e-12

Row = Tuple[ColorVec, ColorVec, ColorVec]


class EnhancementError(ValueError):
    """No enhancement parameters exist for this image."""


class SingularSystem(EnhancementError):
    pass


class ZeroMeanNorm(EnhancementError):
    pass


@dataclass(frozen=True)
class AffineParams:
    alpha: float
    beta: float
    k: ColorVec

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class NormalCoefficients:
    c_vv: float
    c_uu: float
    c_vu: float
    c_vw: float
    c_uw: float

    @property
    def den(self) -> float:
        return self.c_vv * self.c_uu - self.c_vu**2


@dataclass(frozen=True)
class LsqSystem:
    """Rows ``(p, q, target)`` plus the translation color ``k`` they belong to."""

    rows: Tuple[Row, ...]
    k: ColorVec

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) == 0:
            raise ValueError("system needs at least one row")
        for r in rows:
            if len(r) != 3 or not all(isinstance(v, ColorVec) for v in r):
                raise ValueError("each row must be a (p, q, target) triple of ColorVec")
        object.__setattr__(self, "rows", rows)

    def design(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Columns ``phi(p)``, ``phi(q)`` and right-hand side ``phi(target)``."""
        p, q, t = (
            np.arctanh(np.concatenate([row[j].as_array() for row in self.rows]))
            for j in range(3)
        )
        return p, q, t

    def coefficients(self) -> NormalCoefficients:
        p, q, t = self.design()

        def dot(x, y):
            return math.fsum((x * y).tolist())

        return NormalCoefficients(
            c_vv=dot(p, p), c_uu=dot(q, q), c_vu=dot(p, q), c_vw=dot(p, t), c_uw=dot(q, t)
        )


def build_system_a(stats: ImageStats) -> LsqSystem:
    v0, v1, v2 = stats.v0, stats.v1, stats.v2
    return LsqSystem(
        rows=((v0, U_L, W0), (vec_sub(v1, v0), THETA, W1), (vec_sub(v2, v0), THETA, W2)),
        k=U_L,
    )


def build_system_b(stats: ImageStats) -> LsqSystem:
    v0, v1, v2 = stats.v0, stats.v1, stats.v2
    if norm3(v0) <= ZERO_NORM_TOL:
        raise ZeroMeanNorm("zero mean norm: algorithm B needs a non-neutral mean color")
    return LsqSystem(rows=((v0, v0, W0), (v1, v0, W1), (v2, v0, W2)), k=v0)


def build_system(stats: ImageStats, algorithm: str) -> LsqSystem:
    algo = algorithm.upper()
    if algo == "A":
        return build_system_a(stats)
    if algo == "B":
        return build_system_b(stats)
    raise ValueError(f"unknown algorithm {algorithm!r} (expected 'A' or 'B')")


def solve_mmse(system: LsqSystem) -> Tuple[float, float]:
    """Least-squares ``(alpha, beta)`` of ``system`` via Cramer's rule.

    With ``c_uw = 0``, as for both built-in systems, this is
    ``alpha = c_vw c_uu / den`` and ``beta = -c_vw c_vu / den``.
    """
    c = system.coefficients()
    den = c.den
    if not math.isfinite(den) or abs(den) <= SINGULAR_RTOL * max(1.0, c.c_vv * c.c_uu):
        raise SingularSystem(
            "singular system: the two columns are collinear (constant image channel data)"
        )
    alpha = (c.c_vw * c.c_uu - c.c_uw * c.c_vu) / den
    beta = (c.c_uw * c.c_vv - c.c_vw * c.c_vu) / den
    return alpha, beta


def _affine_block(block: np.ndarray, alpha: float, shift: np.ndarray) -> np.ndarray:
    return log_add(log_smul(alpha, block), shift)


def apply_affine(f: RasterImage, params: AffineParams, workers: int = 1) -> RasterImage:
    """Pointwise ``alpha <x> f(x, y) <+> beta <x> k``.

    ``workers > 1`` splits the rows across threads.  The work is elementwise,
    so the result is bit-identical to the single-threaded path.
    """
    shift = log_smul(params.beta, params.k.as_array())
    if workers <= 1 or f.height < 2:
        out = _affine_block(f.pixels, params.alpha, shift)
    else:
        out = np.empty_like(f.pixels)
        bounds = np.linspace(0, f.height, min(workers, f.height) + 1).astype(int)

        def run(i: int) -> None:
            lo, hi = bounds[i], bounds[i + 1]
            out[lo:hi] = _affine_block(f.pixels[lo:hi], params.alpha, shift)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(len(bounds) - 1)))
    return f.with_pixels(out)


def fit_params(stats: ImageStats, algorithm: str) -> AffineParams:
    system = build_system(stats, algorithm)
    alpha, beta = solve_mmse(system)
    return AffineParams(alpha, beta, system.k)


def enhance_auto(
    f: RasterImage, algorithm: str, workers: int = 1
) -> Tuple[RasterImage, AffineParams, ImageStats]:
    stats = compute_stats(f)
    params = fit_params(stats, algorithm)
    return apply_affine(f, params, workers=workers), params, stats
