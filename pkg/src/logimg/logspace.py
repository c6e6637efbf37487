"""Bounded logarithmic algebra on (-1, 1) and on the color cube (-1, 1)^3.

Addition is ``(a + b) / (1 + ab)`` and real scalar multiplication is
``tanh(lam * arctanh(a))``.  Through ``phi = arctanh`` both are ordinary
addition and scaling of reals, which also supplies the Euclidean structure
(dot product and norm) of the color space.

Scalar functions accept Python floats or numpy arrays.  A float in gives a
float out; arrays are handled elementwise so the same functions drive the
pixel pipelines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

EPS = 1e-12
LOWER = -1.0 + EPS
UPPER = 1.0 - EPS

ArrayLike = Union[float, np.ndarray]


def _clamp(x: ArrayLike) -> ArrayLike:
    out = np.clip(x, LOWER, UPPER)
    if np.ndim(out) == 0:
        return float(out)
    return out


def _require_finite(x: ArrayLike, what: str) -> None:
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} must be finite, got {x!r}")


def log_scalar(x: float) -> float:
    """Validate ``x`` as a point of the open interval (-1, 1).

    Non-finite input is rejected; finite input is clamped to
    ``[-1 + EPS, 1 - EPS]``.
    """
    x = float(x)
    _require_finite(x, "log scalar")
    return min(max(x, LOWER), UPPER)


def log_add(a: ArrayLike, b: ArrayLike) -> ArrayLike:
    return _clamp((a + b) / (1.0 + a * b))


def log_sub(a: ArrayLike, b: ArrayLike) -> ArrayLike:
    return _clamp((a - b) / (1.0 - a * b))


def log_neg(a: ArrayLike) -> ArrayLike:
    return _clamp(-np.asarray(a, dtype=float))


def log_smul(lam: ArrayLike, a: ArrayLike) -> ArrayLike:
    """Scalar multiplication ``lam <x> a``.

    Evaluated as ``tanh(lam * arctanh(a))``; the equivalent power form
    ``((1+a)^lam - (1-a)^lam) / ((1+a)^lam + (1-a)^lam)`` overflows for
    large ``lam`` and cancels badly near the interval ends.
    """
    _require_finite(lam, "scalar")
    return _clamp(np.tanh(lam * np.arctanh(a)))


def log_smul_power(lam: ArrayLike, a: ArrayLike) -> ArrayLike:
    """Literal power form of scalar multiplication, kept for cross-checks."""
    _require_finite(lam, "scalar")
    p = np.power(1.0 + np.asarray(a, dtype=float), lam)
    m = np.power(1.0 - np.asarray(a, dtype=float), lam)
    return _clamp((p - m) / (p + m))


def phi(a: ArrayLike) -> ArrayLike:
    """The isomorphism ``arctanh`` from (-1, 1) onto the reals."""
    out = np.arctanh(a)
    if np.ndim(out) == 0:
        return float(out)
    return out


def phi_inv(y: ArrayLike) -> ArrayLike:
    _require_finite(y, "phi coordinate")
    return _clamp(np.tanh(y))


@dataclass(frozen=True)
class PhiVec:
    """A color expressed in arctanh coordinates (unbounded reals)."""

    pr: float
    pg: float
    pb: float

    def __post_init__(self) -> None:
        for name in ("pr", "pg", "pb"):
            value = float(getattr(self, name))
            _require_finite(value, name)
            object.__setattr__(self, name, value)

    def __iter__(self) -> Iterator[float]:
        return iter((self.pr, self.pg, self.pb))

    def as_array(self) -> np.ndarray:
        return np.array([self.pr, self.pg, self.pb])


@dataclass(frozen=True)
class ColorVec:
    """A point ``(r, g, b)`` of the color cube (-1, 1)^3."""

    r: float
    g: float
    b: float

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            object.__setattr__(self, name, log_scalar(getattr(self, name)))

    def __iter__(self) -> Iterator[float]:
        return iter((self.r, self.g, self.b))

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.g, self.b])

    @classmethod
    def from_array(cls, arr) -> "ColorVec":
        r, g, b = (float(x) for x in arr)
        return cls(r, g, b)

    @classmethod
    def splat(cls, x: float) -> "ColorVec":
        return cls(x, x, x)

    def phi(self) -> PhiVec:
        return PhiVec(*(phi(c) for c in self))


THETA = ColorVec(0.0, 0.0, 0.0)


def vec_add(u: ColorVec, v: ColorVec) -> ColorVec:
    return ColorVec.from_array(log_add(u.as_array(), v.as_array()))


def vec_sub(u: ColorVec, v: ColorVec) -> ColorVec:
    return ColorVec.from_array(log_sub(u.as_array(), v.as_array()))


def vec_neg(v: ColorVec) -> ColorVec:
    return ColorVec(-v.r, -v.g, -v.b)


def vec_smul(lam: float, v: ColorVec) -> ColorVec:
    return ColorVec.from_array(log_smul(lam, v.as_array()))


def dot3(u: ColorVec, v: ColorVec) -> float:
    """Scalar product: sum over channels of ``phi(u_i) * phi(v_i)``."""
    return math.fsum(phi(a) * phi(b) for a, b in zip(u, v))


def norm3(v: ColorVec) -> float:
    return math.sqrt(dot3(v, v))
