"""Discrete color images with values in the cube (-1, 1)^3.

Pixels are stored as a read-only ``(height, width, 3)`` float64 array in
row-major order.  The 8-bit codec maps code ``c`` to the centre of its
bin in (0, 1) and then onto (-1, 1) by ``v = 2u - 1``, so every code lands
strictly inside the interval and the mapping inverts exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .logspace import LOWER, UPPER, ColorVec

Counts = Tuple[int, int, int]


def decode_channel(c):
    """Map 8-bit code(s) to the open interval: ``(c + 0.5) / 128 - 1``."""
    arr = np.asarray(c)
    if arr.dtype.kind not in "iu":
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError(f"channel code must be an integer, got {c!r}")
    if np.any(arr < 0) or np.any(arr > 255):
        raise ValueError(f"channel code out of range 0..255: {c!r}")
    out = (arr.astype(np.float64) + 0.5) / 128.0 - 1.0
    return float(out) if out.ndim == 0 else out


def encode_channel(v):
    """Inverse codec: ``clamp(round(128 * (v + 1) - 0.5), 0, 255)``."""
    arr = np.asarray(v, dtype=np.float64)
    codes = np.clip(np.rint(128.0 * (arr + 1.0) - 0.5), 0, 255).astype(np.uint8)
    return int(codes) if codes.ndim == 0 else codes


@dataclass(frozen=True, eq=False)
class RasterImage:
    """A ``width x height`` grid of colors from (-1, 1)^3.

    ``alpha`` holds an untouched 8-bit alpha plane when the source had one.
    """

    pixels: np.ndarray
    alpha: Optional[np.ndarray] = None
    source_depth: int = 8
    width: int = field(init=False)
    height: int = field(init=False)

    def __post_init__(self) -> None:
        px = np.array(self.pixels, dtype=np.float64)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"pixels must have shape (height, width, 3), got {px.shape}")
        if px.shape[0] == 0 or px.shape[1] == 0:
            raise ValueError("image dimension is zero")
        if not np.all(np.isfinite(px)):
            raise ValueError("pixels must be finite")
        np.clip(px, LOWER, UPPER, out=px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)
        if self.alpha is not None:
            a = np.array(self.alpha, dtype=np.uint8)
            if a.shape != px.shape[:2]:
                raise ValueError("alpha plane does not match image size")
            a.setflags(write=False)
            object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "height", px.shape[0])
        object.__setattr__(self, "width", px.shape[1])

    @classmethod
    def from_codes(cls, codes: np.ndarray, alpha: Optional[np.ndarray] = None) -> "RasterImage":
        codes = np.asarray(codes)
        if codes.ndim != 3 or codes.shape[2] != 3:
            raise ValueError(f"codes must have shape (height, width, 3), got {codes.shape}")
        return cls(decode_channel(codes), alpha=alpha)

    @classmethod
    def constant(cls, color: ColorVec, width: int, height: int) -> "RasterImage":
        return cls(np.broadcast_to(color.as_array(), (height, width, 3)))

    def to_codes(self) -> np.ndarray:
        return encode_channel(self.pixels)

    def pixel(self, x: int, y: int) -> ColorVec:
        return ColorVec.from_array(self.pixels[y, x])

    @property
    def card(self) -> int:
        return self.width * self.height

    def with_pixels(self, pixels: np.ndarray) -> "RasterImage":
        """Same metadata, new color values."""
        return RasterImage(pixels, alpha=self.alpha, source_depth=self.source_depth)


def map_pixels(
    f: RasterImage,
    op: Callable,
    vectorized: bool = False,
) -> RasterImage:
    """Apply ``op`` to every pixel of ``f``.

    By default ``op`` maps a ``ColorVec`` to a ``ColorVec``.  With
    ``vectorized=True`` it receives the whole ``(height, width, 3)`` array at
    once and must act on each pixel independently.
    """
    if vectorized:
        out = np.asarray(op(f.pixels), dtype=np.float64)
        if out.shape != f.pixels.shape:
            raise ValueError("vectorized op changed the image shape")
        return f.with_pixels(out)
    out = np.empty_like(f.pixels)
    for y in range(f.height):
        for x in range(f.width):
            out[y, x] = op(ColorVec.from_array(f.pixels[y, x])).as_array()
    return f.with_pixels(out)


def image_dot(f1: RasterImage, f2: RasterImage) -> float:
    """Discrete scalar product: sum over pixels of the color dot product."""
    if (f1.width, f1.height) != (f2.width, f2.height):
        raise ValueError(
            f"dimension mismatch: {f1.width}x{f1.height} vs {f2.width}x{f2.height}"
        )
    prod = np.arctanh(f1.pixels) * np.arctanh(f2.pixels)
    return math.fsum(prod.ravel().tolist())


def image_norm(f: RasterImage) -> float:
    return math.sqrt(image_dot(f, f))


@dataclass(frozen=True)
class ImageStats:
    """Channel means over the whole image and over its below/above-mean parts.

    ``lower_counts[i]`` and ``upper_counts[i]`` are the pixel counts of the
    sets ``f_i <= mean_i`` and ``f_i >= mean_i``.  A pixel equal to the mean
    lies in both.
    """

    v0: ColorVec
    v1: ColorVec
    v2: ColorVec
    lower_counts: Counts
    upper_counts: Counts


def _mean(values: np.ndarray) -> float:
    # fsum is exactly rounded, hence independent of summation order
    return math.fsum(values.tolist()) / values.size


def compute_stats(f: RasterImage) -> ImageStats:
    if f.card == 0:
        raise ValueError("empty image")
    m0, m1, m2, lower, upper = [], [], [], [], []
    for i in range(3):
        ch = f.pixels[:, :, i].ravel()
        # rounding of the final division can push the mean of a constant
        # channel one ulp outside its range, which would empty a partition
        m = min(max(_mean(ch), float(ch.min())), float(ch.max()))
        lo = ch[ch <= m]
        hi = ch[ch >= m]
        m0.append(m)
        m1.append(min(_mean(lo), m))
        m2.append(max(_mean(hi), m))
        lower.append(int(lo.size))
        upper.append(int(hi.size))
    return ImageStats(
        v0=ColorVec(*m0),
        v1=ColorVec(*m1),
        v2=ColorVec(*m2),
        lower_counts=tuple(lower),
        upper_counts=tuple(upper),
    )
