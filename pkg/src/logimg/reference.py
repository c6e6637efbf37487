"""Published statistics and enhancement parameters for four standard test images.

Values are printed to three decimals at the source; ``v0``, ``v1``, ``v2``
are channel means in (-1, 1) coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .image import ImageStats
from .logspace import ColorVec


@dataclass(frozen=True)
class ReferenceCase:
    name: str
    v0: Tuple[float, float, float]
    v1: Tuple[float, float, float]
    v2: Tuple[float, float, float]
    params_a: Tuple[float, float]
    params_b: Tuple[float, float]

    def stats(self) -> ImageStats:
        # partition counts are not published
        return ImageStats(
            v0=ColorVec(*self.v0),
            v1=ColorVec(*self.v1),
            v2=ColorVec(*self.v2),
            lower_counts=(0, 0, 0),
            upper_counts=(0, 0, 0),
        )

    def expected(self, algorithm: str) -> Tuple[float, float]:
        return self.params_a if algorithm.upper() == "A" else self.params_b


REFERENCE_CASES: Dict[str, ReferenceCase] = {
    c.name: c
    for c in (
        ReferenceCase(
            "couple",
            v0=(-0.705, -0.784, -0.784),
            v1=(-0.868, -0.883, -0.873),
            v2=(-0.471, -0.567, -0.612),
            params_a=(1.434, 1.429),
            params_b=(1.472, -1.461),
        ),
        ReferenceCase(
            "fruit",
            v0=(-0.187, -0.388, -0.586),
            v1=(-0.549, -0.710, -0.785),
            v2=(0.359, 0.079, -0.263),
            params_a=(1.081, 0.458),
            params_b=(1.181, -1.156),
        ),
        ReferenceCase(
            "kidsat3",
            v0=(-0.694, -0.727, -0.580),
            v1=(-0.868, -0.846, -0.714),
            v2=(-0.347, -0.515, -0.459),
            params_a=(1.384, 1.116),
            params_b=(1.450, -1.447),
        ),
        ReferenceCase(
            "boat",
            v0=(-0.194, -0.323, -0.338),
            v1=(-0.557, -0.675, -0.676),
            v2=(-0.001, -0.119, -0.107),
            params_a=(1.402, 0.412),
            params_b=(1.538, -1.941),
        ),
    )
}

# Published (alpha, beta) are matched to this absolute tolerance.
PARAM_TOL = 0.005
