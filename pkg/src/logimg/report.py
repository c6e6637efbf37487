"""Statistics report (JSON) and before/after histogram table (CSV)."""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict, Optional

import numpy as np

from .enhance import AffineParams, EnhancementError, fit_params
from .image import ImageStats, RasterImage, compute_stats

REPORT_KEYS = (
    "v0", "v1", "v2",
    "alpha_a", "beta_a", "k_a",
    "alpha_b", "beta_b", "k_b",
    "width", "height",
    "lower_counts", "upper_counts",
    "error_a", "error_b",
)

HISTOGRAM_HEADER = ("code", "r_before", "g_before", "b_before", "r_after", "g_after", "b_after")


def stats_report(img: RasterImage, stats: Optional[ImageStats] = None) -> Dict[str, Any]:
    """Both algorithms' parameters for ``img``; a failing algorithm gets an error string."""
    if stats is None:
        stats = compute_stats(img)
    report: Dict[str, Any] = {
        "v0": list(stats.v0),
        "v1": list(stats.v1),
        "v2": list(stats.v2),
    }
    for algo in ("a", "b"):
        params: Optional[AffineParams] = None
        error = None
        try:
            params = fit_params(stats, algo)
        except EnhancementError as exc:
            error = str(exc)
        report[f"alpha_{algo}"] = params.alpha if params else None
        report[f"beta_{algo}"] = params.beta if params else None
        report[f"k_{algo}"] = list(params.k) if params else None
        report[f"error_{algo}"] = error
    report["width"] = img.width
    report["height"] = img.height
    report["lower_counts"] = list(stats.lower_counts)
    report["upper_counts"] = list(stats.upper_counts)
    return {key: report[key] for key in REPORT_KEYS}


def dumps_report(report: Dict[str, Any]) -> str:
    # json writes floats with repr, i.e. full double precision
    return json.dumps(report, indent=2) + "\n"


def channel_histograms(img: RasterImage) -> np.ndarray:
    """``(256, 3)`` counts of each 8-bit code per channel."""
    codes = img.to_codes().reshape(-1, 3)
    return np.stack([np.bincount(codes[:, i], minlength=256) for i in range(3)], axis=1)


def histogram_csv(before: RasterImage, after: RasterImage) -> str:
    hb, ha = channel_histograms(before), channel_histograms(after)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HISTOGRAM_HEADER)
    for code in range(256):
        writer.writerow([code, *hb[code].tolist(), *ha[code].tolist()])
    return buf.getvalue()
