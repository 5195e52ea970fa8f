"""Overlay rendering for CLI artifacts and the inspection service.

Styling is fixed so golden-image tests stay stable: defect pixels are
pure red at 60% opacity over the visual image, module boundaries are
1-pixel green lines.
"""

from __future__ import annotations

import numpy as np

from .analysis import DefectReport
from .imgproc.pngio import rgb_to_png
from .pipeline import SegmentationResult
from .thermogram import Thermogram

_GREEN = np.array([0, 255, 0], dtype=np.float64)
_RED = np.array([255, 0, 0], dtype=np.float64)
_DEFECT_ALPHA = 0.6


def render_overlay(
    t: Thermogram,
    seg: SegmentationResult,
    report: DefectReport | None = None,
) -> bytes:
    """PNG with module boundaries (and defect pixels when a report is given)."""
    img = t.visual.to_uint8().astype(np.float64)

    if report is not None:
        for module in report.modules:
            for r, c in module.defect_pixels:
                img[r, c] = (1 - _DEFECT_ALPHA) * img[r, c] + _DEFECT_ALPHA * _RED

    for region in seg.regions:
        for r, c in region.boundary:
            img[r, c] = _GREEN

    return rgb_to_png(np.floor(img + 0.5).astype(np.uint8))
