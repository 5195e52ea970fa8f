"""Per-module temperature extraction and statistical defect detection.

For each segmented module the mean and the population standard deviation
of its temperatures define the defect threshold mean + std; pixels
strictly above it form the defect set.  Modules are analyzed
independently of one another.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyModule, OutOfBounds, ShapeMismatch
from .imgproc import BinaryMask, connected_components
from .pipeline import SegmentationResult
from .thermogram import Thermogram

REPORT_VERSION = 1


@dataclass(frozen=True)
class ModuleTemperatures:
    """Temperatures of one module: parallel (row, col, celsius) samples."""

    label: int
    rows: np.ndarray
    cols: np.ndarray
    temps: np.ndarray

    def __post_init__(self):
        if self.temps.size == 0:
            raise EmptyModule(f"module {self.label} has no pixels")
        if not (self.rows.size == self.cols.size == self.temps.size):
            raise ShapeMismatch("rows/cols/temps must have the same length")

    @property
    def n(self) -> int:
        return int(self.temps.size)


@dataclass(frozen=True)
class ThermalStats:
    n: int
    mean_c: float
    std_c: float        # population standard deviation
    threshold_c: float  # mean_c + std_c, same rounding path
    min_c: float
    max_c: float
    hist_edges: tuple[float, ...]
    hist_counts: tuple[int, ...]


@dataclass(frozen=True)
class DefectBlob:
    centroid: tuple[float, float]
    peak_c: float
    size: int


@dataclass(frozen=True)
class ModuleReport:
    label: int
    stats: ThermalStats
    defect_pixels: tuple[tuple[int, int], ...]
    defect_fraction: float
    blobs: tuple[DefectBlob, ...]
    verdict: str  # "healthy" | "suspect"


@dataclass(frozen=True)
class DefectReport:
    version: int
    thermogram_id: str
    modules: tuple[ModuleReport, ...]
    summary: dict = field(default_factory=dict)


def extract_module_temperatures(
    t: Thermogram, seg: SegmentationResult
) -> list[ModuleTemperatures]:
    """Collect T(i, j) at each module's labeled pixels, in raster order."""
    if t.temperature.data.shape != seg.labels.data.shape:
        raise ShapeMismatch(
            f"temperature {t.temperature.data.shape} vs labels {seg.labels.data.shape}"
        )
    out = []
    for region in seg.regions:
        rows, cols = np.nonzero(seg.labels.data == region.label)
        out.append(
            ModuleTemperatures(
                label=region.label,
                rows=rows,
                cols=cols,
                temps=t.temperature.data[rows, cols].astype(np.float64),
            )
        )
    return out


def module_stats(mt: ModuleTemperatures, bins: int = 64) -> ThermalStats:
    """Mean, population std, threshold mean + std, and a histogram over [min, max]."""
    if bins < 2:
        raise ValueError("bins must be >= 2")
    temps = mt.temps
    mean = float(temps.mean())
    std = float(np.sqrt(np.mean((temps - mean) ** 2)))
    lo = float(temps.min())
    hi = float(temps.max())
    counts, edges = np.histogram(temps, bins=bins, range=(lo, hi if hi > lo else lo + 1.0))
    return ThermalStats(
        n=mt.n,
        mean_c=mean,
        std_c=std,
        threshold_c=mean + std,
        min_c=lo,
        max_c=hi,
        hist_edges=tuple(float(e) for e in edges),
        hist_counts=tuple(int(c) for c in counts),
    )


def detect_defects(
    mt: ModuleTemperatures, stats: ThermalStats, min_blob_size: int = 1
) -> ModuleReport:
    """Defect pixels are those strictly above the module threshold.

    Blobs are 8-connected components of the defect set; blobs smaller
    than ``min_blob_size`` are discarded (default keeps everything).  The
    verdict is "suspect" iff any defect pixel survives.
    """
    hot = mt.temps > stats.threshold_c
    rows = mt.rows[hot]
    cols = mt.cols[hot]
    temps = mt.temps[hot]

    blobs: list[DefectBlob] = []
    keep = np.zeros(rows.size, dtype=bool)
    if rows.size:
        r0, c0 = rows.min(), cols.min()
        local = np.zeros((rows.max() - r0 + 1, cols.max() - c0 + 1), dtype=np.uint8)
        local[rows - r0, cols - c0] = 1
        comp = connected_components(BinaryMask(local), connectivity=8)
        pixel_blob = comp.data[rows - r0, cols - c0]
        for blob_label in range(1, comp.label_count + 1):
            members = pixel_blob == blob_label
            size = int(members.sum())
            if size < min_blob_size:
                continue
            keep |= members
            blobs.append(
                DefectBlob(
                    centroid=(float(rows[members].mean()), float(cols[members].mean())),
                    peak_c=float(temps[members].max()),
                    size=size,
                )
            )

    defect_pixels = tuple(
        (int(r), int(c)) for r, c in zip(rows[keep], cols[keep])
    )
    return ModuleReport(
        label=mt.label,
        stats=stats,
        defect_pixels=defect_pixels,
        defect_fraction=len(defect_pixels) / mt.n,
        blobs=tuple(blobs),
        verdict="suspect" if defect_pixels else "healthy",
    )


def analyze(
    t: Thermogram,
    seg: SegmentationResult,
    bins: int = 64,
    min_blob_size: int = 1,
) -> DefectReport:
    """Extract -> stats -> detect for every module, plus a whole-image summary."""
    modules = []
    for mt in extract_module_temperatures(t, seg):
        stats = module_stats(mt, bins=bins)
        modules.append(detect_defects(mt, stats, min_blob_size=min_blob_size))
    suspects = sum(1 for m in modules if m.verdict == "suspect")
    return DefectReport(
        version=REPORT_VERSION,
        thermogram_id=t.id,
        modules=tuple(modules),
        summary={
            "module_count": len(modules),
            "suspect_modules": suspects,
            "defect_pixel_count": sum(len(m.defect_pixels) for m in modules),
        },
    )


def query_temperature(t: Thermogram, row: int, col: int) -> float:
    """Temperature in Celsius at (row, col), exactly as stored."""
    if not (0 <= row < t.height and 0 <= col < t.width):
        raise OutOfBounds(f"({row}, {col}) outside {t.height}x{t.width}")
    return float(t.temperature.data[row, col])


# --- JSON serialization ------------------------------------------------------

def _round6(x: float) -> float:
    return round(float(x), 6)


def report_to_dict(report: DefectReport) -> dict:
    """Versioned JSON document; floats fixed to 6 decimals for reproducibility."""
    return {
        "version": report.version,
        "thermogram_id": report.thermogram_id,
        "modules": [
            {
                "label": m.label,
                "n": m.stats.n,
                "mean_c": _round6(m.stats.mean_c),
                "std_c": _round6(m.stats.std_c),
                "threshold_c": _round6(m.stats.threshold_c),
                "min_c": _round6(m.stats.min_c),
                "max_c": _round6(m.stats.max_c),
                "histogram": {
                    "edges": [_round6(e) for e in m.stats.hist_edges],
                    "counts": list(m.stats.hist_counts),
                },
                "defect_fraction": _round6(m.defect_fraction),
                "defect_pixels": [[r, c] for r, c in m.defect_pixels],
                "blobs": [
                    {
                        "centroid": [_round6(b.centroid[0]), _round6(b.centroid[1])],
                        "peak_c": _round6(b.peak_c),
                        "size": b.size,
                    }
                    for b in m.blobs
                ],
                "verdict": m.verdict,
            }
            for m in report.modules
        ],
        "summary": dict(report.summary),
    }


def report_to_json(report: DefectReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True)


def report_from_dict(doc: dict) -> DefectReport:
    modules = []
    for m in doc["modules"]:
        stats = ThermalStats(
            n=m["n"],
            mean_c=m["mean_c"],
            std_c=m["std_c"],
            threshold_c=m["threshold_c"],
            min_c=m["min_c"],
            max_c=m["max_c"],
            hist_edges=tuple(m["histogram"]["edges"]),
            hist_counts=tuple(m["histogram"]["counts"]),
        )
        modules.append(
            ModuleReport(
                label=m["label"],
                stats=stats,
                defect_pixels=tuple((r, c) for r, c in m["defect_pixels"]),
                defect_fraction=m["defect_fraction"],
                blobs=tuple(
                    DefectBlob(
                        centroid=(b["centroid"][0], b["centroid"][1]),
                        peak_c=b["peak_c"],
                        size=b["size"],
                    )
                    for b in m["blobs"]
                ),
                verdict=m["verdict"],
            )
        )
    return DefectReport(
        version=doc["version"],
        thermogram_id=doc["thermogram_id"],
        modules=tuple(modules),
        summary=dict(doc["summary"]),
    )


def report_from_json(text: str) -> DefectReport:
    return report_from_dict(json.loads(text))
