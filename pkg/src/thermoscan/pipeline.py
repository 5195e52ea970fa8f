"""Segmentation pipeline: from a thermogram to per-module regions.

Stage order: grayscale -> DHE -> CLAHE -> Gaussian blur -> automatic
threshold -> morphological opening -> distance-transform markers ->
marker-based watershed -> region extraction with a minimum-area filter.

Modules render darker than the background in the visual image, so the
binarization keeps the class at or below the automatic threshold.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidParameter, LabelNotFound, NoModulesFound
from .imgproc import (
    BinaryMask,
    GrayImage,
    LabelMap,
    StructuringElement,
    clahe,
    connected_components,
    dhe,
    dilate,
    distance_transform,
    fill_holes,
    gaussian_blur,
    histogram,
    opening,
    otsu_threshold,
    quantize,
    to_grayscale,
    watershed,
)
from .thermogram import Thermogram


@dataclass(frozen=True)
class PipelineConfig:
    dhe_smoothing_window: int = 5
    dhe_min_partition_span: int = 8
    clahe_tiles_x: int = 8
    clahe_tiles_y: int = 8
    clahe_clip_limit: float = 4.0
    gaussian_sigma: float = 1.0
    structuring_element_size: int = 5
    marker_foreground_fraction: float = 0.5
    background_dilation_iterations: int = 3
    connectivity: int = 8
    min_module_area_fraction: float = 0.005

    def __post_init__(self):
        w = self.dhe_smoothing_window
        if w < 1 or w % 2 == 0:
            raise InvalidParameter("dhe_smoothing_window must be odd and >= 1")
        if not 1 <= self.dhe_min_partition_span <= 256:
            raise InvalidParameter("dhe_min_partition_span must be in [1, 256]")
        if self.clahe_tiles_x < 1 or self.clahe_tiles_y < 1:
            raise InvalidParameter("clahe tile counts must be >= 1")
        if self.clahe_clip_limit < 1.0:
            raise InvalidParameter("clahe_clip_limit must be >= 1")
        if self.gaussian_sigma <= 0:
            raise InvalidParameter("gaussian_sigma must be > 0")
        s = self.structuring_element_size
        if s < 1 or s % 2 == 0:
            raise InvalidParameter("structuring_element_size must be odd and >= 1")
        if not 0.0 < self.marker_foreground_fraction < 1.0:
            raise InvalidParameter("marker_foreground_fraction must be in (0, 1)")
        if self.background_dilation_iterations < 0:
            raise InvalidParameter("background_dilation_iterations must be >= 0")
        if self.connectivity not in (4, 8):
            raise InvalidParameter("connectivity must be 4 or 8")
        if not 0.0 <= self.min_module_area_fraction < 1.0:
            raise InvalidParameter("min_module_area_fraction must be in [0, 1)")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, doc: str | dict) -> "PipelineConfig":
        data = json.loads(doc) if isinstance(doc, str) else dict(doc)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameter(f"unknown config fields {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class ModuleRegion:
    """One segmented PV module."""

    label: int
    pixel_count: int
    bbox: tuple[int, int, int, int]  # (row0, col0, row1, col1), half-open
    boundary: tuple[tuple[int, int], ...]  # closed Moore contour, clockwise
    touches_border: bool


@dataclass(frozen=True)
class SegmentationResult:
    mask: BinaryMask          # I_PV: union of segmented module pixels
    labels: LabelMap          # per-module labels, consecutive from 1
    regions: tuple[ModuleRegion, ...]
    config: PipelineConfig
    snapshots: dict[str, np.ndarray] | None = None


def segment(t: Thermogram, cfg: PipelineConfig | None = None, keep_snapshots: bool = False) -> SegmentationResult:
    """Run the full segmentation flow; raises NoModulesFound if nothing survives."""
    cfg = cfg or PipelineConfig()
    snaps: dict[str, np.ndarray] = {}

    gray = to_grayscale(t.visual)
    enhanced = dhe(gray, cfg.dhe_smoothing_window, cfg.dhe_min_partition_span)
    enhanced = clahe(enhanced, cfg.clahe_tiles_x, cfg.clahe_tiles_y, cfg.clahe_clip_limit)
    gstar = gaussian_blur(enhanced, cfg.gaussian_sigma)

    hist = histogram(gstar)
    if np.count_nonzero(hist.counts) <= 1:
        raise NoModulesFound("image is uniform; no foreground/background separation")
    th_bin = otsu_threshold(hist)
    binary = BinaryMask((quantize(gstar) <= th_bin).astype(np.uint8))  # darker class = modules

    k = StructuringElement.box(cfg.structuring_element_size)
    opened = opening(binary, k)
    if opened.data.max(initial=0) == 0:
        raise NoModulesFound("opening removed all foreground")
    # Modules are solid: saturated hot spots can punch bright holes through
    # the dark module at binarization, and those pixels must stay analyzable.
    opened = fill_holes(opened)

    dist = distance_transform(opened)
    comps = connected_components(opened, cfg.connectivity)
    markers = build_markers(opened, cfg, dist=dist, comps=comps)

    relief = GrayImage(1.0 - dist / dist.max())
    allowed = dilate(opened, k, iterations=cfg.background_dilation_iterations)
    flooded = _flood_components(relief, markers, comps, allowed)

    labels_in = np.where(opened.data == 1, flooded, 0).astype(np.int32)
    labels, regions = _extract_regions(labels_in, cfg)
    if not regions:
        raise NoModulesFound("no region above the minimum-area filter")

    if keep_snapshots:
        snaps = {
            "gray": gray.data,
            "enhanced": gstar.data,
            "binary": binary.data,
            "opened": opened.data,
            "distance": dist,
            "markers": markers.data,
            "labels": labels.data,
        }
    return SegmentationResult(
        mask=opened,
        labels=labels,
        regions=regions,
        config=cfg,
        snapshots=snaps if keep_snapshots else None,
    )


def build_markers(
    opened: BinaryMask,
    cfg: PipelineConfig | None = None,
    dist: np.ndarray | None = None,
    comps: LabelMap | None = None,
) -> LabelMap:
    """Sure-foreground markers from the distance transform.

    Each connected component of the opened mask is thresholded at
    ``marker_foreground_fraction`` times its own distance maximum, so a
    large module cannot suppress markers of a small or partial one.
    """
    cfg = cfg or PipelineConfig()
    if dist is None:
        dist = distance_transform(opened)
    if comps is None:
        comps = connected_components(opened, cfg.connectivity)

    sure = np.zeros(opened.data.shape, dtype=np.uint8)
    for label in range(1, comps.label_count + 1):
        region = comps.data == label
        peak = dist[region].max()
        if peak <= 0:
            continue
        sure[region & (dist >= cfg.marker_foreground_fraction * peak)] = 1
    return connected_components(BinaryMask(sure), cfg.connectivity)


def _flood_components(
    relief: GrayImage, markers: LabelMap, comps: LabelMap, allowed: BinaryMask
) -> np.ndarray:
    """Watershed restricted to the mask, one opened component at a time.

    Fronts cannot cross between components before a component is fully
    claimed (gap pixels carry the maximal relief), so flooding each
    component separately equals a global flood restricted to the opened
    mask.  Components holding a single marker are assigned directly.
    """
    out = np.zeros(relief.data.shape, dtype=np.int32)
    for comp in range(1, comps.label_count + 1):
        region = comps.data == comp
        labels_here = np.unique(markers.data[region])
        labels_here = labels_here[labels_here > 0]
        if labels_here.size == 0:
            continue
        if labels_here.size == 1:
            out[region] = labels_here[0]
            continue
        rows, cols = np.nonzero(region)
        r0, r1 = rows.min(), rows.max() + 1
        c0, c1 = cols.min(), cols.max() + 1
        sub_markers = np.where(region[r0:r1, c0:c1], markers.data[r0:r1, c0:c1], 0)
        flood = watershed(
            GrayImage(relief.data[r0:r1, c0:c1]),
            LabelMap(sub_markers, markers.label_count),
            mask=region[r0:r1, c0:c1],
            carve_boundaries=False,
        )
        patch = out[r0:r1, c0:c1]
        patch[region[r0:r1, c0:c1]] = flood.data[region[r0:r1, c0:c1]]
    return out


def _extract_regions(
    labels_in: np.ndarray, cfg: PipelineConfig
) -> tuple[LabelMap, tuple[ModuleRegion, ...]]:
    h, w = labels_in.shape
    min_area = cfg.min_module_area_fraction * h * w

    counts = np.bincount(labels_in.ravel())
    keep = [lab for lab in range(1, counts.size) if counts[lab] >= min_area and counts[lab] > 0]

    # Consecutive labels ordered by the raster-first pixel of each region.
    firsts = {}
    flat = labels_in.ravel()
    for lab in keep:
        firsts[lab] = int(np.argmax(flat == lab))
    keep.sort(key=lambda lab: firsts[lab])

    out = np.zeros((h, w), dtype=np.int32)
    regions = []
    for new_label, lab in enumerate(keep, start=1):
        region = labels_in == lab
        out[region] = new_label
    labelmap = LabelMap(out, len(keep))
    for new_label in range(1, len(keep) + 1):
        region = labelmap.data == new_label
        rows, cols = np.nonzero(region)
        bbox = (int(rows.min()), int(cols.min()), int(rows.max()) + 1, int(cols.max()) + 1)
        touches = bool(
            rows.min() == 0 or cols.min() == 0 or rows.max() == h - 1 or cols.max() == w - 1
        )
        regions.append(
            ModuleRegion(
                label=new_label,
                pixel_count=int(region.sum()),
                bbox=bbox,
                boundary=trace_boundary(labelmap, new_label),
                touches_border=touches,
            )
        )
    return labelmap, tuple(regions)


# Clockwise Moore neighborhood in image coordinates (row grows downward).
_MOORE = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))


def trace_boundary(labelmap: LabelMap, label: int) -> tuple[tuple[int, int], ...]:
    """Outer contour of one region: Moore-neighbor tracing, clockwise.

    Starts at the region's raster-first pixel and returns a closed
    polyline (first == last, except a single-pixel region which is its
    own trivially closed contour).
    """
    data = labelmap.data
    h, w = data.shape
    hits = np.argwhere(data == label)
    if hits.size == 0:
        raise LabelNotFound(f"label {label} not present")
    start = (int(hits[0][0]), int(hits[0][1]))

    def at(r: int, c: int) -> bool:
        return 0 <= r < h and 0 <= c < w and data[r, c] == label

    def next_on_contour(cur: tuple[int, int], b_idx: int) -> tuple[tuple[int, int], int] | None:
        for i in range(1, 9):
            d_idx = (b_idx + i) % 8
            dr, dc = _MOORE[d_idx]
            rr, cc = cur[0] + dr, cur[1] + dc
            if at(rr, cc):
                # new backtrack: the last background cell scanned
                prev_idx = (b_idx + i - 1) % 8
                pr, pc = cur[0] + _MOORE[prev_idx][0], cur[1] + _MOORE[prev_idx][1]
                back = _MOORE.index((pr - rr, pc - cc))
                return (rr, cc), back
        return None

    second = next_on_contour(start, 4)  # initial backtrack is west
    if second is None:
        return (start,)  # isolated pixel

    contour = [start, second[0]]
    state = second
    limit = 8 * h * w + 8
    while len(contour) < limit:
        if state[0] == start and next_on_contour(*state) == second:
            break  # about to repeat the first move: contour is closed
        state = next_on_contour(*state)
        contour.append(state[0])
    return tuple(contour)


def segmentation_to_dict(seg: SegmentationResult) -> dict:
    """JSON-ready summary of a segmentation (boundaries included)."""
    return {
        "config": json.loads(seg.config.to_json()),
        "module_count": len(seg.regions),
        "regions": [
            {
                "label": r.label,
                "pixel_count": r.pixel_count,
                "bbox": list(r.bbox),
                "touches_border": r.touches_border,
                "boundary": [[p, q] for p, q in r.boundary],
            }
            for r in seg.regions
        ],
    }
