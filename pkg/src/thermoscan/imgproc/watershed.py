"""Marker-based watershed by priority flooding."""

from __future__ import annotations

import heapq

import numpy as np

from ..errors import NoMarkers, ShapeMismatch
from .raster import GrayImage, LabelMap

_NEIGHBORS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def watershed(
    relief: GrayImage,
    markers: LabelMap,
    mask: np.ndarray | None = None,
    carve_boundaries: bool = True,
) -> LabelMap:
    """Flood the relief from the markers, lower relief first.

    Every reachable pixel ends up with a positive marker label or, where
    two basins meet and ``carve_boundaries`` is set, with the reserved
    boundary label ``markers.label_count + 1``.  Marker pixels keep their
    labels.  Each labeled region is 8-connected and contains its marker.
    Ties are broken by (relief value, insertion sequence number), so the
    result is deterministic.

    When ``mask`` is given, pixels where it is falsy are never flooded and
    stay 0.
    """
    if relief.data.shape != markers.data.shape:
        raise ShapeMismatch(
            f"relief {relief.data.shape} vs markers {markers.data.shape}"
        )
    if markers.label_count < 1 or markers.data.max() < 1:
        raise NoMarkers("at least one positive marker label is required")

    h, w = relief.data.shape
    out = markers.data.copy()
    boundary = markers.label_count + 1
    rel = relief.data
    allowed = None if mask is None else np.asarray(mask).astype(bool)

    heap: list[tuple[float, int, int, int, int]] = []
    seq = 0

    def push_neighbors(r: int, c: int, src: int) -> None:
        nonlocal seq
        for dr, dc in _NEIGHBORS:
            rr, cc = r + dr, c + dc
            if 0 <= rr < h and 0 <= cc < w and out[rr, cc] == 0:
                if allowed is not None and not allowed[rr, cc]:
                    continue
                heapq.heappush(heap, (rel[rr, cc], seq, rr, cc, src))
                seq += 1

    seeds = np.argwhere(markers.data > 0)
    for r, c in seeds:
        push_neighbors(int(r), int(c), int(markers.data[r, c]))

    while heap:
        _, _, r, c, src = heapq.heappop(heap)
        if out[r, c] != 0:
            continue
        label = src
        if carve_boundaries:
            # A pixel adjacent only to its own front keeps the front's
            # label; any contact with another basin turns it into a
            # separation-line pixel.
            adjacent = set()
            for dr, dc in _NEIGHBORS:
                rr, cc = r + dr, c + dc
                if 0 <= rr < h and 0 <= cc < w:
                    v = out[rr, cc]
                    if 0 < v != boundary:
                        adjacent.add(int(v))
            if adjacent != {src}:
                label = boundary
        out[r, c] = label
        push_neighbors(r, c, src)

    return LabelMap(out, markers.label_count)
