"""Binary mathematical morphology: erosion, dilation, opening.

Erosion takes the minimum of the mask over the structuring element placed
at each pixel, dilation the maximum over the reflected placement.  Reads
outside the image default to background (0); erosion accepts an explicit
``border`` value so the erosion/dilation adjunction can be exercised with
foreground padding.
"""

from __future__ import annotations

import numpy as np

from .raster import BinaryMask, StructuringElement


def _shifted(data: np.ndarray, dr: int, dc: int, fill: int) -> np.ndarray:
    """View of data displaced by (dr, dc): out(i, j) = data(i + dr, j + dc)."""
    h, w = data.shape
    out = np.full((h, w), fill, dtype=data.dtype)
    src_r = slice(max(dr, 0), min(h, h + dr))
    src_c = slice(max(dc, 0), min(w, w + dc))
    dst_r = slice(max(-dr, 0), min(h, h - dr))
    dst_c = slice(max(-dc, 0), min(w, w - dc))
    if src_r.start < src_r.stop and src_c.start < src_c.stop:
        out[dst_r, dst_c] = data[src_r, src_c]
    return out


def erode(b: BinaryMask, k: StructuringElement, border: int = 0) -> BinaryMask:
    """out(i, j) = min over (dr, dc) in K of b(i + dr, j + dc)."""
    out = np.ones_like(b.data)
    for dr, dc in k.offsets:
        np.minimum(out, _shifted(b.data, dr, dc, border), out=out)
    return BinaryMask(out)


def dilate(b: BinaryMask, k: StructuringElement, iterations: int = 1) -> BinaryMask:
    """out(i, j) = max over (dr, dc) in K of b(i - dr, j - dc)."""
    data = b.data
    for _ in range(iterations):
        out = np.zeros_like(data)
        for dr, dc in k.offsets:
            np.maximum(out, _shifted(data, -dr, -dc, 0), out=out)
        data = out
    return BinaryMask(data)


def opening(b: BinaryMask, k: StructuringElement) -> BinaryMask:
    """Erosion followed by dilation; removes speckle smaller than K."""
    return dilate(erode(b, k), k)


def fill_holes(b: BinaryMask) -> BinaryMask:
    """Set background regions not connected to the image border to foreground.

    4-connected background flood from the border; anything the flood cannot
    reach is an interior hole.
    """
    from .labeling import connected_components  # local import avoids a cycle

    inverted = BinaryMask(1 - b.data)
    comps = connected_components(inverted, connectivity=4)
    h, w = b.data.shape
    border_labels = set(np.unique(comps.data[0, :])) | set(np.unique(comps.data[-1, :]))
    border_labels |= set(np.unique(comps.data[:, 0])) | set(np.unique(comps.data[:, -1]))
    hole = (comps.data > 0) & ~np.isin(comps.data, sorted(border_labels))
    return BinaryMask(np.where(hole, 1, b.data))
