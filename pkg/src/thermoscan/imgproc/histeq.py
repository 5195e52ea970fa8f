"""Histogram equalization: global, partition-based (DHE) and tile-based (CLAHE).

All three share one mapping convention.  For a histogram with counts c and
cumulative cdf over an output range [lo, hi]:

    map(q) = lo + round( (cdf(q) - cdf_min) / (n - cdf_min) * (hi - lo) )

where cdf_min is the cdf value at the first occupied bin.  A degenerate
histogram (all mass in one bin) maps to the range floor, except that a
fully constant image is returned unchanged by convention.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidParameter
from .raster import GrayImage, quantize


def _equalize_lut(counts: np.ndarray, out_lo: int, out_hi: int) -> np.ndarray:
    """Per-bin output levels for one histogram segment (ints in [out_lo, out_hi])."""
    counts = np.asarray(counts, dtype=np.float64)
    n = counts.sum()
    occupied = np.nonzero(counts)[0]
    if occupied.size == 0:
        return np.full(counts.size, out_lo, dtype=np.int64)
    cdf = np.cumsum(counts)
    cdf_min = cdf[occupied[0]]
    if n <= cdf_min:  # degenerate: a single occupied bin
        return np.full(counts.size, out_lo, dtype=np.int64)
    lut = out_lo + np.rint((cdf - cdf_min) / (n - cdf_min) * (out_hi - out_lo))
    return np.clip(lut, out_lo, out_hi).astype(np.int64)


def _is_constant(g: GrayImage) -> bool:
    return g.data.size == 0 or g.data.min() == g.data.max()


def equalize_global(g: GrayImage) -> GrayImage:
    """Plain global histogram equalization over 256 bins."""
    if _is_constant(g):
        return GrayImage(g.data)
    q = quantize(g)
    counts = np.bincount(q.ravel(), minlength=256)
    lut = _equalize_lut(counts, 0, 255)
    return GrayImage(lut[q] / 255.0)


# --- DHE ---------------------------------------------------------------------

def _smooth_histogram(counts: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average; the window is truncated at the histogram ends."""
    r = window // 2
    csum = np.concatenate([[0.0], np.cumsum(counts, dtype=np.float64)])
    lo = np.clip(np.arange(256) - r, 0, 256)
    hi = np.clip(np.arange(256) + r + 1, 0, 256)
    return (csum[hi] - csum[lo]) / (hi - lo)


def _partition_bins(smoothed: np.ndarray, min_span: int) -> list[tuple[int, int]]:
    """Split 0..255 at strict local minima, then merge narrow partitions."""
    minima = [
        i for i in range(1, 255)
        if smoothed[i] < smoothed[i - 1] and smoothed[i] < smoothed[i + 1]
    ]
    bounds = [-1] + minima + [255]
    parts = [(bounds[k] + 1, bounds[k + 1]) for k in range(len(bounds) - 1)]
    # A minimum adjacent to the previous one can create an empty range; drop it.
    parts = [(lo, hi) for lo, hi in parts if lo <= hi]

    while len(parts) > 1:
        narrow = next(
            (k for k, (lo, hi) in enumerate(parts) if hi - lo + 1 < min_span), None
        )
        if narrow is None:
            break
        k = narrow
        if k == 0:
            into = 1
        elif k == len(parts) - 1:
            into = k - 1
        else:
            left_w = parts[k - 1][1] - parts[k - 1][0]
            right_w = parts[k + 1][1] - parts[k + 1][0]
            into = k - 1 if left_w <= right_w else k + 1
        a, b = sorted((k, into))
        parts[a:b + 1] = [(parts[a][0], parts[b][1])]
    return parts


def dhe(g: GrayImage, smoothing_window: int = 5, min_partition_span: int = 8) -> GrayImage:
    """Dynamic histogram equalization.

    The 256-bin histogram is smoothed with a centered moving average,
    split at strict local minima of the smoothed curve, and partitions
    narrower than ``min_partition_span`` are merged into their smaller
    neighbor.  Each partition receives an output gray range proportional
    to its input span and is equalized into it independently; the overall
    mapping is monotone non-decreasing.
    """
    if smoothing_window < 1 or smoothing_window % 2 == 0:
        raise InvalidParameter("smoothing_window must be odd and >= 1")
    if not 1 <= min_partition_span <= 256:
        raise InvalidParameter("min_partition_span must be in [1, 256]")
    if _is_constant(g):
        return GrayImage(g.data)

    q = quantize(g)
    counts = np.bincount(q.ravel(), minlength=256)
    smoothed = _smooth_histogram(counts, smoothing_window)
    parts = _partition_bins(smoothed, min_partition_span)

    spans = np.array([hi - lo for lo, hi in parts], dtype=np.float64)
    if spans.sum() == 0:
        spans = np.ones_like(spans)
    edges = np.rint(255.0 * np.cumsum(spans) / spans.sum()).astype(np.int64)
    edges = np.concatenate([[0], edges])

    lut = np.empty(256, dtype=np.int64)
    for k, (lo, hi) in enumerate(parts):
        lut[lo:hi + 1] = _equalize_lut(counts[lo:hi + 1], int(edges[k]), int(edges[k + 1]))
    return GrayImage(lut[q] / 255.0)


# --- CLAHE -------------------------------------------------------------------

def _tile_lut(counts: np.ndarray, clip: float) -> np.ndarray:
    """Mapping for one tile: clip, redistribute once, then equalize into 0..255."""
    if np.count_nonzero(counts) <= 1:
        return np.arange(256, dtype=np.int64)  # constant tile keeps its value
    counts = counts.astype(np.float64)
    clipped = np.minimum(counts, clip)
    excess = (counts - clipped).sum()
    per_bin = excess / 256.0  # exact uniform share, so no residual is left over
    h = clipped + per_bin
    h[255] += excess - 256.0 * per_bin
    return _equalize_lut(h, 0, 255)


def clahe(
    g: GrayImage,
    tiles_x: int = 8,
    tiles_y: int = 8,
    clip_limit: float = 4.0,
) -> GrayImage:
    """Contrast-limited adaptive histogram equalization.

    Per tile, the histogram is clipped at ``clip_limit`` times the uniform
    bin height (tile pixels / 256), the clipped mass is redistributed
    uniformly in one pass (residual into bin 255), and the tile mapping is
    the equalization of the result.  Each pixel takes the bilinear
    interpolation of the four surrounding tile mappings; outside the
    outermost tile centers the edge mapping is replicated.
    """
    if tiles_x < 1 or tiles_y < 1:
        raise InvalidParameter("tile counts must be >= 1")
    if clip_limit < 1.0:
        raise InvalidParameter("clip_limit must be >= 1")
    h, w = g.data.shape
    if h < tiles_y or w < tiles_x:
        raise InvalidParameter("image smaller than the tile grid")
    if _is_constant(g):
        return GrayImage(g.data)

    q = quantize(g)
    ys = (np.arange(tiles_y + 1) * h) // tiles_y
    xs = (np.arange(tiles_x + 1) * w) // tiles_x

    luts = np.empty((tiles_y, tiles_x, 256), dtype=np.int64)
    for ty in range(tiles_y):
        for tx in range(tiles_x):
            block = q[ys[ty]:ys[ty + 1], xs[tx]:xs[tx + 1]]
            counts = np.bincount(block.ravel(), minlength=256)
            clip = clip_limit * block.size / 256.0
            luts[ty, tx] = _tile_lut(counts, clip)

    cy = (ys[:-1] + ys[1:] - 1) / 2.0
    cx = (xs[:-1] + xs[1:] - 1) / 2.0
    i0y, wy = _interp_coords(np.arange(h), cy)
    i0x, wx = _interp_coords(np.arange(w), cx)

    wy = wy[:, None]
    wx = wx[None, :]
    iy0 = i0y[:, None]
    iy1 = np.minimum(i0y + 1, tiles_y - 1)[:, None]
    ix0 = i0x[None, :]
    ix1 = np.minimum(i0x + 1, tiles_x - 1)[None, :]

    val = (
        (1 - wy) * (1 - wx) * luts[iy0, ix0, q]
        + (1 - wy) * wx * luts[iy0, ix1, q]
        + wy * (1 - wx) * luts[iy1, ix0, q]
        + wy * wx * luts[iy1, ix1, q]
    )
    return GrayImage(np.clip(val / 255.0, 0.0, 1.0))


def _interp_coords(pos: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lower tile index and fractional weight per coordinate, edge-replicated."""
    if centers.size == 1:
        return np.zeros(pos.size, dtype=np.int64), np.zeros(pos.size)
    idx = np.clip(np.searchsorted(centers, pos, side="right"), 1, centers.size - 1)
    lo = centers[idx - 1]
    hi = centers[idx]
    weight = np.clip((pos - lo) / (hi - lo), 0.0, 1.0)
    return (idx - 1).astype(np.int64), weight
