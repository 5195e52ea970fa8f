"""Exact Euclidean distance transform (two-pass, lower-envelope method)."""

from __future__ import annotations

import numpy as np

from .raster import BinaryMask

_INF = 1e18


def _edt_1d(f: np.ndarray) -> np.ndarray:
    """1-D squared distance transform of a sampled function (lower envelope)."""
    n = f.size
    d = np.empty(n)
    v = np.empty(n, dtype=np.int64)   # parabola sites
    z = np.empty(n + 1)               # envelope breakpoints
    k = 0
    v[0] = 0
    z[0] = -_INF
    z[1] = _INF
    for q in range(1, n):
        while True:
            p = v[k]
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2 * q - 2 * p)
            if s <= z[k]:
                k -= 1
            else:
                break
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = _INF
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        p = v[k]
        d[q] = (q - p) * (q - p) + f[p]
    return d


def distance_transform(b: BinaryMask) -> np.ndarray:
    """Exact Euclidean distance from each foreground pixel to background.

    The image border counts as background (an implicit zero frame), so a
    lone foreground pixel gets distance 1.  Background pixels get 0.
    """
    h, w = b.data.shape
    if h == 0 or w == 0:
        return np.zeros((h, w))
    # Pad with one background ring so the frame participates as background.
    f = np.zeros((h + 2, w + 2))
    f[1:h + 1, 1:w + 1] = np.where(b.data == 1, _INF, 0.0)
    for c in range(w + 2):
        f[:, c] = _edt_1d(f[:, c])
    for r in range(h + 2):
        f[r, :] = _edt_1d(f[r, :])
    return np.sqrt(f[1:h + 1, 1:w + 1])
