"""Marker-based watershed: totality, marker preservation, connectivity."""

from collections import deque

import numpy as np
import pytest

from thermoscan.errors import NoMarkers, ShapeMismatch
from thermoscan.imgproc import GrayImage, LabelMap, connected_components, watershed
from thermoscan.imgproc.raster import BinaryMask


def _bfs_distance(shape, seeds):
    """8-connected BFS hop distance from a set of seed pixels."""
    h, w = shape
    dist = np.full((h, w), -1, dtype=np.int64)
    queue = deque()
    for r, c in seeds:
        dist[r, c] = 0
        queue.append((r, c))
    while queue:
        r, c = queue.popleft()
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                rr, cc = r + dr, c + dc
                if 0 <= rr < h and 0 <= cc < w and dist[rr, cc] < 0:
                    dist[rr, cc] = dist[r, c] + 1
                    queue.append((rr, cc))
    return dist


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        watershed(GrayImage(np.zeros((3, 3))), LabelMap(np.zeros((2, 2), dtype=np.int32), 0))


def test_no_markers():
    with pytest.raises(NoMarkers):
        watershed(GrayImage(np.zeros((3, 3))), LabelMap(np.zeros((3, 3), dtype=np.int32), 0))


def test_single_marker_floods_everything():
    markers = np.zeros((6, 6), dtype=np.int32)
    markers[3, 3] = 1
    out = watershed(GrayImage(np.zeros((6, 6))), LabelMap(markers, 1))
    assert (out.data == 1).all()


def test_markers_covering_all_pixels_unchanged():
    markers = np.ones((4, 5), dtype=np.int32)
    markers[2:, :] = 2
    out = watershed(GrayImage(np.zeros((4, 5))), LabelMap(markers, 2))
    assert np.array_equal(out.data, markers)


def test_uniform_relief_two_markers_nearer_wins():
    h, w = 9, 21
    markers = np.zeros((h, w), dtype=np.int32)
    markers[4, 2] = 1
    markers[4, 18] = 2
    out = watershed(GrayImage(np.zeros((h, w))), LabelMap(markers, 2), carve_boundaries=False)
    d1 = _bfs_distance((h, w), [(4, 2)])
    d2 = _bfs_distance((h, w), [(4, 18)])
    # strictly nearer pixels must go to their marker; equidistant ones may
    # fall either way depending on flood order
    assert (out.data[d1 < d2] == 1).all()
    assert (out.data[d2 < d1] == 2).all()
    assert (out.data > 0).all()


def test_mask_restricts_flooding():
    markers = np.zeros((5, 5), dtype=np.int32)
    markers[0, 0] = 1
    mask = np.ones((5, 5), dtype=bool)
    mask[:, 3] = False
    out = watershed(GrayImage(np.zeros((5, 5))), LabelMap(markers, 1), mask=mask)
    assert (out.data[:, 3] == 0).all()
    assert (out.data[:, :3] == 1).all()


def test_random_totality_preservation_connectivity():
    rng = np.random.default_rng(0)
    for case in range(200):
        h = int(rng.integers(4, 18))
        w = int(rng.integers(4, 18))
        relief = GrayImage(rng.random((h, w)))
        n_markers = int(rng.integers(1, 5))
        markers = np.zeros((h, w), dtype=np.int32)
        cells = rng.choice(h * w, size=n_markers, replace=False)
        for i, cell in enumerate(cells):
            markers[cell // w, cell % w] = i + 1
        lm = LabelMap(markers, n_markers)
        out = watershed(relief, lm)

        # totality: every pixel has a positive label or the boundary label
        assert (out.data > 0).all(), f"case {case}: unlabeled pixels"
        assert out.data.max() <= n_markers + 1

        # marker preservation
        seed_pixels = markers > 0
        assert np.array_equal(out.data[seed_pixels], markers[seed_pixels])

        # each region is 8-connected and contains its marker
        for lbl in range(1, n_markers + 1):
            region = (out.data == lbl).astype(np.uint8)
            if region.sum() == 0:
                continue
            cc = connected_components(BinaryMask(region), connectivity=8)
            assert cc.label_count == 1, f"case {case}: region {lbl} disconnected"
            assert region[markers == lbl].all()


def test_deterministic():
    rng = np.random.default_rng(1)
    relief = GrayImage(rng.random((12, 12)))
    markers = np.zeros((12, 12), dtype=np.int32)
    markers[2, 2] = 1
    markers[9, 9] = 2
    lm = LabelMap(markers, 2)
    a = watershed(relief, lm)
    b = watershed(relief, lm)
    assert np.array_equal(a.data, b.data)
