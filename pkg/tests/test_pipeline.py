"""End-to-end segmentation pipeline, marker construction, boundary tracing."""

import numpy as np
import pytest

from thermoscan.errors import InvalidParameter, LabelNotFound, NoModulesFound
from thermoscan.imgproc import BinaryMask, LabelMap, distance_transform
from thermoscan.pipeline import (
    ModuleRegion,
    PipelineConfig,
    build_markers,
    segment,
    segmentation_to_dict,
    trace_boundary,
)
from thermoscan.thermogram import SyntheticSpec, crop_thermogram, generate_synthetic


def _iou(a: np.ndarray, b: np.ndarray) -> float:
    inter = np.logical_and(a, b).sum()
    union = np.logical_or(a, b).sum()
    return inter / union if union else 1.0


def _match_iou(labels: np.ndarray, truth: np.ndarray, truth_label: int) -> float:
    """IoU of a ground-truth module against its best-overlapping region."""
    gt = truth == truth_label
    overlapping = np.bincount(labels[gt])
    overlapping[0] = 0
    if overlapping.max(initial=0) == 0:
        return 0.0
    return _iou(labels == overlapping.argmax(), gt)


class TestConfig:
    def test_defaults_valid(self):
        PipelineConfig()

    @pytest.mark.parametrize(
        "kw",
        [
            {"dhe_smoothing_window": 4},
            {"clahe_clip_limit": 0.0},
            {"gaussian_sigma": -1.0},
            {"structuring_element_size": 4},
            {"marker_foreground_fraction": 1.5},
            {"connectivity": 5},
            {"min_module_area_fraction": 1.0},
        ],
    )
    def test_invalid_values_rejected(self, kw):
        with pytest.raises(InvalidParameter):
            PipelineConfig(**kw)

    def test_json_round_trip(self):
        cfg = PipelineConfig(gaussian_sigma=2.0, clahe_tiles_x=4)
        assert PipelineConfig.from_json(cfg.to_json()) == cfg

    def test_unknown_keys_rejected(self):
        with pytest.raises(InvalidParameter):
            PipelineConfig.from_json('{"bogus": 1}')


class TestSegment:
    def test_clean_grid_six_modules(self):
        t, truth, _ = generate_synthetic(SyntheticSpec(rows=2, cols=3))
        seg = segment(t)
        assert len(seg.regions) == 6
        for lbl in range(1, 7):
            assert _match_iou(seg.labels.data, truth.data, lbl) >= 0.90

    def test_empty_scene_raises(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=0, cols=0, gap=30))
        with pytest.raises(NoModulesFound):
            segment(t)

    def test_half_cropped_module_flagged(self):
        spec = SyntheticSpec(rows=1, cols=2, module_size=40, gap=10)
        t, truth, _ = generate_synthetic(spec)
        # crop through the middle of the second module
        t2 = crop_thermogram(t, 0, t.height, 0, 10 + 40 + 10 + 20)
        seg = segment(t2)
        assert len(seg.regions) == 2
        flags = sorted((r.bbox[1], r.touches_border) for r in seg.regions)
        assert flags[0][1] is False
        assert flags[1][1] is True

    def test_deterministic(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=1, cols=2, noise_std=0.4, seed=3))
        a = segment(t)
        b = segment(t)
        assert np.array_equal(a.labels.data, b.labels.data)
        assert a.regions == b.regions

    def test_mask_consistency(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=2, cols=2, noise_std=0.3, seed=5))
        seg = segment(t)
        assert (seg.mask.data[seg.labels.data > 0] == 1).all()

    def test_labels_consecutive_from_one(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=2, cols=3))
        seg = segment(t)
        present = np.unique(seg.labels.data)
        assert np.array_equal(present, np.arange(0, len(seg.regions) + 1))

    def test_min_area_law(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=2, cols=3))
        seg = segment(t)
        min_area = seg.config.min_module_area_fraction * t.height * t.width
        assert all(r.pixel_count >= min_area for r in seg.regions)

    def test_monotone_cropping(self):
        spec = SyntheticSpec(rows=1, cols=2, module_size=40, gap=12)
        t, _, _ = generate_synthetic(spec)
        seg = segment(t)
        # window fully containing the first module
        window = (0, t.height, 0, 12 + 40 + 6)
        t2 = crop_thermogram(t, *window)
        seg2 = segment(t2)
        orig = (seg.labels.data == 1)[window[0]:window[1], window[2]:window[3]]
        best = max(
            (_iou(seg2.labels.data == r.label, orig) for r in seg2.regions), default=0.0
        )
        assert best >= 0.9

    def test_snapshots_optional(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=1, cols=1))
        assert segment(t).snapshots is None
        snaps = segment(t, keep_snapshots=True).snapshots
        assert {"gray", "binary", "opened", "distance", "markers", "labels"} <= set(snaps)

    def test_summary_dict_shape(self):
        t, _, _ = generate_synthetic(SyntheticSpec(rows=1, cols=2))
        doc = segmentation_to_dict(segment(t))
        assert doc["module_count"] == 2
        assert all({"label", "pixel_count", "bbox", "boundary", "touches_border"}
                   <= set(r) for r in doc["regions"])


class TestBuildMarkers:
    def test_two_separated_squares(self):
        data = np.zeros((20, 40), dtype=np.uint8)
        data[5:15, 3:13] = 1
        data[5:15, 27:37] = 1
        markers = build_markers(BinaryMask(data))
        assert markers.label_count == 2
        assert markers.data[10, 8] >= 1 or markers.data[9, 7] >= 1  # one per square
        assert set(np.unique(markers.data[:, 13:27])) == {0}

    def test_single_square_marker_at_distance_peak(self):
        data = np.zeros((20, 20), dtype=np.uint8)
        data[4:16, 4:16] = 1
        b = BinaryMask(data)
        markers = build_markers(b)
        assert markers.label_count == 1
        dist = distance_transform(b)
        assert markers.data[np.unravel_index(dist.argmax(), dist.shape)] == 1

    def test_bridged_squares_give_two_markers(self):
        # a 1-px bridge survives nothing: per-component thresholding at 0.5x
        # the distance peak still splits the two lobes into two markers
        data = np.zeros((20, 40), dtype=np.uint8)
        data[5:15, 3:13] = 1
        data[5:15, 27:37] = 1
        data[10, 13:27] = 1  # bridge
        markers = build_markers(BinaryMask(data))
        assert markers.label_count == 2
        # oracle: distance on the bridge is at most 1, threshold is 0.5 * 5
        dist = distance_transform(BinaryMask(data))
        assert dist[10, 20] <= 1.0
        assert 0.5 * dist.max() > 1.0

    def test_empty_mask_has_no_markers(self):
        markers = build_markers(BinaryMask(np.zeros((8, 8), dtype=np.uint8)))
        assert markers.label_count == 0


class TestTraceBoundary:
    def test_single_pixel_region(self):
        data = np.zeros((3, 3), dtype=np.int32)
        data[1, 1] = 1
        assert trace_boundary(LabelMap(data, 1), 1) == ((1, 1),)

    def test_missing_label(self):
        with pytest.raises(LabelNotFound):
            trace_boundary(LabelMap(np.zeros((3, 3), dtype=np.int32), 0), 1)

    def test_3x3_square_clockwise(self):
        data = np.zeros((5, 5), dtype=np.int32)
        data[1:4, 1:4] = 1
        contour = trace_boundary(LabelMap(data, 1), 1)
        assert contour[0] == (1, 1)
        assert contour[0] == contour[-1]
        perimeter = {(1, 1), (1, 2), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1)}
        assert set(contour) == perimeter
        # clockwise in image coordinates: (1,1) -> (1,2) first
        assert contour[1] == (1, 2)

    def test_blob_boundary_pixels_touch_outside(self):
        rng = np.random.default_rng(0)
        blob = np.zeros((16, 16), dtype=np.uint8)
        blob[4:12, 4:12] = 1
        blob[6:10, 2:4] = 1  # protrusion
        lm = LabelMap(blob.astype(np.int32), 1)
        contour = trace_boundary(lm, 1)
        padded = np.zeros((18, 18), dtype=np.uint8)
        padded[1:-1, 1:-1] = blob
        for r, c in contour:
            neigh = padded[r:r + 3, c:c + 3]
            assert (neigh == 0).any(), f"({r},{c}) is interior"
