"""Disk-backed session store for uploaded thermograms and their artifacts.

Layout: one directory per thermogram id under the store root, holding the
raw TGRM bytes plus segmentation/analysis artifacts.  Everything needed to
answer API queries is persisted, so a service restart loses nothing.
State transitions per id (uploaded -> segmented -> analyzed) are
serialized with a per-id lock; artifacts are immutable once written.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from .analysis import DefectReport, analyze, report_from_json, report_to_dict
from .errors import ThermoscanError
from .imgproc.pngio import labels_to_png16, png16_to_labels
from .pipeline import (
    ModuleRegion,
    PipelineConfig,
    SegmentationResult,
    segment,
    segmentation_to_dict,
)
from .render import render_overlay
from .thermogram import Thermogram, load_thermogram


class UnknownThermogram(ThermoscanError):
    pass


class NotSegmented(ThermoscanError):
    pass


class NotAnalyzed(ThermoscanError):
    pass


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, tid: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(tid, threading.Lock())

    def _dir(self, tid: str) -> Path:
        d = self.root / tid
        if not d.is_dir():
            raise UnknownThermogram(tid)
        return d

    # --- ingestion -----------------------------------------------------------

    def add(self, tgrm_bytes: bytes) -> str:
        thermo = load_thermogram(tgrm_bytes)  # validate before persisting
        tid = uuid.uuid4().hex
        d = self.root / tid
        d.mkdir()
        (d / "thermogram.tgrm").write_bytes(tgrm_bytes)
        (d / "meta.json").write_text(json.dumps({"id": tid, "source_id": thermo.id}))
        return tid

    def ids(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if (p / "thermogram.tgrm").exists())

    def thermogram(self, tid: str) -> Thermogram:
        return load_thermogram((self._dir(tid) / "thermogram.tgrm").read_bytes())

    # --- segmentation --------------------------------------------------------

    def segment(self, tid: str, cfg: PipelineConfig | None = None) -> dict:
        """Run (or reuse) segmentation; idempotent for an identical config."""
        cfg = cfg or PipelineConfig()
        d = self._dir(tid)
        with self._lock(tid):
            cfg_path = d / "config.json"
            if cfg_path.exists() and cfg_path.read_text() == cfg.to_json():
                return json.loads((d / "regions.json").read_text())
            seg = segment(self.thermogram(tid), cfg)
            summary = segmentation_to_dict(seg)
            (d / "labels.png").write_bytes(labels_to_png16(seg.labels))
            (d / "mask.png").write_bytes(labels_to_png16(_mask_as_labels(seg)))
            (d / "regions.json").write_text(json.dumps(summary, sort_keys=True))
            (d / "overlay.png").write_bytes(render_overlay(self.thermogram(tid), seg))
            # Config is written last: its presence marks a complete segmentation.
            report_path = d / "report.json"
            if report_path.exists():
                report_path.unlink()  # stale analysis from a previous config
            cfg_path.write_text(cfg.to_json())
            return summary

    def segmentation(self, tid: str) -> SegmentationResult:
        d = self._dir(tid)
        if not (d / "config.json").exists():
            raise NotSegmented(tid)
        cfg = PipelineConfig.from_json((d / "config.json").read_text())
        labels = png16_to_labels((d / "labels.png").read_bytes())
        mask = png16_to_labels((d / "mask.png").read_bytes())
        summary = json.loads((d / "regions.json").read_text())
        from .imgproc import BinaryMask

        regions = tuple(
            ModuleRegion(
                label=r["label"],
                pixel_count=r["pixel_count"],
                bbox=tuple(r["bbox"]),
                boundary=tuple((p, q) for p, q in r["boundary"]),
                touches_border=r["touches_border"],
            )
            for r in summary["regions"]
        )
        return SegmentationResult(
            mask=BinaryMask(mask.data), labels=labels, regions=regions, config=cfg
        )

    def regions_summary(self, tid: str) -> dict:
        d = self._dir(tid)
        if not (d / "regions.json").exists() or not (d / "config.json").exists():
            raise NotSegmented(tid)
        return json.loads((d / "regions.json").read_text())

    # --- analysis ------------------------------------------------------------

    def analyze(self, tid: str, bins: int = 64, min_blob_size: int = 1) -> dict:
        d = self._dir(tid)
        with self._lock(tid):
            if not (d / "config.json").exists():
                raise NotSegmented(tid)
            thermo = self.thermogram(tid)
            seg = self.segmentation(tid)
            report = analyze(thermo, seg, bins=bins, min_blob_size=min_blob_size)
            doc = report_to_dict(report)
            (d / "report.json").write_text(json.dumps(doc, sort_keys=True))
            (d / "overlay.png").write_bytes(render_overlay(thermo, seg, report))
            return doc

    def report(self, tid: str) -> DefectReport:
        d = self._dir(tid)
        path = d / "report.json"
        if not path.exists():
            raise NotAnalyzed(tid)
        return report_from_json(path.read_text())

    def overlay_png(self, tid: str) -> bytes:
        d = self._dir(tid)
        path = d / "overlay.png"
        if not path.exists():
            raise NotSegmented(tid)
        return path.read_bytes()


def _mask_as_labels(seg: SegmentationResult):
    from .imgproc import LabelMap

    return LabelMap(seg.mask.data.astype("int32"), 1)
