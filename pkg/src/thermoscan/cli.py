"""Command-line entry points: synth, segment, analyze, serve.

Exit codes: 0 success, 2 no modules found in the scene, 1 any other
error (one-line diagnostic naming the exception class on stderr).
Artifacts are deterministic: identical inputs and config produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import analyze, report_to_dict
from .errors import NoModulesFound, ThermoscanError
from .imgproc.pngio import labels_to_png16
from .pipeline import PipelineConfig, segment, segmentation_to_dict
from .render import render_overlay
from .thermogram import (
    generate_synthetic,
    load_thermogram,
    save_thermogram,
    synthetic_spec_from_json,
)


def _load_config(path: str | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    return PipelineConfig.from_json(Path(path).read_text())


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def cmd_synth(args: argparse.Namespace) -> int:
    spec = synthetic_spec_from_json(json.loads(Path(args.spec).read_text()))
    thermo, labels, defects = generate_synthetic(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "synthetic.tgrm").write_bytes(save_thermogram(thermo))
    (out / "truth_labels.png").write_bytes(labels_to_png16(labels))
    from .imgproc import LabelMap

    defect_lm = LabelMap(defects.data.astype("int32"), 1)
    (out / "truth_defects.png").write_bytes(labels_to_png16(defect_lm))
    print(out / "synthetic.tgrm")
    return 0


def cmd_segment(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    thermo = load_thermogram(Path(args.input).read_bytes())
    seg = segment(thermo, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "labels.png").write_bytes(labels_to_png16(seg.labels))
    (out / "overlay.png").write_bytes(render_overlay(thermo, seg))
    _write_json(out / "regions.json", segmentation_to_dict(seg))
    print(f"{len(seg.regions)} modules -> {out}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    thermo = load_thermogram(Path(args.input).read_bytes())
    seg = segment(thermo, cfg)
    report = analyze(thermo, seg, bins=args.bins, min_blob_size=args.min_blob_size)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "labels.png").write_bytes(labels_to_png16(seg.labels))
    _write_json(out / "regions.json", segmentation_to_dict(seg))
    _write_json(out / "report.json", report_to_dict(report))
    (out / "overlay.png").write_bytes(render_overlay(thermo, seg, report))
    suspects = report.summary["suspect_modules"]
    print(f"{len(report.modules)} modules, {suspects} suspect -> {out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app
    from .store import SessionStore

    store_dir = args.store or os.environ.get("THERMOSCAN_STORE")
    if not store_dir:
        raise ThermoscanError("no store directory: pass --store or set THERMOSCAN_STORE")
    host, _, port = args.bind.rpartition(":")
    app = create_app(SessionStore(store_dir))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thermoscan")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="render a synthetic thermogram with ground truth")
    sp.add_argument("spec", help="synthetic scene spec (JSON)")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(fn=cmd_synth)

    sp = sub.add_parser("segment", help="segment modules in a TGRM file")
    sp.add_argument("input", help="input .tgrm file")
    sp.add_argument("--config", help="pipeline config JSON")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(fn=cmd_segment)

    sp = sub.add_parser("analyze", help="segment then detect hot spots")
    sp.add_argument("input", help="input .tgrm file")
    sp.add_argument("--config", help="pipeline config JSON")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--bins", type=int, default=64, help="histogram bins per module")
    sp.add_argument("--min-blob-size", type=int, default=1,
                    help="discard defect blobs smaller than this many pixels")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("serve", help="run the HTTP inspection service")
    sp.add_argument("--bind", default="127.0.0.1:8321", help="host:port to listen on")
    sp.add_argument("--store", help="store directory (default: $THERMOSCAN_STORE)")
    sp.set_defaults(fn=cmd_serve)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NoModulesFound as exc:
        print(f"NoModulesFound: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
