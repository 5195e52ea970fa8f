"""HTTP inspection service.

JSON API over a SessionStore; all state lives on disk so a restart
preserves every uploaded thermogram and completed analysis.

    POST /thermograms                          upload TGRM body -> 201 {id}
    GET  /thermograms/{id}/visual.png
    GET  /thermograms/{id}/temperature?row=&col=   -> {celsius}
    POST /thermograms/{id}/segment             optional config JSON -> summary
    GET  /thermograms/{id}/modules             regions incl. boundaries
    GET  /thermograms/{id}/labels.png          16-bit label map
    GET  /thermograms/{id}/overlay.png         boundaries + defects
    POST /thermograms/{id}/analyze             optional {bins, min_blob_size}
    GET  /thermograms/{id}/modules/{label}/histogram

400 malformed input, 404 unknown id/label/coordinates, 409 analysis or
module queries before segmentation, 422 invalid pipeline config.
"""

from __future__ import annotations

import io

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pathlib import Path

from .analysis import query_temperature
from .errors import FormatError, InvalidParameter, NoModulesFound, OutOfBounds
from .pipeline import PipelineConfig
from .store import NotAnalyzed, NotSegmented, SessionStore, UnknownThermogram
from .thermogram import Thermogram

_FRONTEND_DIR = Path(__file__).resolve().parents[2] / "frontend" / "dist"


def _visual_png(t: Thermogram) -> bytes:
    from PIL import Image

    arr = t.visual.to_uint8()
    buf = io.BytesIO()
    Image.fromarray(arr, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def create_app(store: SessionStore) -> FastAPI:
    app = FastAPI(title="thermoscan", docs_url=None, redoc_url=None)

    @app.exception_handler(UnknownThermogram)
    async def _unknown(_req, exc):
        return JSONResponse({"error": f"unknown thermogram: {exc}"}, status_code=404)

    @app.exception_handler(NotSegmented)
    async def _not_segmented(_req, exc):
        return JSONResponse({"error": "segment first"}, status_code=409)

    @app.exception_handler(NotAnalyzed)
    async def _not_analyzed(_req, exc):
        return JSONResponse({"error": "analyze first"}, status_code=409)

    @app.post("/thermograms", status_code=201)
    async def upload(request: Request):
        body = await request.body()
        try:
            tid = store.add(body)
        except FormatError as exc:
            return JSONResponse(
                {"error": f"{type(exc).__name__}: {exc}"}, status_code=400
            )
        return {"id": tid}

    @app.get("/thermograms/{tid}/visual.png")
    def visual(tid: str):
        return Response(_visual_png(store.thermogram(tid)), media_type="image/png")

    @app.get("/thermograms/{tid}/temperature")
    def temperature(tid: str, row: int, col: int):
        try:
            celsius = query_temperature(store.thermogram(tid), row, col)
        except OutOfBounds as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return {"row": row, "col": col, "celsius": celsius}

    @app.post("/thermograms/{tid}/segment")
    async def do_segment(tid: str, request: Request):
        body = await request.body()
        cfg = None
        if body:
            try:
                cfg = PipelineConfig.from_json(body.decode("utf-8"))
            except (InvalidParameter, ValueError, UnicodeDecodeError) as exc:
                return JSONResponse({"error": str(exc)}, status_code=422)
        try:
            summary = store.segment(tid, cfg)
        except NoModulesFound as exc:
            return JSONResponse(
                {"error": f"NoModulesFound: {exc}"}, status_code=422
            )
        summary = dict(summary)
        summary["snapshots"] = {
            "visual": f"/thermograms/{tid}/visual.png",
            "labels": f"/thermograms/{tid}/labels.png",
            "overlay": f"/thermograms/{tid}/overlay.png",
        }
        return summary

    @app.get("/thermograms/{tid}/modules")
    def modules(tid: str):
        return store.regions_summary(tid)

    @app.get("/thermograms/{tid}/labels.png")
    def labels_png(tid: str):
        d = store._dir(tid)
        path = d / "labels.png"
        if not path.exists():
            raise NotSegmented(tid)
        return Response(path.read_bytes(), media_type="image/png")

    @app.get("/thermograms/{tid}/overlay.png")
    def overlay(tid: str):
        return Response(store.overlay_png(tid), media_type="image/png")

    @app.post("/thermograms/{tid}/analyze")
    async def do_analyze(tid: str, request: Request):
        body = await request.body()
        bins, min_blob_size = 64, 1
        if body:
            import json as _json

            try:
                opts = _json.loads(body)
                bins = int(opts.get("bins", 64))
                min_blob_size = int(opts.get("min_blob_size", 1))
            except (ValueError, AttributeError) as exc:
                return JSONResponse({"error": str(exc)}, status_code=422)
        if bins < 2 or min_blob_size < 1:
            return JSONResponse({"error": "bins >= 2, min_blob_size >= 1"}, status_code=422)
        return store.analyze(tid, bins=bins, min_blob_size=min_blob_size)

    @app.get("/thermograms/{tid}/modules/{label}/histogram")
    def histogram(tid: str, label: int):
        report = store.report(tid)
        for m in report.modules:
            if m.label == label:
                return {
                    "edges": list(m.stats.hist_edges),
                    "counts": list(m.stats.hist_counts),
                    "n": m.stats.n,
                    "mean_c": m.stats.mean_c,
                    "std_c": m.stats.std_c,
                    "threshold_c": m.stats.threshold_c,
                }
        return JSONResponse({"error": f"no module labeled {label}"}, status_code=404)

    if _FRONTEND_DIR.is_dir():
        app.mount("/", StaticFiles(directory=_FRONTEND_DIR, html=True), name="ui")

    return app
