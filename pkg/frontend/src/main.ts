/**
 * Inspector console: upload a thermogram, probe temperatures by clicking,
 * segment, analyze, and inspect per-module histograms.
 */

import { ApiError, ThermoscanApi } from "./api.js";
import type { DefectReport, SegmentationSummary } from "./api.js";
import { renderHistogram } from "./histogram.js";
import { ViewState } from "./state.js";
import {
  canvasToImage,
  drawBoundary,
  drawDefects,
  fitViewport,
  inBounds,
  pan,
  zoomAt,
  type Viewport,
} from "./viewer.js";

const api = new ThermoscanApi(
  (document.querySelector<HTMLMetaElement>('meta[name="api-base"]')?.content ?? "") || "",
);

const state = new ViewState();
let viewport: Viewport = { zoom: 1, panX: 0, panY: 0 };
let visual: HTMLImageElement | null = null;
let report: DefectReport | null = null;

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const histCanvas = document.getElementById("hist") as HTMLCanvasElement;
const histCtx = histCanvas.getContext("2d")!;
const probeTable = document.getElementById("probes") as HTMLTableSectionElement;
const moduleList = document.getElementById("modules") as HTMLUListElement;
const banner = document.getElementById("banner") as HTMLDivElement;
const status = document.getElementById("status") as HTMLSpanElement;

function showBanner(message: string): void {
  banner.textContent = message;
  banner.style.display = "block";
}
banner.addEventListener("click", () => (banner.style.display = "none"));

function redraw(): void {
  ctx.fillStyle = "#1b1b1f";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  if (!visual) return;
  ctx.imageSmoothingEnabled = viewport.zoom < 1;
  ctx.drawImage(
    visual,
    viewport.panX,
    viewport.panY,
    visual.naturalWidth * viewport.zoom,
    visual.naturalHeight * viewport.zoom,
  );
  if (state.overlays.defects && report) {
    for (const m of report.modules) drawDefects(ctx, m.defect_pixels, viewport);
  }
  if (state.overlays.boundaries && state.segmentation) {
    for (const r of state.segmentation.regions) {
      const selected = r.label === state.selectedLabel;
      drawBoundary(ctx, r.boundary, viewport, {
        color: selected ? "#ffee00" : "#00d000",
        lineWidth: selected ? 2.5 : 1.5,
      });
    }
  }
}

function renderModules(seg: SegmentationSummary): void {
  moduleList.replaceChildren();
  for (const r of seg.regions) {
    const li = document.createElement("li");
    const verdict = report?.modules.find((m) => m.label === r.label)?.verdict;
    li.textContent = `module ${r.label} — ${r.pixel_count}px` +
      (r.touches_border ? " (border)" : "") + (verdict ? ` — ${verdict}` : "");
    li.className = r.label === state.selectedLabel ? "selected" : "";
    li.addEventListener("click", () => {
      state.selectModule(r.label);
      renderModules(seg);
      redraw();
      void refreshHistogram();
    });
    moduleList.appendChild(li);
  }
  if (seg.regions.length === 0) {
    const li = document.createElement("li");
    li.textContent = "no modules found in this scene";
    moduleList.appendChild(li);
  }
}

async function refreshHistogram(): Promise<void> {
  if (!state.thermogramId || state.selectedLabel === null || !report) return;
  const token = state.beginFetch();
  try {
    const payload = await api.moduleHistogram(state.thermogramId, state.selectedLabel);
    if (!state.isCurrent(token)) return; // a newer request superseded this one
    renderHistogram(histCtx, payload, {
      x: 0,
      y: 0,
      width: histCanvas.width,
      height: histCanvas.height,
    });
  } catch (err) {
    if (err instanceof ApiError) showBanner(`histogram: ${err.message}`);
  }
}

canvas.addEventListener("click", async (ev) => {
  if (!state.thermogramId || !visual) return;
  const rect = canvas.getBoundingClientRect();
  const pixel = canvasToImage(
    { x: ev.clientX - rect.left, y: ev.clientY - rect.top },
    viewport,
  );
  if (!inBounds(pixel, visual.naturalWidth, visual.naturalHeight)) {
    status.textContent = "outside image";
    setTimeout(() => (status.textContent = ""), 800);
    return; // out-of-image clicks ignored with a cue
  }
  try {
    const reading = await api.temperature(state.thermogramId, pixel.row, pixel.col);
    state.addProbe(reading);
    const tr = document.createElement("tr");
    tr.innerHTML = `<td>${reading.row}</td><td>${reading.col}</td><td>${reading.celsius.toFixed(2)}</td>`;
    probeTable.appendChild(tr);
  } catch (err) {
    if (err instanceof ApiError) showBanner(`probe: ${err.message}`);
  }
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const rect = canvas.getBoundingClientRect();
  viewport = zoomAt(
    viewport,
    { x: ev.clientX - rect.left, y: ev.clientY - rect.top },
    ev.deltaY < 0 ? 1.2 : 1 / 1.2,
  );
  redraw();
});

let dragging: { x: number; y: number } | null = null;
canvas.addEventListener("mousedown", (ev) => {
  if (ev.button === 1 || ev.shiftKey) dragging = { x: ev.clientX, y: ev.clientY };
});
window.addEventListener("mouseup", () => (dragging = null));
window.addEventListener("mousemove", (ev) => {
  if (!dragging) return;
  viewport = pan(viewport, ev.clientX - dragging.x, ev.clientY - dragging.y);
  dragging = { x: ev.clientX, y: ev.clientY };
  redraw();
});

(document.getElementById("file") as HTMLInputElement).addEventListener(
  "change",
  async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      const id = await api.upload(await file.arrayBuffer());
      state.setThermogram(id);
      report = null;
      probeTable.replaceChildren();
      moduleList.replaceChildren();
      visual = new Image();
      visual.onload = () => {
        viewport = fitViewport(
          visual!.naturalWidth,
          visual!.naturalHeight,
          canvas.width,
          canvas.height,
        );
        redraw();
      };
      visual.src = api.visualUrl(id);
      status.textContent = `loaded ${file.name}`;
    } catch (err) {
      if (err instanceof ApiError) showBanner(`upload: ${err.message}`);
    }
  },
);

(document.getElementById("segment") as HTMLButtonElement).addEventListener(
  "click",
  async () => {
    if (!state.thermogramId) return;
    try {
      const seg = await api.segment(state.thermogramId);
      state.setSegmentation(seg);
      renderModules(seg);
      redraw();
      status.textContent = `${seg.module_count} modules`;
    } catch (err) {
      if (err instanceof ApiError) {
        if (err.message.includes("NoModulesFound")) {
          state.setSegmentation({ module_count: 0, regions: [] });
          renderModules(state.segmentation!);
        } else {
          showBanner(`segment: ${err.status} ${err.message}`);
        }
      }
    }
  },
);

(document.getElementById("analyze") as HTMLButtonElement).addEventListener(
  "click",
  async () => {
    if (!state.thermogramId) return;
    try {
      report = await api.analyze(state.thermogramId);
      if (state.segmentation) renderModules(state.segmentation);
      redraw();
      void refreshHistogram();
      status.textContent = `${report.summary.suspect_modules} suspect module(s)`;
    } catch (err) {
      if (err instanceof ApiError) {
        showBanner(
          err.status === 409 ? "run segmentation first" : `analyze: ${err.message}`,
        );
      }
    }
  },
);

for (const name of ["boundaries", "defects"] as const) {
  const box = document.getElementById(`toggle-${name}`) as HTMLInputElement;
  box.addEventListener("change", () => {
    state.overlays[name] = box.checked;
    redraw();
  });
}

redraw();
