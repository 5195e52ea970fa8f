/**
 * Histogram panel model and canvas rendering.
 *
 * The geometry is computed by pure functions (testable headlessly); the
 * vertical marker lines follow the service payload exactly: mean in
 * black, mean + std in red.
 */

import type { HistogramPayload } from "./api.js";

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Bar {
  x: number;
  y: number;
  width: number;
  height: number;
  count: number;
}

export interface MarkerLine {
  x: number;
  value: number;
  color: "black" | "red";
}

export interface HistogramLayout {
  bars: Bar[];
  meanLine: MarkerLine;
  thresholdLine: MarkerLine;
  totalCount: number;
}

/** Map a temperature to an x position across the histogram's edge span. */
export function temperatureToX(value: number, payload: HistogramPayload, plot: Rect): number {
  const lo = payload.edges[0];
  const hi = payload.edges[payload.edges.length - 1];
  const span = hi > lo ? hi - lo : 1;
  const t = Math.min(1, Math.max(0, (value - lo) / span));
  return plot.x + t * plot.width;
}

export function layoutHistogram(payload: HistogramPayload, plot: Rect): HistogramLayout {
  const peak = Math.max(1, ...payload.counts);
  const bars: Bar[] = payload.counts.map((count, i) => {
    const x0 = temperatureToX(payload.edges[i], payload, plot);
    const x1 = temperatureToX(payload.edges[i + 1], payload, plot);
    const h = (count / peak) * plot.height;
    return { x: x0, y: plot.y + plot.height - h, width: x1 - x0, height: h, count };
  });
  return {
    bars,
    meanLine: { x: temperatureToX(payload.mean_c, payload, plot), value: payload.mean_c, color: "black" },
    thresholdLine: {
      x: temperatureToX(payload.threshold_c, payload, plot),
      value: payload.threshold_c,
      color: "red",
    },
    totalCount: bars.reduce((acc, b) => acc + b.count, 0),
  };
}

export function renderHistogram(
  ctx: CanvasRenderingContext2D,
  payload: HistogramPayload,
  plot: Rect,
): HistogramLayout {
  const layout = layoutHistogram(payload, plot);
  ctx.save();
  ctx.clearRect(plot.x, plot.y, plot.width, plot.height);
  ctx.fillStyle = "#6b8cae";
  for (const bar of layout.bars) {
    ctx.fillRect(bar.x, bar.y, Math.max(1, bar.width - 0.5), bar.height);
  }
  for (const line of [layout.meanLine, layout.thresholdLine]) {
    ctx.strokeStyle = line.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.moveTo(line.x, plot.y);
    ctx.lineTo(line.x, plot.y + plot.height);
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  ctx.font = "11px sans-serif";
  ctx.fillText(
    `n=${payload.n}  mean=${payload.mean_c.toFixed(2)}  mean+std=${payload.threshold_c.toFixed(2)}`,
    plot.x + 4,
    plot.y + 12,
  );
  ctx.restore();
  return layout;
}
