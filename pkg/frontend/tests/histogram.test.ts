import { describe, expect, it } from "vitest";

import type { HistogramPayload } from "../src/api.js";
import { layoutHistogram, temperatureToX, type Rect } from "../src/histogram.js";

const PLOT: Rect = { x: 10, y: 5, width: 300, height: 180 };

const PAYLOAD: HistogramPayload = {
  edges: [20, 22, 24, 26, 28],
  counts: [3, 10, 6, 1],
  n: 20,
  mean_c: 23.4,
  std_c: 1.7,
  threshold_c: 25.1,
};

describe("temperatureToX", () => {
  it("maps the edge span linearly onto the plot", () => {
    expect(temperatureToX(20, PAYLOAD, PLOT)).toBe(PLOT.x);
    expect(temperatureToX(28, PAYLOAD, PLOT)).toBe(PLOT.x + PLOT.width);
    expect(temperatureToX(24, PAYLOAD, PLOT)).toBeCloseTo(PLOT.x + PLOT.width / 2, 10);
  });

  it("clamps values outside the span", () => {
    expect(temperatureToX(-100, PAYLOAD, PLOT)).toBe(PLOT.x);
    expect(temperatureToX(1000, PAYLOAD, PLOT)).toBe(PLOT.x + PLOT.width);
  });
});

describe("layoutHistogram", () => {
  it("produces one bar per bin with counts straight from the payload", () => {
    const layout = layoutHistogram(PAYLOAD, PLOT);
    expect(layout.bars).toHaveLength(PAYLOAD.counts.length);
    expect(layout.bars.map((b) => b.count)).toEqual(PAYLOAD.counts);
    expect(layout.totalCount).toBe(PAYLOAD.n);
  });

  it("scales heights to the tallest bin", () => {
    const layout = layoutHistogram(PAYLOAD, PLOT);
    const peak = layout.bars[1];
    expect(peak.height).toBeCloseTo(PLOT.height, 10);
    expect(layout.bars[0].height).toBeCloseTo((3 / 10) * PLOT.height, 10);
    for (const bar of layout.bars) {
      expect(bar.y + bar.height).toBeCloseTo(PLOT.y + PLOT.height, 10);
    }
  });

  it("places the mean line (black) and mean+std line (red) from the payload", () => {
    const layout = layoutHistogram(PAYLOAD, PLOT);
    expect(layout.meanLine.color).toBe("black");
    expect(layout.meanLine.value).toBe(PAYLOAD.mean_c);
    expect(layout.meanLine.x).toBeCloseTo(temperatureToX(23.4, PAYLOAD, PLOT), 10);
    expect(layout.thresholdLine.color).toBe("red");
    expect(layout.thresholdLine.value).toBe(PAYLOAD.threshold_c);
    expect(layout.thresholdLine.x).toBeCloseTo(temperatureToX(25.1, PAYLOAD, PLOT), 10);
    expect(layout.thresholdLine.x).toBeGreaterThan(layout.meanLine.x);
  });

  it("handles a single-bin degenerate payload without NaN geometry", () => {
    const flat: HistogramPayload = {
      edges: [30, 30],
      counts: [5],
      n: 5,
      mean_c: 30,
      std_c: 0,
      threshold_c: 30,
    };
    const layout = layoutHistogram(flat, PLOT);
    expect(Number.isFinite(layout.bars[0].x)).toBe(true);
    expect(layout.meanLine.x).toBe(PLOT.x);
  });
});
