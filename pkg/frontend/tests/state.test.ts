import { describe, expect, it } from "vitest";

import type { SegmentationSummary } from "../src/api.js";
import { ViewState } from "../src/state.js";

function seg(labels: number[]): SegmentationSummary {
  return {
    module_count: labels.length,
    regions: labels.map((label) => ({
      label,
      pixel_count: 100,
      bbox: [0, 0, 10, 10] as [number, number, number, number],
      touches_border: false,
      boundary: [],
    })),
  };
}

describe("probe history", () => {
  it("is append-only and ordered", () => {
    const st = new ViewState();
    st.setThermogram("abc");
    st.addProbe({ row: 1, col: 2, celsius: 25 });
    st.addProbe({ row: 3, col: 4, celsius: 26 });
    st.addProbe({ row: 1, col: 2, celsius: 25 }); // duplicates stay
    expect(st.probeHistory.map((p) => [p.row, p.col])).toEqual([
      [1, 2],
      [3, 4],
      [1, 2],
    ]);
  });

  it("resets when a new thermogram is loaded", () => {
    const st = new ViewState();
    st.setThermogram("abc");
    st.addProbe({ row: 0, col: 0, celsius: 20 });
    st.setThermogram("def");
    expect(st.probeHistory).toHaveLength(0);
    expect(st.segmentation).toBeNull();
    expect(st.selectedLabel).toBeNull();
  });
});

describe("module selection", () => {
  it("only allows labels present in the segmentation", () => {
    const st = new ViewState();
    st.setThermogram("abc");
    st.setSegmentation(seg([1, 2, 3]));
    st.selectModule(2);
    expect(st.selectedLabel).toBe(2);
    expect(st.selectedRegion?.label).toBe(2);
    expect(() => st.selectModule(9)).toThrow(/not in the current segmentation/);
    expect(st.selectedLabel).toBe(2);
  });

  it("drops the selection when a new run no longer has that label", () => {
    const st = new ViewState();
    st.setThermogram("abc");
    st.setSegmentation(seg([1, 2, 3]));
    st.selectModule(3);
    st.setSegmentation(seg([1, 2]));
    expect(st.selectedLabel).toBeNull();
    st.setSegmentation(seg([1, 2]));
    st.selectModule(1);
    st.setSegmentation(seg([1, 5]));
    expect(st.selectedLabel).toBe(1); // survives when still present
  });
});

describe("stale-response guard", () => {
  it("invalidates older tokens once a newer fetch begins", () => {
    const st = new ViewState();
    const first = st.beginFetch();
    expect(st.isCurrent(first)).toBe(true);
    const second = st.beginFetch();
    expect(st.isCurrent(first)).toBe(false);
    expect(st.isCurrent(second)).toBe(true);
  });
});
