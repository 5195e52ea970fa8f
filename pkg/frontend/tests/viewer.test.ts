import { describe, expect, it } from "vitest";

import {
  canvasToImage,
  fitViewport,
  imageToCanvas,
  inBounds,
  pan,
  zoomAt,
  type Viewport,
} from "../src/viewer.js";

const ZOOMS = [0.5, 1, 2, 3.7, 8];

describe("coordinate transforms", () => {
  it("round-trips image -> canvas -> image exactly", () => {
    for (const zoom of ZOOMS) {
      const vp: Viewport = { zoom, panX: 13.2, panY: -7.9 };
      for (const [row, col] of [[0, 0], [5, 3], [99, 41], [17, 200]]) {
        const back = canvasToImage(imageToCanvas({ row, col }, vp), vp);
        expect(back).toEqual({ row, col });
      }
    }
  });

  it("round-trips canvas -> image -> canvas within half a pixel-cell", () => {
    // the canvas position of the pixel center must be within zoom/2 of the
    // original click, i.e. within 0.5 image px at any zoom
    for (const zoom of ZOOMS) {
      const vp: Viewport = { zoom, panX: 4, panY: 9 };
      for (const p of [{ x: 100.3, y: 55.7 }, { x: 4, y: 9 }, { x: 321.9, y: 222.2 }]) {
        const center = imageToCanvas(canvasToImage(p, vp), vp);
        expect(Math.abs(center.x - p.x) / zoom).toBeLessThanOrEqual(0.5);
        expect(Math.abs(center.y - p.y) / zoom).toBeLessThanOrEqual(0.5);
      }
    }
  });

  it("maps a zoomed click on the same feature to the same pixel", () => {
    const base: Viewport = { zoom: 2, panX: 10, panY: 10 };
    const pixel = { row: 12, col: 30 };
    const clickAtBase = imageToCanvas(pixel, base);
    // zoom 2x about that very click point: the feature stays under the cursor
    const zoomed = zoomAt(base, clickAtBase, 2);
    expect(canvasToImage(clickAtBase, zoomed)).toEqual(pixel);
  });

  it("keeps the anchor fixed under zoomAt", () => {
    const vp: Viewport = { zoom: 1.5, panX: -20, panY: 35 };
    const anchor = { x: 250, y: 140 };
    const before = canvasToImage(anchor, vp);
    const after = canvasToImage(anchor, zoomAt(vp, anchor, 1.6));
    expect(after).toEqual(before);
  });

  it("pan shifts canvas coordinates, not image pixels", () => {
    const vp: Viewport = { zoom: 2, panX: 0, panY: 0 };
    const moved = pan(vp, 7, -3);
    const p = imageToCanvas({ row: 4, col: 4 }, moved);
    const q = imageToCanvas({ row: 4, col: 4 }, vp);
    expect(p.x - q.x).toBe(7);
    expect(p.y - q.y).toBe(-3);
  });
});

describe("bounds and fitting", () => {
  it("rejects out-of-image pixels", () => {
    expect(inBounds({ row: 0, col: 0 }, 10, 8)).toBe(true);
    expect(inBounds({ row: 7, col: 9 }, 10, 8)).toBe(true);
    expect(inBounds({ row: 8, col: 0 }, 10, 8)).toBe(false);
    expect(inBounds({ row: 0, col: 10 }, 10, 8)).toBe(false);
    expect(inBounds({ row: -1, col: 0 }, 10, 8)).toBe(false);
  });

  it("fits and centers the image", () => {
    const vp = fitViewport(100, 50, 400, 400);
    expect(vp.zoom).toBe(4);
    expect(vp.panX).toBe(0);
    expect(vp.panY).toBe((400 - 200) / 2);
  });
});
