/**
 * Canvas viewport math and rendering for the image panel.
 *
 * The viewport is defined by a zoom factor (canvas pixels per image
 * pixel) and a pan offset in canvas pixels.  All coordinate conversions
 * live here so they can be unit-tested without a DOM.
 */

export interface Viewport {
  zoom: number; // canvas px per image px, > 0
  panX: number; // canvas x of image column 0
  panY: number; // canvas y of image row 0
}

export interface ImagePoint {
  row: number;
  col: number;
}

export interface CanvasPoint {
  x: number;
  y: number;
}

/** Canvas position of the center of an image pixel. */
export function imageToCanvas(p: ImagePoint, vp: Viewport): CanvasPoint {
  return {
    x: vp.panX + (p.col + 0.5) * vp.zoom,
    y: vp.panY + (p.row + 0.5) * vp.zoom,
  };
}

/** Image pixel under a canvas position (floor to the containing pixel). */
export function canvasToImage(p: CanvasPoint, vp: Viewport): ImagePoint {
  return {
    col: Math.floor((p.x - vp.panX) / vp.zoom),
    row: Math.floor((p.y - vp.panY) / vp.zoom),
  };
}

export function inBounds(p: ImagePoint, width: number, height: number): boolean {
  return p.row >= 0 && p.col >= 0 && p.row < height && p.col < width;
}

/** Zoom about a canvas anchor so the image point under it stays put. */
export function zoomAt(vp: Viewport, anchor: CanvasPoint, factor: number): Viewport {
  const zoom = Math.min(64, Math.max(0.125, vp.zoom * factor));
  const scale = zoom / vp.zoom;
  return {
    zoom,
    panX: anchor.x - (anchor.x - vp.panX) * scale,
    panY: anchor.y - (anchor.y - vp.panY) * scale,
  };
}

export function pan(vp: Viewport, dx: number, dy: number): Viewport {
  return { ...vp, panX: vp.panX + dx, panY: vp.panY + dy };
}

/** Fit an image into a canvas, centered, at an integer-friendly zoom. */
export function fitViewport(
  imgWidth: number,
  imgHeight: number,
  canvasWidth: number,
  canvasHeight: number,
): Viewport {
  const zoom = Math.min(canvasWidth / imgWidth, canvasHeight / imgHeight);
  return {
    zoom,
    panX: (canvasWidth - imgWidth * zoom) / 2,
    panY: (canvasHeight - imgHeight * zoom) / 2,
  };
}

export interface BoundaryStyle {
  color: string;
  lineWidth: number;
}

/**
 * Draw a region boundary polyline (image (row, col) pairs) onto a 2d
 * context already transformed to canvas space.
 */
export function drawBoundary(
  ctx: CanvasRenderingContext2D,
  boundary: Array<[number, number]>,
  vp: Viewport,
  style: BoundaryStyle,
): void {
  if (boundary.length === 0) return;
  ctx.save();
  ctx.strokeStyle = style.color;
  ctx.lineWidth = style.lineWidth;
  ctx.beginPath();
  const first = imageToCanvas({ row: boundary[0][0], col: boundary[0][1] }, vp);
  ctx.moveTo(first.x, first.y);
  for (let i = 1; i < boundary.length; i++) {
    const p = imageToCanvas({ row: boundary[i][0], col: boundary[i][1] }, vp);
    ctx.lineTo(p.x, p.y);
  }
  ctx.stroke();
  ctx.restore();
}

/** Paint defect pixels as filled red squares aligned to the image grid. */
export function drawDefects(
  ctx: CanvasRenderingContext2D,
  pixels: Array<[number, number]>,
  vp: Viewport,
  color = "rgba(255, 0, 0, 0.6)",
): void {
  ctx.save();
  ctx.fillStyle = color;
  for (const [row, col] of pixels) {
    ctx.fillRect(vp.panX + col * vp.zoom, vp.panY + row * vp.zoom, vp.zoom, vp.zoom);
  }
  ctx.restore();
}
