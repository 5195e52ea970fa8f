/**
 * View state: probe history, overlay toggles, module selection, and a
 * sequence guard that discards stale fetch responses.
 */

import type { RegionSummary, SegmentationSummary } from "./api.js";

export interface ProbeRow {
  row: number;
  col: number;
  celsius: number;
}

export interface OverlayToggles {
  boundaries: boolean;
  defects: boolean;
  labels: boolean;
}

export class ViewState {
  thermogramId: string | null = null;
  segmentation: SegmentationSummary | null = null;
  selectedLabel: number | null = null;
  overlays: OverlayToggles = { boundaries: true, defects: true, labels: false };

  private probes: ProbeRow[] = [];
  private seq = 0;

  /** Probe history is append-only within a session. */
  addProbe(row: ProbeRow): void {
    this.probes.push(row);
  }

  get probeHistory(): readonly ProbeRow[] {
    return this.probes;
  }

  setThermogram(id: string): void {
    this.thermogramId = id;
    this.segmentation = null;
    this.selectedLabel = null;
    this.probes = [];
  }

  setSegmentation(seg: SegmentationSummary): void {
    this.segmentation = seg;
    if (
      this.selectedLabel !== null &&
      !seg.regions.some((r) => r.label === this.selectedLabel)
    ) {
      this.selectedLabel = null; // selection must exist in the latest run
    }
  }

  selectModule(label: number): void {
    if (!this.segmentation?.regions.some((r) => r.label === label)) {
      throw new Error(`module ${label} not in the current segmentation`);
    }
    this.selectedLabel = label;
  }

  get selectedRegion(): RegionSummary | null {
    if (this.selectedLabel === null || !this.segmentation) return null;
    return this.segmentation.regions.find((r) => r.label === this.selectedLabel) ?? null;
  }

  /**
   * Start a fetch: returns a token; `isCurrent` is false once any newer
   * fetch has started, so late responses are dropped instead of rendered.
   */
  beginFetch(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}
