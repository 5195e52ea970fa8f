/**
 * Typed client for the thermoscan inspection service.
 *
 * Every number the UI displays comes from these endpoints; nothing is
 * recomputed client-side.  Configuration is a single base URL.
 */

export interface TemperatureReading {
  row: number;
  col: number;
  celsius: number;
}

export interface RegionSummary {
  label: number;
  pixel_count: number;
  bbox: [number, number, number, number];
  touches_border: boolean;
  boundary: Array<[number, number]>;
}

export interface SegmentationSummary {
  module_count: number;
  regions: RegionSummary[];
  snapshots?: Record<string, string>;
}

export interface ModuleReport {
  label: number;
  n: number;
  mean_c: number;
  std_c: number;
  threshold_c: number;
  min_c: number;
  max_c: number;
  histogram: { edges: number[]; counts: number[] };
  defect_fraction: number;
  defect_pixels: Array<[number, number]>;
  verdict: "healthy" | "suspect";
}

export interface DefectReport {
  version: number;
  thermogram_id: string;
  modules: ModuleReport[];
  summary: Record<string, number>;
}

export interface HistogramPayload {
  edges: number[];
  counts: number[];
  n: number;
  mean_c: number;
  std_c: number;
  threshold_c: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function expectJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ThermoscanApi {
  constructor(private readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  async upload(tgrm: ArrayBuffer | Uint8Array): Promise<string> {
    const resp = await fetch(this.url("/thermograms"), {
      method: "POST",
      body: tgrm as BodyInit,
    });
    const body = await expectJson<{ id: string }>(resp);
    return body.id;
  }

  visualUrl(id: string): string {
    return this.url(`/thermograms/${id}/visual.png`);
  }

  overlayUrl(id: string): string {
    return this.url(`/thermograms/${id}/overlay.png`);
  }

  async temperature(id: string, row: number, col: number): Promise<TemperatureReading> {
    const resp = await fetch(
      this.url(`/thermograms/${id}/temperature?row=${row}&col=${col}`),
    );
    return expectJson<TemperatureReading>(resp);
  }

  async segment(id: string, config?: object): Promise<SegmentationSummary> {
    const resp = await fetch(this.url(`/thermograms/${id}/segment`), {
      method: "POST",
      body: config ? JSON.stringify(config) : undefined,
    });
    return expectJson<SegmentationSummary>(resp);
  }

  async modules(id: string): Promise<SegmentationSummary> {
    const resp = await fetch(this.url(`/thermograms/${id}/modules`));
    return expectJson<SegmentationSummary>(resp);
  }

  async analyze(
    id: string,
    opts?: { bins?: number; min_blob_size?: number },
  ): Promise<DefectReport> {
    const resp = await fetch(this.url(`/thermograms/${id}/analyze`), {
      method: "POST",
      body: opts ? JSON.stringify(opts) : undefined,
    });
    return expectJson<DefectReport>(resp);
  }

  async moduleHistogram(id: string, label: number): Promise<HistogramPayload> {
    const resp = await fetch(this.url(`/thermograms/${id}/modules/${label}/histogram`));
    return expectJson<HistogramPayload>(resp);
  }
}
