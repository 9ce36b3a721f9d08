/** Thin client for the rendering service. The UI never computes geometry
 * itself: every image and metric comes from these endpoints. */

import type { RenderRequest } from "./state.js";

export interface DatasetSummary {
  id: string;
  name: string;
  n: number;
  d: number;
}

export interface ClusterInkEntry {
  count: number;
  clamped: number;
  unclamped: number;
  per_record_unclamped: number;
}

export interface MetricsReport {
  schema: string;
  analytic_area_stats: { min: number; max: number; mean: number; stddev: number };
  angle_histogram: number[];
  concentration_gini: number;
  data_ink_ratio: number;
  per_cluster_ink?: Record<string, ClusterInkEntry>;
  ink_ratio_matrix?: Record<string, Record<string, number>>;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async listDatasets(): Promise<DatasetSummary[]> {
    const resp = await this.fetchImpl(`${this.baseUrl}/datasets`);
    if (!resp.ok) throw new Error(`GET /datasets failed: ${resp.status}`);
    return resp.json();
  }

  async uploadDataset(csv: string | Blob): Promise<DatasetSummary> {
    const resp = await this.fetchImpl(`${this.baseUrl}/datasets`, {
      method: "POST",
      headers: { "Content-Type": "text/csv" },
      body: csv,
    });
    if (!resp.ok) {
      const detail = await resp.text();
      throw new Error(`upload failed (${resp.status}): ${detail}`);
    }
    return resp.json();
  }

  /** Returns the SVG document plus the server's config echo for state sync. */
  async render(req: RenderRequest): Promise<{ svg: string; configEcho: string | null }> {
    const resp = await this.fetchImpl(`${this.baseUrl}/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json", Accept: "image/svg+xml" },
      body: JSON.stringify(req),
    });
    if (!resp.ok) {
      const detail = await resp.text();
      throw new Error(`render failed (${resp.status}): ${detail}`);
    }
    return { svg: await resp.text(), configEcho: resp.headers.get("X-Config-Echo") };
  }

  async metrics(req: RenderRequest): Promise<MetricsReport> {
    const resp = await this.fetchImpl(`${this.baseUrl}/metrics`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    if (!resp.ok) {
      const detail = await resp.text();
      throw new Error(`metrics failed (${resp.status}): ${detail}`);
    }
    return resp.json();
  }

  pngUrl(): string {
    return `${this.baseUrl}/render`;
  }

  /** Fetch the current rendering as a PNG blob for download. */
  async renderPng(req: RenderRequest): Promise<Blob> {
    const resp = await this.fetchImpl(`${this.baseUrl}/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json", Accept: "image/png" },
      body: JSON.stringify(req),
    });
    if (!resp.ok) throw new Error(`render failed (${resp.status})`);
    return resp.blob();
  }
}
