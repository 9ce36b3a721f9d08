/** Pure view-model for the metrics panel: what to show for a report. */

import type { MetricsReport } from "./api.js";

export interface MetricsPanelModel {
  /** shown when every segment has the same area (stddev ~ 0) */
  equalAreaBadge: boolean;
  gini: number;
  dataInkRatio: number;
  angleHistogram: number[];
  /** rows [clusterId, perRecordInk, ratioToFirst]; null when unlabelled */
  clusterTable: Array<[string, number, number]> | null;
}

const EQUAL_AREA_REL_TOL = 1e-9;

export function buildMetricsPanel(report: MetricsReport): MetricsPanelModel {
  const stats = report.analytic_area_stats;
  const equalAreaBadge = stats.stddev <= EQUAL_AREA_REL_TOL * stats.mean;

  let clusterTable: Array<[string, number, number]> | null = null;
  if (report.per_cluster_ink) {
    const ids = Object.keys(report.per_cluster_ink).sort(
      (a, b) => Number(a) - Number(b),
    );
    const first = report.per_cluster_ink[ids[0]].per_record_unclamped;
    clusterTable = ids.map((id) => {
      const ink = report.per_cluster_ink![id].per_record_unclamped;
      return [id, ink, first > 0 ? ink / first : NaN];
    });
  }

  return {
    equalAreaBadge,
    gini: report.concentration_gini,
    dataInkRatio: report.data_ink_ratio,
    angleHistogram: report.angle_histogram,
    clusterTable,
  };
}
