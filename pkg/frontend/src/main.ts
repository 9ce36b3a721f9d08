/** DOM wiring for the tuning UI: dataset selection, parameter controls,
 * side-by-side comparison panes and the live metrics panel. */

import { ApiClient, type DatasetSummary } from "./api.js";
import { PaneController, type PaneView } from "./controller.js";
import { debounce } from "./debounce.js";
import { buildMetricsPanel } from "./metricsPanel.js";
import {
  P_SLIDER_MAX,
  P_SLIDER_MIN,
  P_SLIDER_STEP,
  decodeState,
  encodeState,
  pOutOfRange,
  toRenderRequest,
  type UiState,
} from "./state.js";

const api = new ApiClient("");
let state: UiState = decodeState(window.location.search.slice(1));
let datasets: DatasetSummary[] = [];
let dimensionCount = 0;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function paneView(id: string): PaneView {
  return {
    showSvg(svg: string) {
      const pane = el<HTMLDivElement>(id);
      pane.innerHTML = svg;
      pane.classList.remove("error");
    },
    showError(message: string) {
      const pane = el<HTMLDivElement>(id);
      pane.textContent = `render failed: ${message}`;
      pane.classList.add("error");
    },
  };
}

const leftPane = new PaneController(api, paneView("pane-left"), 0);
const rightPane = new PaneController(api, paneView("pane-right"));
const singlePane = new PaneController(api, paneView("pane-single"));

const refreshMetrics = debounce(async () => {
  try {
    const report = await api.metrics(toRenderRequest(state));
    const model = buildMetricsPanel(report);
    el("badge-equal-area").hidden = !model.equalAreaBadge;
    el("metric-gini").textContent = model.gini.toFixed(4);
    el("metric-ink-ratio").textContent = model.dataInkRatio.toFixed(4);
    renderHistogram(model.angleHistogram);
    renderClusterTable(model.clusterTable);
  } catch {
    el("metric-gini").textContent = "–";
  }
}, 300);

function renderHistogram(bins: number[]): void {
  const host = el<HTMLDivElement>("angle-histogram");
  const peak = Math.max(...bins, 1);
  host.innerHTML = bins
    .map((count, i) => {
      const height = Math.round((count / peak) * 40);
      return `<div class="bar" title="${i * 5}–${i * 5 + 5}°: ${count}" style="height:${height}px"></div>`;
    })
    .join("");
}

function renderClusterTable(rows: Array<[string, number, number]> | null): void {
  const host = el<HTMLTableElement>("cluster-table");
  host.hidden = rows === null;
  if (rows === null) return;
  const body = rows
    .map(
      ([id, ink, ratio]) =>
        `<tr><td>${id}</td><td>${ink.toFixed(1)}</td><td>${ratio.toFixed(3)}</td></tr>`,
    )
    .join("");
  host.innerHTML =
    "<tr><th>cluster</th><th>ink / record</th><th>ratio</th></tr>" + body;
}

function syncControls(): void {
  el<HTMLInputElement>("p-slider").value = String(
    Math.min(Math.max(state.p, P_SLIDER_MIN), P_SLIDER_MAX),
  );
  el<HTMLInputElement>("p-entry").value = String(state.p);
  el("badge-p-range").hidden = !pOutOfRange(state.p);
  el<HTMLInputElement>("h-entry").value = String(state.h);
  el<HTMLSelectElement>("compare-mode").value = state.compareMode;
  el("compare-panes").hidden = state.compareMode !== "side-by-side";
  el("pane-single").hidden = state.compareMode !== "single";
  const select = el<HTMLSelectElement>("dataset-select");
  if (select.value !== state.datasetId) select.value = state.datasetId;
  renderAxisControls();
}

function renderAxisControls(): void {
  const host = el<HTMLDivElement>("axis-controls");
  const order = state.axisOrder ?? [...Array(dimensionCount).keys()];
  host.innerHTML = "";
  order.forEach((axis, position) => {
    const row = document.createElement("div");
    row.className = "axis-row";
    row.draggable = true;
    row.dataset.position = String(position);
    row.innerHTML = `<span class="grip">⋮⋮</span> axis ${axis + 1}
      <label><input type="checkbox" ${state.flips.includes(axis) ? "checked" : ""}> flip</label>`;
    row.querySelector("input")!.addEventListener("change", () => {
      state.flips = state.flips.includes(axis)
        ? state.flips.filter((f) => f !== axis)
        : [...state.flips, axis].sort((a, b) => a - b);
      apply();
    });
    row.addEventListener("dragstart", (ev) => {
      ev.dataTransfer?.setData("text/plain", String(position));
    });
    row.addEventListener("dragover", (ev) => ev.preventDefault());
    row.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const from = Number(ev.dataTransfer?.getData("text/plain"));
      const next = [...order];
      const [moved] = next.splice(from, 1);
      next.splice(position, 0, moved);
      state.axisOrder = next;
      apply();
    });
    host.appendChild(row);
  });
}

/** Push state to the URL and schedule pane + metrics refreshes. */
function apply(): void {
  history.replaceState(null, "", `?${encodeState(state)}`);
  syncControls();
  if (state.compareMode === "side-by-side") {
    leftPane.update(state);
    rightPane.update(state);
  } else {
    singlePane.update(state);
  }
  refreshMetrics();
}

async function populateDatasets(): Promise<void> {
  datasets = await api.listDatasets();
  const select = el<HTMLSelectElement>("dataset-select");
  select.innerHTML = datasets
    .map((d) => `<option value="${d.id}">${d.name} (n=${d.n}, d=${d.d})</option>`)
    .join("");
  const current = datasets.find((d) => d.id === state.datasetId);
  if (!current && datasets.length > 0) state.datasetId = datasets[0].id;
  dimensionCount = (datasets.find((d) => d.id === state.datasetId) ?? datasets[0]).d;
}

function wireControls(): void {
  const slider = el<HTMLInputElement>("p-slider");
  slider.min = String(P_SLIDER_MIN);
  slider.max = String(P_SLIDER_MAX);
  slider.step = String(P_SLIDER_STEP);
  slider.addEventListener("input", () => {
    state.p = Number(slider.value);
    apply();
  });
  el<HTMLInputElement>("p-entry").addEventListener("change", (ev) => {
    const value = Number((ev.target as HTMLInputElement).value);
    if (Number.isFinite(value)) {
      state.p = value;
      apply();
    }
  });
  el<HTMLInputElement>("h-entry").addEventListener("change", (ev) => {
    const value = Number((ev.target as HTMLInputElement).value);
    if (value > 0) {
      state.h = value;
      apply();
    }
  });
  el<HTMLSelectElement>("compare-mode").addEventListener("change", (ev) => {
    state.compareMode = (ev.target as HTMLSelectElement).value as UiState["compareMode"];
    apply();
  });
  el<HTMLSelectElement>("dataset-select").addEventListener("change", (ev) => {
    state.datasetId = (ev.target as HTMLSelectElement).value;
    state.axisOrder = null;
    state.flips = [];
    dimensionCount = datasets.find((d) => d.id === state.datasetId)?.d ?? 0;
    apply();
  });
  el<HTMLInputElement>("upload").addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      const summary = await api.uploadDataset(file);
      await populateDatasets();
      state.datasetId = summary.id;
      state.axisOrder = null;
      state.flips = [];
      dimensionCount = summary.d;
      apply();
    } catch (err) {
      alert(err instanceof Error ? err.message : String(err));
    }
  });
  el<HTMLButtonElement>("download-png").addEventListener("click", async () => {
    const blob = await api.renderPng(toRenderRequest(state));
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = `${state.datasetId}-p${state.p}.png`;
    a.click();
    URL.revokeObjectURL(url);
  });
}

async function init(): Promise<void> {
  await populateDatasets();
  wireControls();
  apply();
}

init().catch((err) => {
  document.body.textContent = `failed to reach the rendering service: ${err}`;
});
