/** UI state and its mapping to render requests and shareable URLs. */

export type CompareMode = "single" | "side-by-side";

export interface UiState {
  datasetId: string;
  p: number;
  h: number;
  widthPx: number;
  heightPx: number;
  /** null = natural column order */
  axisOrder: number[] | null;
  /** indices of mirrored axes */
  flips: number[];
  compareMode: CompareMode;
}

export interface RenderConfig {
  width_px: number;
  height_px: number;
  h: number;
  p: number;
}

export interface RenderRequest {
  dataset_id: string;
  config: RenderConfig;
  axis_order?: number[];
  flips?: number[];
}

export const P_SLIDER_MIN = 0;
export const P_SLIDER_MAX = 2;
export const P_SLIDER_STEP = 0.05;

export function defaultState(datasetId = "fig1"): UiState {
  return {
    datasetId,
    p: 1.0,
    h: 2.0,
    widthPx: 960,
    heightPx: 480,
    axisOrder: null,
    flips: [],
    compareMode: "side-by-side",
  };
}

/** P outside the slider range is allowed but flagged with a warning badge. */
export function pOutOfRange(p: number): boolean {
  return p < P_SLIDER_MIN || p > P_SLIDER_MAX;
}

/**
 * Map a state to the request body for one pane. The left pane of
 * side-by-side mode is pinned to classical rendering via pinnedP = 0;
 * everything else comes from the state, so the mapping is injective.
 */
export function toRenderRequest(state: UiState, pinnedP?: number): RenderRequest {
  const req: RenderRequest = {
    dataset_id: state.datasetId,
    config: {
      width_px: state.widthPx,
      height_px: state.heightPx,
      h: state.h,
      p: pinnedP ?? state.p,
    },
  };
  if (state.axisOrder !== null) {
    req.axis_order = state.axisOrder;
  }
  if (state.flips.length > 0) {
    req.flips = state.flips;
  }
  return req;
}

export function encodeState(state: UiState): string {
  const params = new URLSearchParams();
  params.set("dataset", state.datasetId);
  params.set("p", String(state.p));
  params.set("h", String(state.h));
  params.set("w", String(state.widthPx));
  params.set("ht", String(state.heightPx));
  if (state.axisOrder !== null) {
    params.set("order", state.axisOrder.join(","));
  }
  if (state.flips.length > 0) {
    params.set("flips", state.flips.join(","));
  }
  params.set("mode", state.compareMode);
  return params.toString();
}

export function decodeState(query: string): UiState {
  const params = new URLSearchParams(query);
  const state = defaultState();
  if (params.has("dataset")) state.datasetId = params.get("dataset")!;
  if (params.has("p")) state.p = Number(params.get("p"));
  if (params.has("h")) state.h = Number(params.get("h"));
  if (params.has("w")) state.widthPx = Number(params.get("w"));
  if (params.has("ht")) state.heightPx = Number(params.get("ht"));
  if (params.has("order")) {
    state.axisOrder = params.get("order")!.split(",").map(Number);
  }
  if (params.has("flips")) {
    state.flips = params.get("flips")!.split(",").map(Number);
  }
  const mode = params.get("mode");
  if (mode === "single" || mode === "side-by-side") state.compareMode = mode;
  return state;
}
