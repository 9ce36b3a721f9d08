/** Per-pane render controller: debounces service calls and discards
 * stale responses so a pane always shows the latest requested state. */

import type { ApiClient } from "./api.js";
import { debounce, type Debounced } from "./debounce.js";
import type { RenderRequest, UiState } from "./state.js";
import { toRenderRequest } from "./state.js";

export const RENDER_DEBOUNCE_MS = 150;

export interface PaneView {
  showSvg(svg: string): void;
  showError(message: string): void;
}

export class PaneController {
  private sequence = 0;
  private applied = 0;
  private debounced: Debounced<[UiState]>;
  /** last successfully displayed document, for parity checks and downloads */
  lastSvg: string | null = null;
  lastRequest: RenderRequest | null = null;

  constructor(
    private api: ApiClient,
    private view: PaneView,
    /** pin the pane to a fixed adjustment strength (left comparison pane) */
    private pinnedP?: number,
    waitMs: number = RENDER_DEBOUNCE_MS,
  ) {
    this.debounced = debounce((state: UiState) => void this.issue(state), waitMs);
  }

  /** Schedule a re-render; at most one request per quiet period. */
  update(state: UiState): void {
    this.debounced(state);
  }

  cancel(): void {
    this.debounced.cancel();
  }

  private async issue(state: UiState): Promise<void> {
    const req = toRenderRequest(state, this.pinnedP);
    const seq = ++this.sequence;
    try {
      const { svg } = await this.api.render(req);
      if (seq !== this.sequence) return; // superseded while in flight
      this.applied = seq;
      this.lastSvg = svg;
      this.lastRequest = req;
      this.view.showSvg(svg);
    } catch (err) {
      if (seq !== this.sequence) return;
      this.view.showError(err instanceof Error ? err.message : String(err));
    }
  }
}
