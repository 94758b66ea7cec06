// Orchestration between the widgets, the store, and the API. Every filter
// edit round-trips through /api/filter before anything repaints; every drop
// sends exactly one move request; a stale-version 409 refetches and offers
// to replay.

import { ApiError, type BricolageApi } from "./api.js";
import { layoutExtent } from "./render.js";
import { fitScale, zoomAt, type ViewScale } from "./scale.js";
import type { Store } from "./state.js";
import type {
  AnthologyDetail,
  FilterStateWire,
  LayoutKind,
  LayoutState,
} from "./types.js";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface ControllerOptions {
  /** where the session id survives page reloads; defaults to localStorage */
  storage?: StorageLike;
  /** asked before replaying a move that lost a version race */
  confirmReplay?: (message: string) => boolean;
  onError?: (message: string) => void;
}

export const SESSION_KEY = "bricolage.session";

export class Controller {
  private readonly storage: StorageLike | null;
  private readonly confirmReplay: (message: string) => boolean;
  private readonly onError: (message: string) => void;

  constructor(
    private readonly api: BricolageApi,
    readonly store: Store,
    opts: ControllerOptions = {},
  ) {
    this.storage = opts.storage ?? (typeof localStorage !== "undefined" ? localStorage : null);
    this.confirmReplay = opts.confirmReplay ?? (() => true);
    this.onError = opts.onError ?? (() => undefined);
  }

  /** Load the collection, restore or create the session, size the view. */
  async init(viewportW: number, viewportH: number): Promise<void> {
    const [collection, timeline, sizes] = await Promise.all([
      this.api.collection(),
      this.api.timeline(),
      this.api.sizes(),
    ]);

    let sessionId = this.storage?.getItem(SESSION_KEY) ?? null;
    let layout: LayoutState | null = null;
    if (sessionId) {
      try {
        layout = await this.api.layout(sessionId);
      } catch {
        sessionId = null; // stale id, e.g. data dir was cleared
      }
    }
    if (!sessionId || !layout) {
      const session = await this.api.createSession();
      sessionId = session.session_id;
      layout = session.layout;
      this.storage?.setItem(SESSION_KEY, sessionId);
    }

    const ids = layout.placements.map((p) => p.id);
    const details = await Promise.all(ids.map((id) => this.api.anthology(id)));
    const anthologies = new Map<string, AnthologyDetail>(
      details.map((d) => [d.id, d]),
    );

    // one single-category filter call per category feeds the avg-story bars
    const sizeAverages = new Map<number, number>();
    await Promise.all(
      sizes.map(async (cat) => {
        const res = await this.api.filter({
          color_samples: [],
          year_range: null,
          size_categories: [cat.index],
        });
        sizeAverages.set(cat.index, res.avg_story_count);
      }),
    );

    this.store.update({
      collection,
      timeline,
      sizes,
      sizeAverages,
      sessionId,
      layout,
      mode: layout.kind,
      anthologies,
      scale: this.fittedScale(layout, anthologies, viewportW, viewportH),
    });
  }

  private fittedScale(
    layout: LayoutState,
    anthologies: Map<string, AnthologyDetail>,
    viewportW: number,
    viewportH: number,
  ): ViewScale {
    const extent = layoutExtent(layout, anthologies);
    return {
      pxPerMm: fitScale(extent.wMm, extent.hMm, viewportW, viewportH),
      viewportPx: viewportH,
      offsetX: 12,
      offsetY: 12,
    };
  }

  /** Widget edit: POST the new filter state, repaint from the response. */
  async applyFilter(filter: FilterStateWire): Promise<void> {
    this.store.update({ filter });
    try {
      const result = await this.api.filter(filter);
      this.store.update({ filterResult: result });
    } catch (err) {
      this.report(err, "filter failed");
    }
  }

  /** Mode switch always re-fetches the layout from the session. */
  async switchMode(kind: LayoutKind): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    try {
      const layout = await this.api.layout(sessionId, { kind });
      this.store.update({ mode: kind, layout });
    } catch (err) {
      this.report(err, "layout fetch failed");
    }
  }

  async regroupPiles(nPiles: number, byColor: boolean): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    try {
      const layout = await this.api.layout(sessionId, {
        kind: "pile",
        n_piles: nPiles,
        ...(byColor ? { group_by: "color" as const } : {}),
      });
      this.store.update({ mode: "pile", layout });
    } catch (err) {
      this.report(err, "regroup failed");
    }
  }

  /**
   * Commit a drop: exactly one move request. A 409 means someone else moved
   * first; refetch the truth and optionally replay on top of it.
   */
  async moveItem(id: string, xMm: number, yMm: number): Promise<void> {
    const { sessionId, layout } = this.store.get();
    if (!sessionId || !layout) return;
    try {
      const updated = await this.api.move(sessionId, {
        id,
        x_mm: xMm,
        y_mm: yMm,
        expected_version: layout.version,
      });
      this.store.update({ layout: updated });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.reconcileConflict(sessionId, id, xMm, yMm);
      } else {
        this.report(err, "move failed");
      }
    }
  }

  private async reconcileConflict(
    sessionId: string,
    id: string,
    xMm: number,
    yMm: number,
  ): Promise<void> {
    try {
      const fresh = await this.api.layout(sessionId);
      this.store.update({ layout: fresh });
      if (this.confirmReplay("The arrangement changed elsewhere. Replay your move?")) {
        const updated = await this.api.move(sessionId, {
          id,
          x_mm: xMm,
          y_mm: yMm,
          expected_version: fresh.version,
        });
        this.store.update({ layout: updated });
      }
    } catch (err) {
      this.report(err, "could not reconcile move");
    }
  }

  async labelPile(pileId: string, label: string): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    try {
      const layout = await this.api.setPileLabel(sessionId, pileId, label);
      this.store.update({ layout });
    } catch (err) {
      this.report(err, "label failed");
    }
  }

  /** Zoom about a screen point; the content under the pointer stays put. */
  zoomBy(factor: number, anchorScreen: [number, number]): void {
    const { scale } = this.store.get();
    const contentAnchor: [number, number] = [
      anchorScreen[0] - scale.offsetX,
      anchorScreen[1] - scale.offsetY,
    ];
    this.store.update({ scale: zoomAt(scale, factor, contentAnchor) });
  }

  private report(err: unknown, fallback: string): void {
    const message =
      err instanceof ApiError ? `${fallback}: ${err.message}` : fallback;
    this.onError(message);
  }
}
