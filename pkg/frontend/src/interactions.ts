// Pointer wiring for the collection canvas: dragging items (live optimistic
// position, exactly one move request on drop), hover tooltips, and
// double-click pile labeling. Kept apart from the paint loop so the
// behavior can be driven by synthetic DOM events.

import type { Controller } from "./controller.js";
import { hitTest, type RenderedItem } from "./render.js";
import type { Store } from "./state.js";
import type { Tooltip } from "./widgets/tooltip.js";

export interface InteractionDeps {
  /** current hit-test model, i.e. the last renderCanvas return value */
  painted(): RenderedItem[];
  tooltip?: Tooltip;
  /** pile label prompt; null result cancels */
  promptFn?: (message: string, current: string) => string | null;
}

export function attachCanvasInteractions(
  el: HTMLElement,
  store: Store,
  controller: Controller,
  deps: InteractionDeps,
): () => void {
  const doc = el.ownerDocument;

  const localPoint = (e: MouseEvent): [number, number] => {
    const rect = el.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  };

  const onPointerDown = (e: Event) => {
    const me = e as PointerEvent;
    const [x, y] = localPoint(me);
    const hit = hitTest(deps.painted(), x, y);
    if (!hit) return;
    me.preventDefault();
    const scale = store.get().scale;
    const grabDx = x - hit.xPx;
    const grabDy = y - hit.yPx;
    let lastX = hit.xPx;
    let lastY = hit.yPx;

    const move = (ev: Event) => {
      const [mx, my] = localPoint(ev as MouseEvent);
      lastX = mx - grabDx;
      lastY = my - grabDy;
      const state = store.get();
      if (!state.layout) return;
      const placements = state.layout.placements.map((p) =>
        p.id === hit.id
          ? {
              ...p,
              x_mm: (lastX - scale.offsetX) / scale.pxPerMm,
              y_mm: (lastY - scale.offsetY) / scale.pxPerMm,
            }
          : p,
      );
      store.update({ layout: { ...state.layout, placements } });
    };
    const up = () => {
      doc.removeEventListener("pointermove", move);
      doc.removeEventListener("pointerup", up);
      void controller.moveItem(
        hit.id,
        (lastX - scale.offsetX) / scale.pxPerMm,
        (lastY - scale.offsetY) / scale.pxPerMm,
      );
    };
    doc.addEventListener("pointermove", move);
    doc.addEventListener("pointerup", up);
  };

  const onPointerMove = (e: Event) => {
    const me = e as PointerEvent;
    const state = store.get();
    const [x, y] = localPoint(me);
    const hit = hitTest(deps.painted(), x, y);
    if (hit) {
      const detail = state.anthologies.get(hit.id);
      if (detail) deps.tooltip?.show(detail, state.mode, me.clientX, me.clientY);
      if (state.hover?.anthologyId !== hit.id) {
        store.update({
          hover: { anthologyId: hit.id, screenX: me.clientX, screenY: me.clientY },
        });
      }
    } else {
      deps.tooltip?.hide();
      if (state.hover) store.update({ hover: null });
    }
  };

  const onPointerLeave = () => {
    deps.tooltip?.hide();
    if (store.get().hover) store.update({ hover: null });
  };

  const onDoubleClick = (e: Event) => {
    const me = e as MouseEvent;
    const state = store.get();
    if (!state.layout || state.layout.kind !== "pile") return;
    const [x, y] = localPoint(me);
    const hit = hitTest(deps.painted(), x, y);
    if (!hit?.pileId) return;
    const current = state.layout.piles[hit.pileId]?.label ?? "";
    const label = (deps.promptFn ?? (() => null))("pile label", current);
    if (label !== null) void controller.labelPile(hit.pileId, label);
  };

  el.addEventListener("pointerdown", onPointerDown);
  el.addEventListener("pointermove", onPointerMove);
  el.addEventListener("pointerleave", onPointerLeave);
  el.addEventListener("dblclick", onDoubleClick);
  return () => {
    el.removeEventListener("pointerdown", onPointerDown);
    el.removeEventListener("pointermove", onPointerMove);
    el.removeEventListener("pointerleave", onPointerLeave);
    el.removeEventListener("dblclick", onDoubleClick);
  };
}
