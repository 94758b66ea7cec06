// Millimeter ruler on the canvas edge. Shows honest 1/2/5-decade ticks for
// the current zoom and doubles as a zoom control: dragging along it zooms
// about the drag's start point.

import { rulerTicks, type ViewScale } from "../scale.js";

/** Vertical px of drag per doubling of the zoom level. */
const PX_PER_DOUBLING = 120;

export class Ruler {
  readonly element: HTMLElement;
  private scale: ViewScale | null = null;

  constructor(
    parent: HTMLElement,
    private readonly onZoom: (factor: number, anchorScreen: [number, number]) => void,
  ) {
    this.element = parent.ownerDocument.createElement("div");
    this.element.className = "ruler";
    parent.appendChild(this.element);
    this.element.addEventListener("pointerdown", (e) => this.startDrag(e as PointerEvent));
  }

  setScale(scale: ViewScale): void {
    this.scale = scale;
    this.render();
  }

  private render(): void {
    this.element.replaceChildren();
    if (!this.scale) return;
    const doc = this.element.ownerDocument;
    for (const tick of rulerTicks(this.scale.pxPerMm, this.scale.viewportPx)) {
      const el = doc.createElement("div");
      el.className = "ruler-tick";
      el.dataset.mm = String(tick.positionMm);
      el.style.top = `${tick.positionMm * this.scale.pxPerMm}px`;
      const label = doc.createElement("span");
      label.textContent = tick.label;
      el.appendChild(label);
      this.element.appendChild(el);
    }
  }

  private startDrag(e: PointerEvent): void {
    e.preventDefault();
    const anchor: [number, number] = [e.clientX, e.clientY];
    let lastY = e.clientY;
    const doc = this.element.ownerDocument;
    const move = (ev: Event) => {
      const me = ev as MouseEvent;
      const dy = me.clientY - lastY;
      lastY = me.clientY;
      if (dy !== 0) this.onZoom(Math.pow(2, -dy / PX_PER_DOUBLING), anchor);
    };
    const up = () => {
      doc.removeEventListener("pointermove", move);
      doc.removeEventListener("pointerup", up);
    };
    doc.addEventListener("pointermove", move);
    doc.addEventListener("pointerup", up);
  }
}
