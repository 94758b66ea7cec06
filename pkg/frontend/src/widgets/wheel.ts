// Color wheel filter widget. Hue runs around the disc, chroma grows toward
// the rim, all on the fixed L = 60 plane. Sample squares are draggable DOM
// nodes so the interaction works without a real canvas context.

import { cssColor, sampleToColor } from "../color.js";
import type { ColorSampleWire } from "../types.js";

export const DEFAULT_TOLERANCE_DE = 25.0;
export const DEFAULT_MIN_PROPORTION = 0.1;
const SQUARE_PX = 22;

/** Disc center/rim geometry shared by painting and pointer mapping. */
function discRadius(sizePx: number): number {
  return sizePx / 2 - 6;
}

/** Wheel polar coords to widget-local px. Canvas y grows downward. */
export function wheelToLocal(
  hueDeg: number,
  radius: number,
  sizePx: number,
): [number, number] {
  const r = radius * discRadius(sizePx);
  const rad = (hueDeg * Math.PI) / 180;
  return [sizePx / 2 + r * Math.cos(rad), sizePx / 2 - r * Math.sin(rad)];
}

/** Widget-local px to wheel polar coords; null outside the disc. */
export function localToWheel(
  x: number,
  y: number,
  sizePx: number,
): { hueDeg: number; radius: number } | null {
  const dx = x - sizePx / 2;
  const dy = sizePx / 2 - y;
  const r = Math.hypot(dx, dy) / discRadius(sizePx);
  // tolerate float jitter for points computed exactly on the rim
  if (r > 1.0 + 1e-9) return null;
  const hue = ((Math.atan2(dy, dx) * 180) / Math.PI + 360) % 360;
  return { hueDeg: hue, radius: Math.min(1, r) };
}

export interface SampleFill {
  /** css background for the square; null keeps the sample's own color */
  css: string | null;
  /** optional element (e.g. a texture crop canvas) shown inside the square */
  element?: HTMLElement;
}

export type FillResolver = (sample: ColorSampleWire) => SampleFill;

export interface WheelOptions {
  sizePx?: number;
  resolveFill?: FillResolver;
}

export class ColorWheel {
  readonly element: HTMLElement;
  private readonly sizePx: number;
  private samples: ColorSampleWire[] = [];
  private selected = -1;
  private readonly resolveFill: FillResolver;

  constructor(
    parent: HTMLElement,
    private readonly onEdit: (samples: ColorSampleWire[]) => void,
    opts: WheelOptions = {},
  ) {
    this.sizePx = opts.sizePx ?? 220;
    this.resolveFill = opts.resolveFill ?? (() => ({ css: null }));
    this.element = parent.ownerDocument.createElement("div");
    this.element.className = "wheel";
    this.element.tabIndex = 0;
    this.element.style.width = `${this.sizePx}px`;
    this.element.style.height = `${this.sizePx}px`;
    parent.appendChild(this.element);

    const canvas = parent.ownerDocument.createElement("canvas");
    canvas.className = "wheel-disc";
    canvas.width = this.sizePx;
    canvas.height = this.sizePx;
    this.element.appendChild(canvas);
    const ctx = canvas.getContext?.("2d");
    if (ctx) this.paintDisc(ctx);

    this.element.addEventListener("dblclick", (e) => this.onDoubleClick(e as MouseEvent));
    this.element.addEventListener("keydown", (e) => this.onKey(e as KeyboardEvent));
  }

  /** Replace the shown samples (typically from the last filter response). */
  setSamples(samples: ColorSampleWire[]): void {
    this.samples = samples.map((s) => ({ ...s }));
    if (this.selected >= this.samples.length) this.selected = this.samples.length - 1;
    this.renderSquares();
  }

  getSamples(): ColorSampleWire[] {
    return this.samples.map((s) => ({ ...s }));
  }

  private localPoint(e: MouseEvent): [number, number] {
    const rect = this.element.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  }

  private onDoubleClick(e: MouseEvent): void {
    const target = e.target as HTMLElement;
    const idxAttr = target?.dataset?.sampleIndex;
    if (idxAttr !== undefined) {
      // double-click on a square removes it
      this.samples.splice(Number(idxAttr), 1);
      this.selected = -1;
      this.renderSquares();
      this.onEdit(this.getSamples());
      return;
    }
    const [x, y] = this.localPoint(e);
    const pos = localToWheel(x, y, this.sizePx);
    if (!pos) return;
    this.samples.push({
      hue_deg: pos.hueDeg,
      radius: pos.radius,
      tolerance_de: DEFAULT_TOLERANCE_DE,
      min_proportion: DEFAULT_MIN_PROPORTION,
    });
    this.selected = this.samples.length - 1;
    this.renderSquares();
    this.onEdit(this.getSamples());
  }

  private onKey(e: KeyboardEvent): void {
    if (this.selected < 0 || this.selected >= this.samples.length) return;
    if (e.key === "Delete" || e.key === "Backspace") {
      this.samples.splice(this.selected, 1);
      this.selected = -1;
      this.renderSquares();
      this.onEdit(this.getSamples());
      return;
    }
    const nudge: Record<string, [number, number]> = {
      ArrowLeft: [-3, 0],
      ArrowRight: [3, 0],
      ArrowUp: [0, -3],
      ArrowDown: [0, 3],
    };
    const d = nudge[e.key];
    if (!d) return;
    e.preventDefault();
    const s = this.samples[this.selected];
    const [x, y] = wheelToLocal(s.hue_deg, s.radius, this.sizePx);
    const pos = localToWheel(x + d[0], y + d[1], this.sizePx);
    if (!pos) return;
    s.hue_deg = pos.hueDeg;
    s.radius = pos.radius;
    this.renderSquares();
    this.onEdit(this.getSamples());
  }

  private renderSquares(): void {
    for (const el of [...this.element.querySelectorAll(".wheel-sample")]) el.remove();
    this.samples.forEach((s, i) => {
      const sq = this.element.ownerDocument.createElement("div");
      sq.className = "wheel-sample" + (i === this.selected ? " selected" : "");
      sq.dataset.sampleIndex = String(i);
      if (s.texture_ref) sq.dataset.textureRef = s.texture_ref;
      const [x, y] = wheelToLocal(s.hue_deg, s.radius, this.sizePx);
      sq.style.left = `${x - SQUARE_PX / 2}px`;
      sq.style.top = `${y - SQUARE_PX / 2}px`;
      sq.style.width = `${SQUARE_PX}px`;
      sq.style.height = `${SQUARE_PX}px`;
      const fill = this.resolveFill(s);
      sq.style.background = fill.css ?? cssColor(sampleToColor(s.hue_deg, s.radius));
      if (fill.element) sq.appendChild(fill.element);
      sq.addEventListener("pointerdown", (e) => this.startDrag(e as PointerEvent, i));
      this.element.appendChild(sq);
    });
  }

  private startDrag(e: PointerEvent, index: number): void {
    e.preventDefault();
    this.selected = index;
    const doc = this.element.ownerDocument;
    const move = (ev: Event) => {
      const [x, y] = this.localPoint(ev as MouseEvent);
      const pos = localToWheel(x, y, this.sizePx);
      if (!pos) return;
      const s = this.samples[index];
      s.hue_deg = pos.hueDeg;
      s.radius = pos.radius;
      this.positionSquare(index);
    };
    const up = () => {
      doc.removeEventListener("pointermove", move);
      doc.removeEventListener("pointerup", up);
      // one filter edit per drop, not per mouse move
      this.renderSquares();
      this.onEdit(this.getSamples());
    };
    doc.addEventListener("pointermove", move);
    doc.addEventListener("pointerup", up);
  }

  private positionSquare(index: number): void {
    const sq = this.element.querySelector<HTMLElement>(
      `[data-sample-index="${index}"]`,
    );
    if (!sq) return;
    const s = this.samples[index];
    const [x, y] = wheelToLocal(s.hue_deg, s.radius, this.sizePx);
    sq.style.left = `${x - SQUARE_PX / 2}px`;
    sq.style.top = `${y - SQUARE_PX / 2}px`;
    sq.style.background = cssColor(sampleToColor(s.hue_deg, s.radius));
  }

  private paintDisc(ctx: CanvasRenderingContext2D): void {
    const step = 3;
    for (let y = 0; y < this.sizePx; y += step) {
      for (let x = 0; x < this.sizePx; x += step) {
        const pos = localToWheel(x + step / 2, y + step / 2, this.sizePx);
        if (!pos) continue;
        ctx.fillStyle = cssColor(sampleToColor(pos.hueDeg, pos.radius));
        ctx.fillRect(x, y, step, step);
      }
    }
  }
}
