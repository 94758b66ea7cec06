// Timeline filter widget: one small square per story-year occurrence,
// colored by its anthology; per-anthology span triangles; a brushable
// year range that feeds the filter.

import type { TimelineData } from "../types.js";

export interface TimelineOptions {
  widthPx?: number;
  trackHeightPx?: number;
}

const SQUARE = 8;

export class Timeline {
  readonly element: HTMLElement;
  private readonly widthPx: number;
  private readonly trackHeightPx: number;
  private extent: [number, number] = [1900, 2000];
  private data: TimelineData | null = null;
  private range: [number, number] | null = null;
  private track: HTMLElement;
  private brushEl: HTMLElement;

  constructor(
    parent: HTMLElement,
    private readonly onEdit: (range: [number, number] | null) => void,
    opts: TimelineOptions = {},
  ) {
    this.widthPx = opts.widthPx ?? 320;
    this.trackHeightPx = opts.trackHeightPx ?? 72;
    const doc = parent.ownerDocument;
    this.element = doc.createElement("div");
    this.element.className = "timeline";
    this.element.style.width = `${this.widthPx}px`;
    parent.appendChild(this.element);

    this.track = doc.createElement("div");
    this.track.className = "timeline-track";
    this.track.style.height = `${this.trackHeightPx}px`;
    this.element.appendChild(this.track);

    this.brushEl = doc.createElement("div");
    this.brushEl.className = "timeline-brush";
    this.track.appendChild(this.brushEl);

    const clear = doc.createElement("button");
    clear.className = "timeline-clear";
    clear.textContent = "all years";
    clear.addEventListener("click", () => {
      this.range = null;
      this.updateBrush();
      this.onEdit(null);
    });
    this.element.appendChild(clear);

    this.track.addEventListener("pointerdown", (e) => this.startBrush(e as PointerEvent));
  }

  setData(data: TimelineData, extent: [number, number]): void {
    this.data = data;
    this.extent = extent;
    this.renderMarks();
  }

  setRange(range: [number, number] | null): void {
    this.range = range ? [range[0], range[1]] : null;
    this.updateBrush();
  }

  yearToX(year: number): number {
    const [lo, hi] = this.extent;
    if (hi === lo) return this.widthPx / 2;
    return ((year - lo) / (hi - lo)) * this.widthPx;
  }

  xToYear(x: number): number {
    const [lo, hi] = this.extent;
    const t = Math.min(1, Math.max(0, x / this.widthPx));
    return Math.round(lo + t * (hi - lo));
  }

  private renderMarks(): void {
    for (const el of [...this.track.querySelectorAll(".timeline-mark, .timeline-span")]) {
      el.remove();
    }
    if (!this.data) return;
    const doc = this.element.ownerDocument;

    // span triangles: base across [min_year, max_year], 20% opacity,
    // rendered behind the year squares
    const spanIds = Object.keys(this.data.spans).sort();
    spanIds.forEach((aid, i) => {
      const span = this.data!.spans[aid];
      const left = this.yearToX(span.min_year);
      const right = this.yearToX(span.max_year);
      const tri = doc.createElement("div");
      tri.className = "timeline-span";
      tri.dataset.anthologyId = aid;
      tri.style.position = "absolute";
      tri.style.left = `${left}px`;
      tri.style.width = `${Math.max(1, right - left)}px`;
      tri.style.bottom = "0px";
      tri.style.height = `${this.trackHeightPx - 14}px`;
      tri.style.opacity = "0.2";
      // isoceles triangle via clip-path, apex centered over the base
      tri.style.clipPath = "polygon(50% 0, 0 100%, 100% 100%)";
      tri.style.background = span.color;
      this.track.appendChild(tri);
    });

    // one square per (anthology, story) occurrence, stacked per year
    const years = Object.keys(this.data.years).sort();
    for (const yearKey of years) {
      const entries = this.data.years[yearKey];
      const x = this.yearToX(Number(yearKey));
      entries.forEach(([aid], stack) => {
        const sq = doc.createElement("div");
        sq.className = "timeline-mark";
        sq.dataset.year = yearKey;
        sq.dataset.anthologyId = aid;
        sq.style.position = "absolute";
        sq.style.left = `${x - SQUARE / 2}px`;
        sq.style.bottom = `${stack * (SQUARE + 1)}px`;
        sq.style.width = `${SQUARE}px`;
        sq.style.height = `${SQUARE}px`;
        sq.style.background = this.data!.spans[aid]?.color ?? "#999";
        this.track.appendChild(sq);
      });
    }
  }

  private localX(e: MouseEvent): number {
    const rect = this.track.getBoundingClientRect();
    return e.clientX - rect.left;
  }

  private startBrush(e: PointerEvent): void {
    e.preventDefault();
    const startYear = this.xToYear(this.localX(e));
    this.range = [startYear, startYear];
    this.updateBrush();
    const doc = this.element.ownerDocument;
    const move = (ev: Event) => {
      const year = this.xToYear(this.localX(ev as MouseEvent));
      this.range = year < startYear ? [year, startYear] : [startYear, year];
      this.updateBrush();
    };
    const up = () => {
      doc.removeEventListener("pointermove", move);
      doc.removeEventListener("pointerup", up);
      this.onEdit(this.range ? [this.range[0], this.range[1]] : null);
    };
    doc.addEventListener("pointermove", move);
    doc.addEventListener("pointerup", up);
  }

  private updateBrush(): void {
    if (!this.range) {
      this.brushEl.style.display = "none";
      return;
    }
    const left = this.yearToX(this.range[0]);
    const right = this.yearToX(this.range[1]);
    this.brushEl.style.display = "block";
    this.brushEl.style.position = "absolute";
    this.brushEl.style.left = `${left}px`;
    this.brushEl.style.width = `${Math.max(2, right - left)}px`;
    this.brushEl.style.top = "0px";
    this.brushEl.style.height = "100%";
  }
}
