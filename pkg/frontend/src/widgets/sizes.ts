// Size filter widget: one rectangle per size category at the centroid's
// aspect ratio. Fill darkness encodes how many anthologies the category
// holds; a bar under each rectangle shows the average story count, which
// comes from the API (one single-category filter call each), never from
// local math.

import type { SizeCategory } from "../types.js";

const MAX_EDGE_PX = 64;
const BAR_UNIT_PX = 12;

export class SizeFilter {
  readonly element: HTMLElement;
  private categories: SizeCategory[] = [];
  private selected = new Set<number>();
  private averages = new Map<number, number>();

  constructor(
    parent: HTMLElement,
    private readonly onEdit: (indices: number[]) => void,
  ) {
    this.element = parent.ownerDocument.createElement("div");
    this.element.className = "sizes";
    parent.appendChild(this.element);
  }

  setCategories(categories: SizeCategory[]): void {
    this.categories = categories;
    this.render();
  }

  setSelected(indices: number[]): void {
    this.selected = new Set(indices);
    this.render();
  }

  /** avg story count per category index, from /api/filter responses */
  setAverages(averages: Map<number, number>): void {
    this.averages = averages;
    this.render();
  }

  private render(): void {
    this.element.replaceChildren();
    const doc = this.element.ownerDocument;
    const maxDim = Math.max(
      1,
      ...this.categories.map((c) => Math.max(c.centroid_width_mm, c.centroid_height_mm)),
    );
    for (const cat of this.categories) {
      const cell = doc.createElement("div");
      cell.className = "size-cell" + (this.selected.has(cat.index) ? " selected" : "");
      cell.dataset.index = String(cat.index);

      const rect = doc.createElement("div");
      rect.className = "size-rect";
      rect.style.width = `${(cat.centroid_width_mm / maxDim) * MAX_EDGE_PX}px`;
      rect.style.height = `${(cat.centroid_height_mm / maxDim) * MAX_EDGE_PX}px`;
      rect.style.background = `rgba(30, 26, 20, ${cat.darkness})`;
      rect.title = `${Math.round(cat.centroid_width_mm)} x ${Math.round(cat.centroid_height_mm)} mm, ${cat.member_ids.length} anthologies`;
      cell.appendChild(rect);

      const avg = this.averages.get(cat.index);
      if (avg !== undefined) {
        const bar = doc.createElement("div");
        bar.className = "size-avg-bar";
        bar.style.width = `${avg * BAR_UNIT_PX}px`;
        bar.title = `${avg.toFixed(1)} stories on average`;
        cell.appendChild(bar);
      }

      cell.addEventListener("click", () => this.toggle(cat.index));
      this.element.appendChild(cell);
    }
  }

  private toggle(index: number): void {
    if (this.selected.has(index)) this.selected.delete(index);
    else this.selected.add(index);
    this.render();
    this.onEdit([...this.selected].sort((a, b) => a - b));
  }
}
