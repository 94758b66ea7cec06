// Hover tooltip. Shelf mode shows a cover preview (spines alone are hard to
// read); pile mode shows materials and the dominant colors. Shows on hover
// with no delay and hides as soon as the pointer leaves.

import type { AnthologyDetail, LayoutKind } from "../types.js";

export class Tooltip {
  readonly element: HTMLElement;

  constructor(
    parent: HTMLElement,
    private readonly coverUrl: (id: string) => string,
  ) {
    this.element = parent.ownerDocument.createElement("div");
    this.element.className = "tooltip";
    this.element.style.display = "none";
    this.element.style.position = "absolute";
    parent.appendChild(this.element);
  }

  show(a: AnthologyDetail, mode: LayoutKind, screenX: number, screenY: number): void {
    const doc = this.element.ownerDocument;
    this.element.replaceChildren();

    const title = doc.createElement("div");
    title.className = "tooltip-title";
    title.textContent = `${a.title} (${a.year_span[0]}-${a.year_span[1]})`;
    this.element.appendChild(title);

    if (mode === "shelf") {
      const img = doc.createElement("img");
      img.className = "tooltip-cover";
      img.src = this.coverUrl(a.id);
      img.alt = `cover of ${a.title}`;
      this.element.appendChild(img);
    } else {
      const materials = doc.createElement("div");
      materials.className = "tooltip-materials";
      materials.textContent = `${a.cover_material} / ${a.page_material} / ${a.binding}`;
      this.element.appendChild(materials);

      const swatches = doc.createElement("div");
      swatches.className = "tooltip-swatches";
      for (const entry of a.palette) {
        const sw = doc.createElement("span");
        sw.className = "tooltip-swatch";
        sw.style.background = entry.srgb;
        sw.title = `${Math.round(entry.proportion * 100)}%`;
        swatches.appendChild(sw);
      }
      this.element.appendChild(swatches);
    }

    this.element.style.left = `${screenX + 14}px`;
    this.element.style.top = `${screenY + 14}px`;
    this.element.style.display = "block";
  }

  hide(): void {
    this.element.style.display = "none";
  }
}
