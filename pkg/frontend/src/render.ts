// Physical-scale canvas painting. Every extent is mm * px_per_mm, so two
// items whose heights differ 1:2 render 1:2 at any zoom. Draws through a
// narrow context interface; tests substitute a recording stub.

import type { AnthologyDetail, LayoutState } from "./types.js";
import type { ViewScale } from "./scale.js";

/** The subset of CanvasRenderingContext2D the renderer needs. */
export interface Draw2D {
  save(): void;
  restore(): void;
  translate(x: number, y: number): void;
  rotate(rad: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  drawImage(...args: unknown[]): void;
  fillText(text: string, x: number, y: number): void;
  fillStyle: unknown;
  strokeStyle: unknown;
  globalAlpha: number;
  lineWidth: number;
  font: string;
}

export interface LoadedImage {
  source: unknown;
  width: number;
  height: number;
}

export interface ImageSource {
  get(id: string, kind: "cover" | "spine"): LoadedImage | null;
}

export const NO_IMAGES: ImageSource = { get: () => null };

export interface RenderedItem {
  id: string;
  /** top-left corner in screen px */
  xPx: number;
  yPx: number;
  wPx: number;
  hPx: number;
  rotationDeg: number;
  pileId: string | null;
}

export interface RenderInputs {
  layout: LayoutState;
  visible: Set<string>;
  anthologies: Map<string, AnthologyDetail>;
  scale: ViewScale;
  images?: ImageSource;
  hoverId?: string | null;
}

/**
 * Paint a layout and return the items in paint order (ascending z, topmost
 * last). The returned geometry doubles as the hit-test model.
 */
export function renderCanvas(ctx: Draw2D, inp: RenderInputs): RenderedItem[] {
  const images = inp.images ?? NO_IMAGES;
  const { scale } = inp;
  const ordered = [...inp.layout.placements].sort((a, b) => a.z_order - b.z_order);
  const painted: RenderedItem[] = [];

  for (const p of ordered) {
    if (!inp.visible.has(p.id)) continue;
    const a = inp.anthologies.get(p.id);
    if (!a) continue;

    const spineMode = inp.layout.kind === "shelf";
    const wMm = spineMode ? a.thickness_mm : a.width_mm;
    const hMm = a.height_mm;
    const x = p.x_mm * scale.pxPerMm + scale.offsetX;
    const y = p.y_mm * scale.pxPerMm + scale.offsetY;
    const w = wMm * scale.pxPerMm;
    const h = hMm * scale.pxPerMm;

    ctx.save();
    ctx.translate(x + w / 2, y + h / 2);
    if (p.rotation_deg !== 0) ctx.rotate((p.rotation_deg * Math.PI) / 180);

    const img = spineMode
      ? images.get(p.id, "spine") ?? images.get(p.id, "cover")
      : images.get(p.id, "cover");
    if (img) {
      if (spineMode && !images.get(p.id, "spine")) {
        // no spine scan: show a vertical strip of the cover at spine aspect
        const sw = Math.max(1, img.height * (wMm / hMm));
        const sx = Math.max(0, (img.width - sw) / 2);
        ctx.drawImage(img.source, sx, 0, sw, img.height, -w / 2, -h / 2, w, h);
      } else {
        ctx.drawImage(img.source, -w / 2, -h / 2, w, h);
      }
    } else {
      // placeholder swatch in the dominant color
      ctx.fillStyle = a.palette[0]?.srgb ?? "#888888";
      ctx.fillRect(-w / 2, -h / 2, w, h);
    }

    if (inp.hoverId === p.id) {
      ctx.strokeStyle = "#f5f0dc";
      ctx.lineWidth = 2;
      ctx.strokeRect(-w / 2, -h / 2, w, h);
    }
    ctx.restore();

    painted.push({
      id: p.id,
      xPx: x,
      yPx: y,
      wPx: w,
      hPx: h,
      rotationDeg: p.rotation_deg,
      pileId: p.pile_id,
    });
  }

  if (inp.layout.kind === "pile") drawPileLabels(ctx, inp.layout, scale);
  return painted;
}

function drawPileLabels(ctx: Draw2D, layout: LayoutState, scale: ViewScale): void {
  ctx.save();
  ctx.fillStyle = "#bdb6a3";
  ctx.font = "12px system-ui, sans-serif";
  for (const pile of Object.values(layout.piles)) {
    if (!pile.label) continue;
    const x = pile.anchor[0] * scale.pxPerMm + scale.offsetX;
    const y = pile.anchor[1] * scale.pxPerMm + scale.offsetY;
    ctx.fillText(pile.label, x, y + 14);
  }
  ctx.restore();
}

/** Topmost painted item under a screen point, honoring rotation. */
export function hitTest(items: RenderedItem[], xPx: number, yPx: number): RenderedItem | null {
  for (let i = items.length - 1; i >= 0; i--) {
    const it = items[i];
    const cx = it.xPx + it.wPx / 2;
    const cy = it.yPx + it.hPx / 2;
    const rad = (-it.rotationDeg * Math.PI) / 180;
    const dx = xPx - cx;
    const dy = yPx - cy;
    const lx = dx * Math.cos(rad) - dy * Math.sin(rad);
    const ly = dx * Math.sin(rad) + dy * Math.cos(rad);
    if (Math.abs(lx) <= it.wPx / 2 && Math.abs(ly) <= it.hPx / 2) return it;
  }
  return null;
}

/** mm bounding box of a layout's footprints, for fit-to-view. */
export function layoutExtent(
  layout: LayoutState,
  anthologies: Map<string, AnthologyDetail>,
): { wMm: number; hMm: number } {
  let w = 0;
  let h = 0;
  for (const p of layout.placements) {
    const a = anthologies.get(p.id);
    if (!a) continue;
    const itemW = layout.kind === "shelf" ? a.thickness_mm : a.width_mm;
    w = Math.max(w, p.x_mm + itemW);
    h = Math.max(h, p.y_mm + a.height_mm);
  }
  return { wMm: w, hMm: h };
}
