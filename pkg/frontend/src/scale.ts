// View scale math mirroring the engine: px/mm mapping, 1/2/5-decade ruler
// ticks, and anchor-preserving zoom. Pure functions so widgets stay testable.

export const MIN_PX_PER_MM = 0.1;
export const MAX_PX_PER_MM = 20.0;
export const MAX_RULER_INTERVALS = 8;

export interface ViewScale {
  pxPerMm: number;
  viewportPx: number;
  /** scroll offset of the content origin, in screen px */
  offsetX: number;
  offsetY: number;
}

export interface RulerTick {
  positionMm: number;
  label: string;
}

/** Smallest 1/2/5-decade step giving at most 8 intervals over the span. */
export function tickStep(spanMm: number): number {
  if (spanMm <= 0) return 1.0;
  let exponent = Math.floor(Math.log10(spanMm / (MAX_RULER_INTERVALS * 5)));
  for (;;) {
    for (const mantissa of [1, 2, 5]) {
      const step = mantissa * Math.pow(10, exponent);
      if (Math.floor(spanMm / step + 1e-9) <= MAX_RULER_INTERVALS) return step;
    }
    exponent += 1;
  }
}

export function rulerTicks(pxPerMm: number, viewportPx: number): RulerTick[] {
  const spanMm = viewportPx / pxPerMm;
  const step = tickStep(spanMm);
  const count = Math.floor(spanMm / step + 1e-9) + 1;
  const ticks: RulerTick[] = [];
  for (let i = 0; i < count; i++) {
    const mm = i * step;
    ticks.push({ positionMm: mm, label: `${formatMm(mm)} mm` });
  }
  return ticks;
}

function formatMm(mm: number): string {
  // steps are decade multiples of 1/2/5, so plain stringification is exact
  return String(Number(mm.toPrecision(12)));
}

/**
 * Zoom about a canvas point, keeping the mm under the anchor fixed.
 * Returns the updated scale with offsets adjusted so the anchored content
 * pixel stays put on screen. px/mm clamps to the zoom bounds.
 */
export function zoomAt(
  s: ViewScale,
  factor: number,
  anchorPx: [number, number],
): ViewScale {
  if (factor <= 0) throw new Error(`zoom factor must be positive, got ${factor}`);
  const next = Math.min(MAX_PX_PER_MM, Math.max(MIN_PX_PER_MM, s.pxPerMm * factor));
  const ratio = next / s.pxPerMm;
  return {
    pxPerMm: next,
    viewportPx: s.viewportPx,
    offsetX: s.offsetX - anchorPx[0] * (ratio - 1),
    offsetY: s.offsetY - anchorPx[1] * (ratio - 1),
  };
}

export function mmToPx(s: ViewScale, mm: number): number {
  return mm * s.pxPerMm;
}

export function pxToMm(s: ViewScale, px: number): number {
  return px / s.pxPerMm;
}

/** Screen px of a content point, including the scroll offset. */
export function contentToScreen(s: ViewScale, xMm: number, yMm: number): [number, number] {
  return [xMm * s.pxPerMm + s.offsetX, yMm * s.pxPerMm + s.offsetY];
}

export function screenToContent(s: ViewScale, xPx: number, yPx: number): [number, number] {
  return [(xPx - s.offsetX) / s.pxPerMm, (yPx - s.offsetY) / s.pxPerMm];
}

/** Pick a px/mm (clamped) that fits a mm extent into a viewport with margin. */
export function fitScale(
  extentWmm: number,
  extentHmm: number,
  viewportW: number,
  viewportH: number,
  margin = 0.92,
): number {
  const raw = Math.min(
    (viewportW * margin) / Math.max(extentWmm, 1e-9),
    (viewportH * margin) / Math.max(extentHmm, 1e-9),
  );
  return Math.min(MAX_PX_PER_MM, Math.max(MIN_PX_PER_MM, raw));
}
