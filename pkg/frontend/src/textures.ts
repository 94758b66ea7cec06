// Texture crops for sample squares: a square window from the texture_ref
// anthology's cover, centered on the bounding box of the pixels that match
// the sample color. Falls back to a flat fill when nothing matches.

import { deltaE, srgbToLab, type Lab } from "./color.js";

export const CROP_PX = 64;

export interface PixelData {
  width: number;
  height: number;
  /** RGBA rows, as from ImageData.data */
  data: Uint8ClampedArray | number[];
}

export interface CropRect {
  sx: number;
  sy: number;
  sw: number;
  sh: number;
}

/**
 * Bounding box of pixels within toleranceDe of the sample color, then a
 * CROP_PX square centered on it, clamped into the image. Pixels are scanned
 * on a stride so large covers stay cheap.
 */
export function bestRegionCrop(
  pixels: PixelData,
  sample: Lab,
  toleranceDe: number,
): CropRect | null {
  const { width, height, data } = pixels;
  if (width <= 0 || height <= 0) return null;
  const stride = Math.max(1, Math.floor(Math.min(width, height) / 96));
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (let y = 0; y < height; y += stride) {
    for (let x = 0; x < width; x += stride) {
      const off = (y * width + x) * 4;
      const lab = srgbToLab(data[off], data[off + 1], data[off + 2]);
      if (deltaE(lab, sample) <= toleranceDe) {
        if (x < minX) minX = x;
        if (x > maxX) maxX = x;
        if (y < minY) minY = y;
        if (y > maxY) maxY = y;
      }
    }
  }
  if (minX === Infinity) return null;

  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  const size = Math.min(CROP_PX, width, height);
  const sx = Math.min(Math.max(0, cx - size / 2), width - size);
  const sy = Math.min(Math.max(0, cy - size / 2), height - size);
  return { sx, sy, sw: size, sh: size };
}
