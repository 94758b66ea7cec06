// CIELAB color math matching the server (D65, 2 degree observer, white
// point taken from the sRGB matrix row sums so neutrals land on a=b=0).
// Used only for painting: the wheel disc, sample previews, texture matching.

export interface Lab {
  L: number;
  a: number;
  b: number;
}

/** Chroma that maps to the wheel rim. */
export const C_REF = 100.0;
/** Fixed lightness plane the wheel's sample squares live on. */
export const WHEEL_L = 60.0;

const SRGB_TO_XYZ = [
  [0.4124564, 0.3575761, 0.1804375],
  [0.2126729, 0.7151522, 0.072175],
  [0.0193339, 0.119192, 0.9503041],
];

function invert3(m: number[][]): number[][] {
  const [a, b, c] = m[0];
  const [d, e, f] = m[1];
  const [g, h, i] = m[2];
  const det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  return [
    [(e * i - f * h) / det, (c * h - b * i) / det, (b * f - c * e) / det],
    [(f * g - d * i) / det, (a * i - c * g) / det, (c * d - a * f) / det],
    [(d * h - e * g) / det, (b * g - a * h) / det, (a * e - b * d) / det],
  ];
}

const XYZ_TO_SRGB = invert3(SRGB_TO_XYZ);
const WHITE = SRGB_TO_XYZ.map((row) => row[0] + row[1] + row[2]);

const EPS = Math.pow(6 / 29, 3);
const KAPPA_INV = 1 / (3 * Math.pow(6 / 29, 2));

function linearize(u: number): number {
  return u <= 0.04045 ? u / 12.92 : Math.pow((u + 0.055) / 1.055, 2.4);
}

function delinearize(u: number): number {
  const v = Math.min(1, Math.max(0, u));
  return v <= 0.0031308 ? 12.92 * v : 1.055 * Math.pow(v, 1 / 2.4) - 0.055;
}

export function srgbToLab(r: number, g: number, b: number): Lab {
  const lin = [linearize(r / 255), linearize(g / 255), linearize(b / 255)];
  const f: number[] = [];
  for (let row = 0; row < 3; row++) {
    const xyz =
      SRGB_TO_XYZ[row][0] * lin[0] +
      SRGB_TO_XYZ[row][1] * lin[1] +
      SRGB_TO_XYZ[row][2] * lin[2];
    const t = xyz / WHITE[row];
    f.push(t > EPS ? Math.cbrt(t) : t * KAPPA_INV + 4 / 29);
  }
  return {
    L: 116 * f[1] - 16,
    a: 500 * (f[0] - f[1]),
    b: 200 * (f[1] - f[2]),
  };
}

export function labToSrgb(c: Lab): [number, number, number] {
  const fy = (c.L + 16) / 116;
  const f = [fy + c.a / 500, fy, fy - c.b / 200];
  const t = f.map((v) =>
    v > 6 / 29 ? v * v * v : (v - 4 / 29) / KAPPA_INV,
  );
  const xyz = t.map((v, idx) => v * WHITE[idx]);
  const out: number[] = [];
  for (let row = 0; row < 3; row++) {
    const lin =
      XYZ_TO_SRGB[row][0] * xyz[0] +
      XYZ_TO_SRGB[row][1] * xyz[1] +
      XYZ_TO_SRGB[row][2] * xyz[2];
    out.push(Math.round(delinearize(lin) * 255));
  }
  return [out[0], out[1], out[2]];
}

/** CIE76 color difference: Euclidean distance in Lab. */
export function deltaE(c1: Lab, c2: Lab): number {
  return Math.sqrt(
    (c1.L - c2.L) ** 2 + (c1.a - c2.a) ** 2 + (c1.b - c2.b) ** 2,
  );
}

export function wheelPosition(c: Lab): { hueDeg: number; radius: number } {
  const chroma = Math.hypot(c.a, c.b);
  if (chroma === 0) return { hueDeg: 0, radius: 0 };
  const hue = ((Math.atan2(c.b, c.a) * 180) / Math.PI + 360) % 360;
  return { hueDeg: hue, radius: Math.min(1, chroma / C_REF) };
}

/** Lab color of a wheel position, on the fixed L = 60 plane. */
export function sampleToColor(hueDeg: number, radius: number): Lab {
  const rad = (hueDeg * Math.PI) / 180;
  return {
    L: WHEEL_L,
    a: radius * C_REF * Math.cos(rad),
    b: radius * C_REF * Math.sin(rad),
  };
}

export function cssColor(c: Lab): string {
  const [r, g, b] = labToSrgb(c);
  return `rgb(${r}, ${g}, ${b})`;
}

export function parseHex(text: string): [number, number, number] {
  const s = text.replace(/^#/, "");
  return [
    parseInt(s.slice(0, 2), 16),
    parseInt(s.slice(2, 4), 16),
    parseInt(s.slice(4, 6), 16),
  ];
}
