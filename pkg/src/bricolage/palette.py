"""Perceptual color math and dominant-color extraction for cover images.

CIELAB (D65, 2 degree observer) is the working space throughout: palette
entries, color distances, and the color-wheel geometry of the filter widget
all live in Lab. The white point is derived from the sRGB matrix itself
(``M @ (1,1,1)``) so neutral inputs land on a* = b* = 0 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .errors import EmptyImage
from .kmeans import kmeans

# chroma that maps to the wheel rim, and the fixed lightness plane the
# wheel's sample squares live on
C_REF = 100.0
WHEEL_L = 60.0

# longest edge after ingest downsampling
_MAX_EDGE = 256

_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_SRGB = np.linalg.inv(_SRGB_TO_XYZ)
_WHITE = _SRGB_TO_XYZ.sum(axis=1)

_EPS = (6.0 / 29.0) ** 3
_KAPPA_INV = 1.0 / (3.0 * (6.0 / 29.0) ** 2)


@dataclass(frozen=True, order=True)
class LabColor:
    L: float
    a: float
    b: float

    @property
    def chroma(self) -> float:
        return math.hypot(self.a, self.b)


@dataclass(frozen=True)
class WheelPosition:
    """Polar position on the color wheel: hue in [0, 360), radius in [0, 1]."""

    hue_deg: float
    radius: float


@dataclass(frozen=True)
class PaletteEntry:
    color: LabColor
    srgb: tuple[int, int, int]
    proportion: float

    def to_json(self) -> dict:
        return {
            "lab": [self.color.L, self.color.a, self.color.b],
            "srgb": srgb_hex(self.srgb),
            "proportion": self.proportion,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PaletteEntry":
        L, a, b = obj["lab"]
        return cls(color=LabColor(L, a, b), srgb=parse_hex(obj["srgb"]),
                   proportion=obj["proportion"])


@dataclass(frozen=True)
class ColorPalette:
    """Dominant colors of one cover, sorted by proportion descending.

    Proportions sum to 1; ties in proportion break by ascending (L, a, b).
    """

    entries: tuple[PaletteEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("palette must have at least one entry")
        total = sum(e.proportion for e in self.entries)
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"palette proportions sum to {total}, not 1")

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, obj: list[dict]) -> "ColorPalette":
        return cls(entries=tuple(PaletteEntry.from_json(e) for e in obj))


# --- sRGB <-> CIELAB ---------------------------------------------------------

def _linearize(u: np.ndarray) -> np.ndarray:
    return np.where(u <= 0.04045, u / 12.92, ((u + 0.055) / 1.055) ** 2.4)


def _delinearize(u: np.ndarray) -> np.ndarray:
    u = np.clip(u, 0.0, 1.0)
    return np.where(u <= 0.0031308, 12.92 * u, 1.055 * u ** (1.0 / 2.4) - 0.055)


def srgb_array_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Vectorized conversion of (n, 3) 8-bit sRGB rows to (n, 3) Lab rows."""
    lin = _linearize(np.asarray(rgb, dtype=np.float64) / 255.0)
    xyz = lin @ _SRGB_TO_XYZ.T
    t = xyz / _WHITE
    f = np.where(t > _EPS, np.cbrt(t), t * _KAPPA_INV + 4.0 / 29.0)
    lab = np.empty_like(f)
    lab[:, 0] = 116.0 * f[:, 1] - 16.0
    lab[:, 1] = 500.0 * (f[:, 0] - f[:, 1])
    lab[:, 2] = 200.0 * (f[:, 1] - f[:, 2])
    return lab


def lab_array_to_srgb(lab: np.ndarray) -> np.ndarray:
    """Vectorized (n, 3) Lab rows to 8-bit sRGB rows, gamut-clamped."""
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[:, 0] + 16.0) / 116.0
    fx = fy + lab[:, 1] / 500.0
    fz = fy - lab[:, 2] / 200.0
    f = np.stack([fx, fy, fz], axis=1)
    t = np.where(f > 6.0 / 29.0, f**3, (f - 4.0 / 29.0) / _KAPPA_INV)
    lin = (t * _WHITE) @ _XYZ_TO_SRGB.T
    return np.round(_delinearize(lin) * 255.0).astype(np.uint8)


def srgb_to_lab(rgb: tuple[int, int, int]) -> LabColor:
    """Convert one 8-bit sRGB triple to Lab."""
    row = srgb_array_to_lab(np.array([rgb]))[0]
    return LabColor(float(row[0]), float(row[1]), float(row[2]))


def lab_to_srgb(c: LabColor) -> tuple[int, int, int]:
    """Render a Lab color as the nearest in-gamut 8-bit sRGB triple."""
    r, g, b = lab_array_to_srgb(np.array([[c.L, c.a, c.b]]))[0]
    return int(r), int(g), int(b)


def srgb_hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02X}{:02X}{:02X}".format(*rgb)


def parse_hex(text: str) -> tuple[int, int, int]:
    s = text.lstrip("#")
    if len(s) != 6:
        raise ValueError(f"not a #RRGGBB color: {text!r}")
    return tuple(int(s[i : i + 2], 16) for i in (0, 2, 4))


def delta_e(c1: LabColor, c2: LabColor) -> float:
    """CIE76 color difference: Euclidean distance in Lab."""
    return math.sqrt((c1.L - c2.L) ** 2 + (c1.a - c2.a) ** 2 + (c1.b - c2.b) ** 2)


# --- color wheel --------------------------------------------------------------

def wheel_position(c: LabColor) -> WheelPosition:
    """Project a Lab color onto the filter wheel (hue angle, clamped chroma)."""
    chroma = c.chroma
    if chroma == 0.0:
        return WheelPosition(hue_deg=0.0, radius=0.0)
    hue = math.degrees(math.atan2(c.b, c.a)) % 360.0
    return WheelPosition(hue_deg=hue, radius=min(1.0, chroma / C_REF))


def sample_to_color(w: WheelPosition) -> LabColor:
    """Lab color of a wheel position, on the fixed L=60 lightness plane.

    Inverse of wheel_position on that plane for chroma <= C_REF.
    """
    rad = math.radians(w.hue_deg)
    return LabColor(
        L=WHEEL_L,
        a=w.radius * C_REF * math.cos(rad),
        b=w.radius * C_REF * math.sin(rad),
    )


# --- palette extraction --------------------------------------------------------

def _downsample(img: Image.Image) -> Image.Image:
    w, h = img.size
    if w <= _MAX_EDGE and h <= _MAX_EDGE:
        return img
    scale = min(_MAX_EDGE / w, _MAX_EDGE / h)
    return img.resize(
        (max(1, int(w * scale)), max(1, int(h * scale))), Image.NEAREST
    )


def _image_pixels(image) -> np.ndarray:
    """Coerce a PIL image or (h, w, 3) array into (n, 3) uint8 pixel rows."""
    if isinstance(image, Image.Image):
        arr = np.asarray(_downsample(image.convert("RGB")), dtype=np.uint8)
    else:
        arr = np.asarray(image, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError("expected an (h, w, 3) RGB array")
    return arr.reshape(-1, 3)


def extract_palette(image, k: int = 5) -> ColorPalette:
    """Dominant colors of an image by k-means in Lab space.

    Deterministic: fixed nearest-neighbor downsampling and seeded k-means++
    initialization. Images with d <= k distinct colors yield exactly d
    entries at their exact pixel frequencies.
    """
    if not 1 <= k <= 16:
        raise ValueError(f"k={k} must be in 1..16")
    pixels = _image_pixels(image)
    if pixels.shape[0] == 0:
        raise EmptyImage("image has no pixels")
    uniq, counts = np.unique(pixels, axis=0, return_counts=True)
    total = float(counts.sum())
    if uniq.shape[0] <= k:
        labs = srgb_array_to_lab(uniq)
        entries = [
            PaletteEntry(
                color=LabColor(*map(float, labs[i])),
                srgb=tuple(int(v) for v in uniq[i]),
                proportion=float(counts[i]) / total,
            )
            for i in range(uniq.shape[0])
        ]
    else:
        labs = srgb_array_to_lab(uniq)
        result = kmeans(labs, k, seed=0, weights=counts.astype(np.float64))
        entries = []
        for j in range(k):
            mass = float(counts[result.labels == j].sum())
            if mass == 0.0:
                continue
            color = LabColor(*map(float, result.centroids[j]))
            entries.append(
                PaletteEntry(
                    color=color,
                    srgb=lab_to_srgb(color),
                    proportion=mass / total,
                )
            )
    entries.sort(key=lambda e: (-e.proportion, e.color))
    return ColorPalette(entries=tuple(entries))


def palette_from_file(path, k: int = 5) -> ColorPalette:
    """Extract a palette from a PNG or JPEG file."""
    with Image.open(path) as img:
        return extract_palette(img, k)


def dominant_color(p: ColorPalette) -> LabColor:
    """Highest-proportion palette entry's color."""
    return p.entries[0].color


def dominant_srgb(p: ColorPalette) -> tuple[int, int, int]:
    """sRGB rendering of the dominant palette entry."""
    return p.entries[0].srgb
