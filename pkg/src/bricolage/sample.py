"""Procedurally generated sample collection: 10 covers with known palettes.

Solid and two-tone covers whose exact pixel shares are known by
construction, four distinct physical sizes (one per size cluster), story
years spanning 1840 to 1990, and a mix of present and absent spine images.
Everything is deterministic, so the shipped fixture can be regenerated
bit-for-bit and golden tests can rely on it.
"""

from __future__ import annotations

import json
from pathlib import Path

from PIL import Image

# physical size clusters (width_mm, height_mm)
SIZE_SMALL = (105, 148)
SIZE_MEDIUM = (148, 210)
SIZE_LARGE = (210, 297)
SIZE_OVERSIZE = (250, 353)

RED = (220, 40, 40)
BLUE = (40, 60, 200)
GREEN = (40, 160, 60)
YELLOW = (230, 200, 40)
PURPLE = (140, 60, 170)
ORANGE = (235, 130, 40)
GRAY = (128, 128, 128)
CREAM = (245, 240, 220)
BLACK = (25, 25, 25)

# id, title, (w, h) mm, pages, colors (one = solid, two = split at 60%),
# spine color or None, materials (cover, page, binding), [(story, year), ...]
SAMPLE_ROWS = [
    ("g-001", "Signals from the Red Planet", SIZE_SMALL, 48, [RED], RED,
     ("construction paper", "newsprint", "staples"),
     [("The Iron Dawn", 1840), ("Harvest of Mars", 1851), ("The Last Canal", 1862)]),
    ("g-002", "Deep Orbit Stories", SIZE_MEDIUM, 180, [BLUE], BLUE,
     ("cardstock", "pulp paper", "sewn"),
     [("Gravity's Harbor", 1923), ("Cold Starlight", 1931)]),
    ("g-003", "Crimson Horizons", SIZE_MEDIUM, 96, [RED, CREAM], None,
     ("wallpaper scrap", "typing paper", "glue"),
     [("Ash and Ember", 1888), ("The Scarlet Engine", 1890), ("Red Weather", 1923)]),
    ("g-004", "The Verdant Moon Reader", SIZE_LARGE, 240, [GREEN], GREEN,
     ("linen board", "pulp paper", "sewn"),
     [("Terraria", 1946), ("The Gardeners", 1950), ("Chlorophyll Dreams", 1955),
      ("Canopy World", 1961)]),
    ("g-005", "Twin Suns Quarterly", SIZE_SMALL, 32, [BLUE, YELLOW], None,
     ("construction paper", "newsprint", "staples"),
     [("Binary Noon", 1935), ("Eclipse Season", 1938)]),
    ("g-006", "Amber Futures", SIZE_MEDIUM, 128, [YELLOW], None,
     ("kraft paper", "typing paper", "staples"),
     [("The Honey Machines", 1948), ("Golden Section", 1952), ("Saffron Sky", 1959)]),
    ("g-007", "Violet Transmissions", SIZE_OVERSIZE, 320, [PURPLE], PURPLE,
     ("cloth board", "coated paper", "sewn"),
     [("Ultraviolet", 1967), ("The Spectrum Door", 1970), ("Indigo Protocol", 1973),
      ("Afterimage", 1978), ("Wavelength Zero", 1981)]),
    ("g-008", "Night Garden Tales", SIZE_LARGE, 112, [GREEN, BLACK], GREEN,
     ("construction paper", "newsprint", "glue"),
     [("Moss Empire", 1958), ("The Dark Arboretum", 1965)]),
    ("g-009", "Copper Sunset Annual", SIZE_SMALL, 64, [ORANGE], None,
     ("kraft paper", "pulp paper", "staples"),
     [("Rust Belt Rockets", 1944), ("The Long Dusk", 1949), ("Ember Town", 1957)]),
    ("g-010", "Grey Morning Omnibus", SIZE_OVERSIZE, 288, [GRAY], GRAY,
     ("board", "coated paper", "sewn"),
     [("Fog Index", 1975), ("Static", 1983), ("The Last Broadcast", 1990)]),
]

TWO_TONE_SPLIT = 0.6  # top share of a two-tone cover


def _cover_image(width_mm, height_mm, colors) -> Image.Image:
    # ~1 px per mm keeps images under the ingest downsampling threshold,
    # so two-tone pixel shares survive exactly
    w, h = int(width_mm), int(height_mm)
    img = Image.new("RGB", (w, h), colors[0])
    if len(colors) == 2:
        split = int(h * TWO_TONE_SPLIT)
        img.paste(colors[1], (0, split, w, h))
    return img


def _spine_image(height_mm, page_count, color) -> Image.Image:
    from .layout import thickness_mm

    return Image.new(
        "RGB", (max(2, int(thickness_mm(page_count))), int(height_mm)), color
    )


def sample_manifest() -> dict:
    """The sample manifest document (image paths relative to the image root)."""
    anthologies = []
    for aid, title, (w, h), pages, colors, spine, materials, stories in SAMPLE_ROWS:
        anthologies.append(
            {
                "id": aid,
                "title": title,
                "height_mm": h,
                "width_mm": w,
                "page_count": pages,
                "cover_material": materials[0],
                "page_material": materials[1],
                "binding": materials[2],
                "cover_image": f"images/{aid}-cover.png",
                "spine_image": f"images/{aid}-spine.png" if spine else None,
                "stories": [
                    {"title": t, "publication_year": y} for t, y in stories
                ],
            }
        )
    return {"anthologies": anthologies}


def write_sample_collection(dest: str | Path) -> Path:
    """Write the manifest and all cover/spine images; returns the manifest path."""
    dest = Path(dest)
    (dest / "images").mkdir(parents=True, exist_ok=True)
    for aid, _, (w, h), pages, colors, spine, _, _ in SAMPLE_ROWS:
        _cover_image(w, h, colors).save(dest / "images" / f"{aid}-cover.png")
        if spine:
            _spine_image(h, pages, spine).save(dest / "images" / f"{aid}-spine.png")
    manifest_path = dest / "manifest.json"
    manifest_path.write_text(
        json.dumps(sample_manifest(), indent=2) + "\n", encoding="utf-8"
    )
    return manifest_path
