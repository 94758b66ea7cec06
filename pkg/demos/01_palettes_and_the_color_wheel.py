"""
Cover palettes and the color wheel
==================================

Every anthology carries a small palette of dominant cover colors, extracted
once at ingest. This walk-through loads the bundled sample collection,
inspects a few palettes, and maps colors onto the polar color wheel that
backs the color filter widget.
"""

# %%
# Load the sample collection
# --------------------------
# The manifest lives next to its images; palette extraction happens during
# the load, so every anthology below already has its colors attached.
from pathlib import Path

from bricolage.collection import load_manifest_file

SAMPLE = Path(__file__).resolve().parent.parent / "sample" / "manifest.json"
collection = load_manifest_file(SAMPLE)
print(f"loaded {len(collection)} anthologies")

# %%
# Dominant colors
# ---------------
# Palette entries are sorted by pixel share, so the first entry is the
# cover's dominant color. Two-tone covers keep both tones with their
# actual proportions.
for a in collection:
    top = a.palette.entries[0]
    parts = ", ".join(
        f"{e.to_json()['srgb']} ({e.proportion:.0%})" for e in a.palette.entries
    )
    print(f"{a.id}  {a.title:<30} {parts}")

# %%
# From Lab to wheel coordinates
# -----------------------------
# The filter widget is a chroma disk at fixed lightness: hue is the angle,
# radius is chroma relative to C_REF = 100. Saturated covers land near the
# rim, muted ones near the gray center.
from bricolage.palette import dominant_color, wheel_position

for a in collection:
    w = wheel_position(dominant_color(a.palette))
    print(f"{a.id}  hue {w.hue_deg:6.1f} deg  radius {w.radius:.2f}")

# %%
# Perceptual distance
# -------------------
# CIE76 delta-E is plain Euclidean distance in Lab. A distance around 2 is
# barely noticeable; 20 reads as a clearly different color and is the
# default search tolerance.
from bricolage.palette import delta_e, srgb_to_lab

red = srgb_to_lab((220, 40, 40))
orange = srgb_to_lab((235, 130, 40))
blue = srgb_to_lab((40, 60, 200))
print(f"red vs orange: {delta_e(red, orange):5.1f}")
print(f"red vs blue:   {delta_e(red, blue):5.1f}")

# %%
# Round trip through a sample square
# ----------------------------------
# Dragging a sample square to (hue, radius) selects the Lab color on the
# L=60 plane; the mapping inverts exactly inside the wheel.
from bricolage.palette import WheelPosition, sample_to_color

w = WheelPosition(hue_deg=40.0, radius=0.8)
c = sample_to_color(w)
print(f"sample at hue 40, radius 0.8 -> Lab({c.L:.0f}, {c.a:.1f}, {c.b:.1f})")
print(f"back on the wheel -> {wheel_position(c)}")
