"""
Faceted filtering: colors OR-ed, families AND-ed
================================================

Three filter families work together: color samples, a publication-year
range, and size categories. Within the color family every sample widens
the result (OR); across families each active family narrows it (AND).
This script exercises all of it on the sample collection.
"""

# %%
# Setup
# -----
from pathlib import Path

from bricolage.collection import load_manifest_file
from bricolage.facets import (
    ColorSampleFilter,
    FilterState,
    avg_story_count,
    compute_size_categories,
    evaluate,
    resolve_texture_refs,
)
from bricolage.palette import parse_hex, srgb_to_lab, wheel_position

SAMPLE = Path(__file__).resolve().parent.parent / "sample" / "manifest.json"
collection = load_manifest_file(SAMPLE)
size_categories = compute_size_categories(collection)


def sample(hex_color, tolerance=25.0):
    return ColorSampleFilter(
        position=wheel_position(srgb_to_lab(parse_hex(hex_color))),
        tolerance_de=tolerance,
    )


# %%
# The empty filter is a no-op
# ---------------------------
print("everything:", evaluate(FilterState(), collection))

# %%
# One color sample, then two
# --------------------------
# Adding a second sample can only grow the result: matches of either
# sample pass the color family.
reds = evaluate(FilterState(color_samples=(sample("#DC2828"),)), collection)
blues = evaluate(FilterState(color_samples=(sample("#283CC8"),)), collection)
both = evaluate(
    FilterState(color_samples=(sample("#DC2828"), sample("#283CC8"))), collection
)
print("red-ish:     ", reds)
print("blue-ish:    ", blues)
print("red OR blue: ", both)
assert set(both) == set(reds) | set(blues)

# %%
# Year ranges match story-by-story
# --------------------------------
# An anthology passes if any contained story falls inside the (inclusive)
# range, mirroring a timeline brush over story squares.
fifties = FilterState(year_range=(1950, 1959))
ids = evaluate(fifties, collection)
print("has a 1950s story:", ids)
print("average stories per match:", avg_story_count(collection, ids))

# %%
# Combining families narrows
# --------------------------
combined = FilterState(
    color_samples=(sample("#DC2828", tolerance=35.0),),
    year_range=(1880, 1940),
    size_categories=frozenset({0, 1}),
)
print("red AND 1880-1940 AND small:", evaluate(combined, collection, size_categories))

# %%
# Size categories at a glance
# ---------------------------
# Up to four clusters over (width, height); darkness encodes how full each
# cluster is relative to the fullest.
for cat in size_categories:
    print(
        f"category {cat.index}: "
        f"{cat.centroid_width_mm:.0f} x {cat.centroid_height_mm:.0f} mm, "
        f"{len(cat.member_ids)} members, darkness {cat.darkness:.2f}"
    )

# %%
# Texture references
# ------------------
# Each sample square gets the id of the anthology whose dominant color
# sits closest, so the UI can texture the square with that actual cover.
f = resolve_texture_refs(FilterState(color_samples=(sample("#28A03C"),)), collection)
print("green sample textures as:", f.color_samples[0].texture_ref)
