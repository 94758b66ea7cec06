"""
Shelf rows and jittered piles
=============================

Layouts place anthologies in millimeter space. The shelf packs spines
side-by-side in wrapping rows, like books standing on boards; the pile
layout scatters them into seeded, slightly messy stacks that can be
regrouped by hand. Both preserve true relative scale.
"""

# %%
# Setup
# -----
from pathlib import Path

from bricolage.collection import load_manifest_file
from bricolage.layout import (
    move_item,
    pile_layout,
    set_pile_label,
    shelf_layout,
    thickness_mm,
)

SAMPLE = Path(__file__).resolve().parent.parent / "sample" / "manifest.json"
collection = load_manifest_file(SAMPLE)

# %%
# Spine thickness from page count
# -------------------------------
# Scans do not record thickness, so the spine footprint derives from the
# page count: 0.08 mm per leaf plus covers, never thinner than 2 mm.
for pages in (16, 100, 320):
    print(f"{pages:4d} pages -> {thickness_mm(pages):5.1f} mm spine")

# %%
# A 400 mm shelf
# --------------
# Items keep their manifest order left-to-right and wrap when the next
# spine would poke past the right edge. Bottoms align within a row.
shelf = shelf_layout(collection.ids(), collection, shelf_width_mm=400.0)
rows = {}
for p in shelf.placements:
    a = collection[p.anthology_id]
    bottom = round(p.y_mm + a.height_mm, 1)
    rows.setdefault(bottom, []).append(p.anthology_id)
for bottom, members in sorted(rows.items()):
    print(f"row ending at y={bottom:6.1f} mm: {members}")

# %%
# Piles with a fixed seed
# -----------------------
# The same seed always produces the same arrangement, so a session can be
# reproduced from its stored seed alone.
piles = pile_layout(collection.ids(), collection, n_piles=3, seed=42)
again = pile_layout(collection.ids(), collection, n_piles=3, seed=42)
assert piles == again
for pid, pile in piles.piles.items():
    print(f"{pid} at ({pile.anchor_x_mm:.0f}, {pile.anchor_y_mm:.0f}):",
          list(pile.member_ids))

# %%
# Auto-piling by color
# --------------------
# Grouping clusters dominant cover colors instead of dealing round-robin,
# so the red covers gather in one pile and the blues in another.
by_color = pile_layout(collection.ids(), collection, n_piles=3,
                       group_by="color", seed=42)
for pid, pile in by_color.piles.items():
    print(f"{pid}:", list(pile.member_ids))

# %%
# Rearranging by hand
# -------------------
# Moving an item bumps it to the top of the z-order. Dropping it within
# 30 mm of another pile's anchor snaps it into that pile; dropping it in
# the open leaves it floating free.
target = by_color.piles["p1"]
moved = move_item(by_color, "g-001", target.anchor_x_mm + 5.0,
                  target.anchor_y_mm - 3.0)
print("g-001 now in:", moved.placement_of("g-001").pile_id)
print("version:", by_color.version, "->", moved.version)

floated = move_item(moved, "g-002", 900.0, 700.0)
print("g-002 now in:", floated.placement_of("g-002").pile_id)

# %%
# Naming a pile
# -------------
labelled = set_pile_label(floated, "p1", "reds and strays")
print("p1 label:", labelled.piles["p1"].label)
