"""
The millimeter ruler and anchor-preserving zoom
===============================================

The canvas renders at a real physical scale: pixels per millimeter. A
ruler beside the canvas picks tick steps from the 1-2-5 series, and
zooming keeps whatever sits under the cursor pinned in place.
"""

# %%
# Ruler ticks at different zoom levels
# ------------------------------------
# The step is the smallest value from {1, 2, 5} x 10^n that needs at most
# eight intervals across the viewport, so labels never crowd.
from bricolage.layout import ruler_ticks, zoom_at

for ppm in (0.25, 2.0, 10.0):
    spec = ruler_ticks(ppm, viewport_px=400.0)
    ticks = [t.position_mm for t in spec.ticks]
    print(f"{ppm:5.2f} px/mm -> span {400 / ppm:7.1f} mm, ticks {ticks}")

# %%
# Zooming about an anchor
# -----------------------
# zoom_at scales px_per_mm and reports how far the canvas must pan so the
# millimeter coordinate under the anchor pixel stays put.
spec = ruler_ticks(2.0, viewport_px=400.0)
anchor_mm = 75.0
anchor_px = spec.mm_to_px(anchor_mm)
print(f"before: {anchor_mm} mm sits at {anchor_px:.0f} px")

spec2, (dx, dy) = zoom_at(spec, factor=2.0, anchor_px=(anchor_px, 0.0))
print(f"after doubling: px_per_mm={spec2.px_per_mm}, pan by ({dx:.0f}, {dy:.0f}) px")
print(f"{anchor_mm} mm now renders at {spec2.mm_to_px(anchor_mm) - dx:.0f} px (unchanged)")

# %%
# Bounds are clamped
# ------------------
# Zoom stays between 0.1 and 20 px/mm no matter how hard the wheel spins.
spec3, _ = zoom_at(spec, factor=1e6, anchor_px=(0.0, 0.0))
print("huge zoom clamps to", spec3.px_per_mm, "px/mm")

# %%
# Round trips are exact
# ---------------------
# Converting mm to px and back is stable to floating-point noise, which the
# drag-to-zoom interaction depends on.
spec4 = spec3
for factor in (0.33, 3.7, 0.5, 2.0):
    spec4, _ = zoom_at(spec4, factor, anchor_px=(123.0, 45.0))
value = 1234.5678
print("round trip error:", abs(spec4.px_to_mm(spec4.mm_to_px(value)) - value))
