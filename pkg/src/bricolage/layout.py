"""Spatial arrangement in millimeter space, plus physical-scale math.

All coordinates are millimeters on an unbounded canvas with the origin at
the top-left; a placement's (x_mm, y_mm) is the top-left corner of the
item's unrotated footprint. Shelf layouts stand spines side by side at true
relative scale (spine width from page count, height from physical height);
pile layouts stack whole covers on jittered anchors. Pile layouts and their
jitter are fully seed-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .collection import Collection
from .errors import ShelfTooNarrow, TooManyPiles, UnknownId, WrongLayoutKind
from .kmeans import kmeans
from .palette import dominant_color

# spine thickness model: leaf thickness per page plus covers, with a floor
# so even single-leaf fanzines stay visible and clickable
MM_PER_PAGE = 0.08
COVER_ALLOWANCE_MM = 1.0
MIN_THICKNESS_MM = 2.0

SHELF_ROW_GAP_MM = 25.0
DEFAULT_SPINE_GAP_MM = 3.0

PILE_SNAP_RADIUS_MM = 30.0
PILE_JITTER_MM = 8.0
PILE_MAX_ROTATION_DEG = 10.0
PILE_MARGIN_MM = 60.0

MIN_PX_PER_MM = 0.1
MAX_PX_PER_MM = 20.0
MAX_RULER_INTERVALS = 8


@dataclass(frozen=True)
class Placement:
    anthology_id: str
    x_mm: float
    y_mm: float
    rotation_deg: float
    z_order: int
    pile_id: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.anthology_id,
            "x_mm": self.x_mm,
            "y_mm": self.y_mm,
            "rotation_deg": self.rotation_deg,
            "z_order": self.z_order,
            "pile_id": self.pile_id,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Placement":
        return cls(
            anthology_id=obj["id"],
            x_mm=obj["x_mm"],
            y_mm=obj["y_mm"],
            rotation_deg=obj["rotation_deg"],
            z_order=obj["z_order"],
            pile_id=obj.get("pile_id"),
        )


@dataclass(frozen=True)
class Pile:
    anchor_x_mm: float
    anchor_y_mm: float
    member_ids: tuple[str, ...]
    label: str | None = None

    def to_json(self) -> dict:
        return {
            "anchor": [self.anchor_x_mm, self.anchor_y_mm],
            "members": list(self.member_ids),
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Pile":
        ax, ay = obj["anchor"]
        return cls(
            anchor_x_mm=ax,
            anchor_y_mm=ay,
            member_ids=tuple(obj["members"]),
            label=obj.get("label"),
        )


@dataclass(frozen=True)
class LayoutState:
    kind: str  # "shelf" | "pile"
    placements: tuple[Placement, ...]
    piles: dict[str, Pile]
    seed: int
    version: int = 0

    def placement_of(self, anthology_id: str) -> Placement:
        for p in self.placements:
            if p.anthology_id == anthology_id:
                return p
        raise UnknownId(f"no placement for id {anthology_id!r}", id=anthology_id)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "version": self.version,
            "placements": [p.to_json() for p in self.placements],
            "piles": {pid: pile.to_json() for pid, pile in self.piles.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LayoutState":
        return cls(
            kind=obj["kind"],
            seed=obj["seed"],
            version=obj["version"],
            placements=tuple(Placement.from_json(p) for p in obj["placements"]),
            piles={pid: Pile.from_json(p) for pid, p in obj["piles"].items()},
        )


def thickness_mm(page_count: int) -> float:
    """Spine thickness proxy for shelf rendering, in millimeters."""
    if page_count < 1:
        raise ValueError(f"page_count must be >= 1, got {page_count}")
    return max(MIN_THICKNESS_MM, MM_PER_PAGE * page_count + COVER_ALLOWANCE_MM)


def _lookup(ids, c: Collection):
    items = []
    for aid in ids:
        if aid not in c:
            raise UnknownId(f"unknown anthology id {aid!r}", id=aid)
        items.append(c[aid])
    return items


def shelf_layout(
    ids,
    c: Collection,
    shelf_width_mm: float,
    gap_mm: float = DEFAULT_SPINE_GAP_MM,
) -> LayoutState:
    """Stand spines side by side, wrapping to new shelf rows as needed.

    Items keep the given order left to right; bottoms align within a row
    (books stand on the shelf). Each successive row sits below the previous
    row's tallest spine plus a fixed shelf gap.
    """
    items = _lookup(ids, c)
    widths = [thickness_mm(a.page_count) for a in items]
    if widths and max(widths) > shelf_width_mm:
        raise ShelfTooNarrow(
            f"spine of {max(widths)} mm exceeds shelf width {shelf_width_mm} mm"
        )

    # first pass: partition into rows and record x offsets
    rows: list[list[tuple[int, float]]] = [[]]  # (item index, x_mm)
    x = 0.0
    for i, w in enumerate(widths):
        if rows[-1] and x + w > shelf_width_mm:
            rows.append([])
            x = 0.0
        rows[-1].append((i, x))
        x += w + gap_mm

    # second pass: stack rows, aligning spine bottoms per row
    placements = []
    top = 0.0
    for row in rows:
        if not row:
            continue
        row_height = max(items[i].height_mm for i, _ in row)
        for i, x_mm in row:
            placements.append(
                Placement(
                    anthology_id=items[i].id,
                    x_mm=x_mm,
                    y_mm=top + row_height - items[i].height_mm,
                    rotation_deg=0.0,
                    z_order=i,
                    pile_id=None,
                )
            )
        top += row_height + SHELF_ROW_GAP_MM
    return LayoutState(
        kind="shelf", placements=tuple(placements), piles={}, seed=0, version=0
    )


def _color_grouping(items, n_piles: int, seed: int) -> list[int]:
    """Pile index per item from k-means over dominant cover colors.

    Color can only separate as many groups as there are distinct dominant
    colors, so the effective pile count clamps to that.
    """
    dominants = [dominant_color(a.palette) for a in items]
    colors = np.array([(col.L, col.a, col.b) for col in dominants])
    k = min(n_piles, np.unique(colors, axis=0).shape[0])
    result = kmeans(colors, k, seed=seed)
    return [int(j) for j in result.labels]


def pile_layout(
    ids,
    c: Collection,
    n_piles: int,
    group_by: str = "none",
    seed: int = 0,
) -> LayoutState:
    """Stack items onto jittered pile anchors laid out on a loose grid.

    ``group_by="color"`` assigns items to piles by k-means over dominant
    cover colors; otherwise round-robin in id order. Within a pile, later
    items sit on top. Deterministic for fixed (ids, n_piles, group_by, seed).
    """
    items = _lookup(ids, c)
    if n_piles < 1:
        raise ValueError(f"n_piles must be >= 1, got {n_piles}")
    if n_piles > len(items):
        raise TooManyPiles(f"{n_piles} piles requested for {len(items)} items")
    if group_by not in ("none", "color"):
        raise ValueError(f"group_by must be 'none' or 'color', got {group_by!r}")

    if group_by == "color":
        pile_of = _color_grouping(items, n_piles, seed)
    else:
        pile_of = [i % n_piles for i in range(len(items))]
    used = sorted(set(pile_of))
    pile_index = {old: new for new, old in enumerate(used)}
    pile_of = [pile_index[j] for j in pile_of]
    n_used = len(used)

    rng = np.random.default_rng(seed)
    max_w = max(a.width_mm for a in items)
    max_h = max(a.height_mm for a in items)
    pitch_x = max_w + PILE_MARGIN_MM
    pitch_y = max_h + PILE_MARGIN_MM
    cols = math.ceil(math.sqrt(n_used))

    anchors = []
    for j in range(n_used):
        col, row = j % cols, j // cols
        anchors.append(
            (
                (col + 0.5) * pitch_x + rng.uniform(-0.15, 0.15) * pitch_x,
                (row + 0.5) * pitch_y + rng.uniform(-0.15, 0.15) * pitch_y,
            )
        )

    members: list[list[int]] = [[] for _ in range(n_used)]
    for i, j in enumerate(pile_of):
        members[j].append(i)

    placements = []
    piles: dict[str, Pile] = {}
    z = 0
    for j in range(n_used):
        ax, ay = anchors[j]
        pid = f"p{j}"
        for i in members[j]:
            placements.append(
                Placement(
                    anthology_id=items[i].id,
                    x_mm=ax + rng.uniform(-PILE_JITTER_MM, PILE_JITTER_MM),
                    y_mm=ay + rng.uniform(-PILE_JITTER_MM, PILE_JITTER_MM),
                    rotation_deg=rng.uniform(
                        -PILE_MAX_ROTATION_DEG, PILE_MAX_ROTATION_DEG
                    ),
                    z_order=z,
                    pile_id=pid,
                )
            )
            z += 1
        piles[pid] = Pile(
            anchor_x_mm=ax,
            anchor_y_mm=ay,
            member_ids=tuple(items[i].id for i in members[j]),
            label=None,
        )
    return LayoutState(
        kind="pile", placements=tuple(placements), piles=piles, seed=seed, version=0
    )


def move_item(layout: LayoutState, anthology_id: str, x_mm: float, y_mm: float) -> LayoutState:
    """Reposition one pile-mode item; it surfaces on top of everything.

    Dropping within the snap radius of a pile anchor joins that pile
    (nearest wins); dropping elsewhere leaves the item pile-less. Exactly
    one placement changes; the version increments.
    """
    if layout.kind != "pile":
        raise WrongLayoutKind("items can only be moved in a pile layout")
    old = layout.placement_of(anthology_id)

    candidates = sorted(
        (
            (math.hypot(x_mm - p.anchor_x_mm, y_mm - p.anchor_y_mm), pid)
            for pid, p in layout.piles.items()
        ),
    )
    new_pile: str | None = None
    if candidates and candidates[0][0] <= PILE_SNAP_RADIUS_MM:
        new_pile = candidates[0][1]

    top_z = max(p.z_order for p in layout.placements) + 1
    moved = replace(
        old, x_mm=x_mm, y_mm=y_mm, z_order=top_z, pile_id=new_pile
    )
    placements = tuple(moved if p is old else p for p in layout.placements)

    piles = dict(layout.piles)
    if old.pile_id is not None and old.pile_id != new_pile:
        prev = piles[old.pile_id]
        piles[old.pile_id] = replace(
            prev,
            member_ids=tuple(m for m in prev.member_ids if m != anthology_id),
        )
    if new_pile is not None and new_pile != old.pile_id:
        dest = piles[new_pile]
        piles[new_pile] = replace(
            dest, member_ids=dest.member_ids + (anthology_id,)
        )
    return replace(layout, placements=placements, piles=piles, version=layout.version + 1)


def set_pile_label(layout: LayoutState, pile_id: str, label: str | None) -> LayoutState:
    """Attach or clear a free-text label on one pile."""
    if pile_id not in layout.piles:
        raise UnknownId(f"unknown pile id {pile_id!r}", id=pile_id)
    piles = dict(layout.piles)
    piles[pile_id] = replace(piles[pile_id], label=label)
    return replace(layout, piles=piles, version=layout.version + 1)


# --- physical scale -------------------------------------------------------------

@dataclass(frozen=True)
class RulerTick:
    position_mm: float
    label: str


@dataclass(frozen=True)
class ScaleSpec:
    """Pixels-per-millimeter mapping with the on-screen ruler derived from it."""

    px_per_mm: float
    viewport_px: float
    min_px_per_mm: float = MIN_PX_PER_MM
    max_px_per_mm: float = MAX_PX_PER_MM
    ticks: tuple[RulerTick, ...] = ()

    def mm_to_px(self, mm: float) -> float:
        return mm * self.px_per_mm

    def px_to_mm(self, px: float) -> float:
        return px / self.px_per_mm

    def to_json(self) -> dict:
        return {
            "px_per_mm": self.px_per_mm,
            "viewport_px": self.viewport_px,
            "min_px_per_mm": self.min_px_per_mm,
            "max_px_per_mm": self.max_px_per_mm,
            "ticks": [
                {"position_mm": t.position_mm, "label": t.label} for t in self.ticks
            ],
        }


def _tick_step(span_mm: float) -> float:
    """Smallest 1/2/5-decade step giving at most 8 intervals over the span."""
    if span_mm <= 0:
        return 1.0
    exponent = math.floor(math.log10(span_mm / (MAX_RULER_INTERVALS * 5)))
    while True:
        for mantissa in (1.0, 2.0, 5.0):
            step = mantissa * 10.0**exponent
            if math.floor(span_mm / step + 1e-9) <= MAX_RULER_INTERVALS:
                return step
        exponent += 1


def _ticks_for(px_per_mm: float, viewport_px: float) -> tuple[RulerTick, ...]:
    span_mm = viewport_px / px_per_mm
    step = _tick_step(span_mm)
    count = math.floor(span_mm / step + 1e-9) + 1
    return tuple(
        RulerTick(position_mm=i * step, label=f"{i * step:g} mm")
        for i in range(count)
    )


def ruler_ticks(px_per_mm: float, viewport_px: float) -> ScaleSpec:
    """Scale measure for a viewport: ticks at 1/2/5-decade multiples."""
    if not MIN_PX_PER_MM <= px_per_mm <= MAX_PX_PER_MM:
        raise ValueError(
            f"px_per_mm {px_per_mm} outside zoom bounds "
            f"[{MIN_PX_PER_MM}, {MAX_PX_PER_MM}]"
        )
    if viewport_px <= 0:
        raise ValueError(f"viewport_px must be positive, got {viewport_px}")
    return ScaleSpec(
        px_per_mm=px_per_mm,
        viewport_px=viewport_px,
        ticks=_ticks_for(px_per_mm, viewport_px),
    )


def zoom_at(
    s: ScaleSpec, factor: float, anchor_px: tuple[float, float]
) -> tuple[ScaleSpec, tuple[float, float]]:
    """Zoom about a canvas point, keeping the mm under the anchor fixed.

    Returns the new scale (ruler recomputed for the same viewport) plus the
    (dx, dy) to add to the view's scroll offset so the anchored point stays
    put on screen. The anchor is in canvas (content) pixels. The new
    px_per_mm clamps to the zoom bounds.
    """
    if factor <= 0:
        raise ValueError(f"zoom factor must be positive, got {factor}")
    new_ppm = min(s.max_px_per_mm, max(s.min_px_per_mm, s.px_per_mm * factor))
    ratio = new_ppm / s.px_per_mm
    new_spec = replace(
        s, px_per_mm=new_ppm, ticks=_ticks_for(new_ppm, s.viewport_px)
    )
    ax, ay = anchor_px
    return new_spec, (ax * (ratio - 1.0), ay * (ratio - 1.0))
