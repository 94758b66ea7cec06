"""Filter families over a collection and the data behind the filter widgets.

Three independent filter families, combined with AND across families and OR
within the color family:

* color samples — wheel positions matched against palette entries by CIE76
  distance, gated by a dominance threshold;
* publication years — an anthology passes if any contained story falls in
  the (inclusive) range;
* size categories — membership in k-means clusters over (width, height).

Empty families are no-ops, so the empty filter returns the whole collection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .collection import Anthology, Collection, year_span
from .errors import EmptyCollection, InvalidFilter, UnknownId
from .kmeans import kmeans_best
from .palette import (
    WheelPosition,
    delta_e,
    dominant_color,
    dominant_srgb,
    sample_to_color,
    srgb_hex,
)

DEFAULT_TOLERANCE_DE = 20.0
DEFAULT_MIN_PROPORTION = 0.15

MAX_SIZE_CATEGORIES = 4
SIZE_CLUSTER_RESTARTS = 200


@dataclass(frozen=True)
class ColorSampleFilter:
    """One sample square on the color wheel.

    Matches palette entries within ``tolerance_de`` of the sample color that
    hold at least ``min_proportion`` of the cover. ``texture_ref`` is filled
    by the engine with the closest-covered anthology so the UI can texture
    the square with real cover material.
    """

    position: WheelPosition
    tolerance_de: float = DEFAULT_TOLERANCE_DE
    min_proportion: float = DEFAULT_MIN_PROPORTION
    texture_ref: str | None = None

    def __post_init__(self):
        if self.tolerance_de <= 0:
            raise InvalidFilter(f"tolerance_de must be positive, got {self.tolerance_de}")
        if not 0.0 <= self.min_proportion <= 1.0:
            raise InvalidFilter(
                f"min_proportion must be in [0, 1], got {self.min_proportion}"
            )

    def to_json(self) -> dict:
        obj = {
            "hue_deg": self.position.hue_deg,
            "radius": self.position.radius,
            "tolerance_de": self.tolerance_de,
            "min_proportion": self.min_proportion,
        }
        if self.texture_ref is not None:
            obj["texture_ref"] = self.texture_ref
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ColorSampleFilter":
        try:
            position = WheelPosition(
                hue_deg=float(obj["hue_deg"]), radius=float(obj["radius"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidFilter(f"bad color sample: {exc}") from None
        return cls(
            position=position,
            tolerance_de=float(obj.get("tolerance_de", DEFAULT_TOLERANCE_DE)),
            min_proportion=float(obj.get("min_proportion", DEFAULT_MIN_PROPORTION)),
        )


@dataclass(frozen=True)
class FilterState:
    """The three filter families; empty families are no-ops."""

    color_samples: tuple[ColorSampleFilter, ...] = ()
    year_range: tuple[int, int] | None = None
    size_categories: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.year_range is not None:
            lo, hi = self.year_range
            if lo > hi:
                raise InvalidFilter(f"year_range min {lo} > max {hi}")
        bad = [i for i in self.size_categories
               if not 0 <= i < MAX_SIZE_CATEGORIES]
        if bad:
            raise InvalidFilter(f"size category indices out of range: {sorted(bad)}")

    def is_empty(self) -> bool:
        return (
            not self.color_samples
            and self.year_range is None
            and not self.size_categories
        )

    def to_json(self) -> dict:
        return {
            "color_samples": [s.to_json() for s in self.color_samples],
            "year_range": list(self.year_range) if self.year_range else None,
            "size_categories": sorted(self.size_categories),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FilterState":
        if not isinstance(obj, dict):
            raise InvalidFilter("filter must be a JSON object")
        samples = obj.get("color_samples") or []
        if not isinstance(samples, list):
            raise InvalidFilter("color_samples must be a list")
        year_range = obj.get("year_range")
        if year_range is not None:
            try:
                lo, hi = year_range
                year_range = (int(lo), int(hi))
            except (TypeError, ValueError) as exc:
                raise InvalidFilter(f"bad year_range: {exc}") from None
        sizes = obj.get("size_categories") or []
        try:
            sizes = frozenset(int(i) for i in sizes)
        except (TypeError, ValueError) as exc:
            raise InvalidFilter(f"bad size_categories: {exc}") from None
        return cls(
            color_samples=tuple(ColorSampleFilter.from_json(s) for s in samples),
            year_range=year_range,
            size_categories=sizes,
        )


@dataclass(frozen=True)
class SizeCategory:
    """One of up to four size clusters, rendered as a darkness-coded rectangle."""

    index: int
    centroid_width_mm: float
    centroid_height_mm: float
    member_ids: tuple[str, ...]
    darkness: float  # member count / largest category's member count

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "centroid_width_mm": self.centroid_width_mm,
            "centroid_height_mm": self.centroid_height_mm,
            "member_ids": list(self.member_ids),
            "darkness": self.darkness,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SizeCategory":
        return cls(
            index=obj["index"],
            centroid_width_mm=obj["centroid_width_mm"],
            centroid_height_mm=obj["centroid_height_mm"],
            member_ids=tuple(obj["member_ids"]),
            darkness=obj["darkness"],
        )


@dataclass(frozen=True)
class TimelineData:
    """Per-year story buckets plus per-anthology spans for the triangle glyphs.

    ``years`` maps a publication year to (anthology_id, story_index) pairs;
    ``spans`` maps an anthology id to (min_year, max_year, dominant color hex).
    """

    years: dict[int, tuple[tuple[str, int], ...]]
    spans: dict[str, tuple[int, int, str]]

    def to_json(self) -> dict:
        return {
            "years": {
                str(y): [[aid, idx] for aid, idx in pairs]
                for y, pairs in sorted(self.years.items())
            },
            "spans": {
                aid: {"min_year": lo, "max_year": hi, "color": color}
                for aid, (lo, hi, color) in self.spans.items()
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TimelineData":
        return cls(
            years={
                int(y): tuple((aid, idx) for aid, idx in pairs)
                for y, pairs in obj["years"].items()
            },
            spans={
                aid: (v["min_year"], v["max_year"], v["color"])
                for aid, v in obj["spans"].items()
            },
        )


# --- matching ----------------------------------------------------------------

def matches_color(a: Anthology, s: ColorSampleFilter) -> bool:
    """True iff some sufficiently dominant palette entry is within tolerance."""
    target = sample_to_color(s.position)
    return any(
        e.proportion >= s.min_proportion and delta_e(e.color, target) <= s.tolerance_de
        for e in a.palette.entries
    )


def matches_years(a: Anthology, year_range: tuple[int, int]) -> bool:
    """True iff any story's publication year lies in the inclusive range."""
    lo, hi = year_range
    return any(lo <= s.publication_year <= hi for s in a.stories)


def texture_ref(c: Collection, s: ColorSampleFilter) -> str:
    """Id of the anthology whose dominant color is closest to the sample."""
    target = sample_to_color(s.position)
    return min(
        c.anthologies,
        key=lambda a: delta_e(dominant_color(a.palette), target),
    ).id


def resolve_texture_refs(f: FilterState, c: Collection) -> FilterState:
    """Fill each color sample's texture_ref with its best-covered anthology."""
    return replace(
        f,
        color_samples=tuple(
            replace(s, texture_ref=texture_ref(c, s)) for s in f.color_samples
        ),
    )


# --- size clustering -----------------------------------------------------------

def compute_size_categories(c: Collection) -> list[SizeCategory]:
    """Cluster (width, height) into at most four categories.

    k clamps to the number of distinct size points. Categories are sorted by
    centroid area ascending; every anthology goes to its nearest centroid
    (ties to the lowest category index). Darkness is the member count
    normalized by the largest category.
    """
    if not c.anthologies:
        raise EmptyCollection("cannot cluster sizes of an empty collection")
    points = np.array(
        [(a.width_mm, a.height_mm) for a in c.anthologies], dtype=np.float64
    )
    unique_points = np.unique(points, axis=0)
    distinct = unique_points.shape[0]
    k = min(MAX_SIZE_CATEGORIES, distinct)
    # deterministic multi-start: single-seed k-means can settle into a poor
    # local optimum; with few distinct sizes every k-subset init is cheap,
    # otherwise a fixed fan of seeded restarts. Runs once at ingest.
    if distinct <= 12:
        inits = [
            unique_points[list(subset)]
            for subset in itertools.combinations(range(distinct), k)
        ]
        result = kmeans_best(points, k, restarts=1, inits=inits)
    else:
        result = kmeans_best(points, k, restarts=SIZE_CLUSTER_RESTARTS)

    order = sorted(
        range(k),
        key=lambda j: (
            result.centroids[j, 0] * result.centroids[j, 1],
            result.centroids[j, 0],
            result.centroids[j, 1],
        ),
    )
    centroids = result.centroids[order]
    # nearest-centroid assignment against the area-sorted centroids;
    # np.argmin resolves ties to the lowest index
    diff = points[:, None, :] - centroids[None, :, :]
    assignment = np.argmin(np.einsum("nkd,nkd->nk", diff, diff), axis=1)

    members: list[list[str]] = [[] for _ in range(k)]
    for a, j in zip(c.anthologies, assignment):
        members[int(j)].append(a.id)
    peak = max(len(m) for m in members)
    return [
        SizeCategory(
            index=j,
            centroid_width_mm=float(centroids[j, 0]),
            centroid_height_mm=float(centroids[j, 1]),
            member_ids=tuple(members[j]),
            darkness=len(members[j]) / peak,
        )
        for j in range(k)
    ]


def size_category_of(categories: list[SizeCategory]) -> dict[str, int]:
    """Map anthology id to its size-category index."""
    return {aid: cat.index for cat in categories for aid in cat.member_ids}


# --- aggregation and evaluation --------------------------------------------------

def avg_story_count(c: Collection, ids) -> float:
    """Arithmetic mean story count over the given ids; 0 for an empty set."""
    ids = list(ids)
    for aid in ids:
        if aid not in c:
            raise UnknownId(f"unknown anthology id {aid!r}", id=aid)
    if not ids:
        return 0.0
    return sum(len(c[aid].stories) for aid in ids) / len(ids)


def evaluate(
    f: FilterState,
    c: Collection,
    size_categories: list[SizeCategory] | None = None,
) -> list[str]:
    """Ids passing every non-empty filter family, in collection order.

    Color samples OR together within their family; families AND together.
    ``size_categories`` defaults to a fresh clustering of the collection
    (pass the ingest-cached one where available).
    """
    if f.year_range is not None and f.year_range[0] > f.year_range[1]:
        raise InvalidFilter(
            f"year_range min {f.year_range[0]} > max {f.year_range[1]}"
        )
    category_of: dict[str, int] = {}
    if f.size_categories:
        if size_categories is None:
            size_categories = compute_size_categories(c)
        category_of = size_category_of(size_categories)

    result = []
    for a in c.anthologies:
        if f.color_samples and not any(matches_color(a, s) for s in f.color_samples):
            continue
        if f.year_range is not None and not matches_years(a, f.year_range):
            continue
        if f.size_categories and category_of[a.id] not in f.size_categories:
            continue
        result.append(a.id)
    return result


def timeline_data(c: Collection) -> TimelineData:
    """Bucket every story by year; spans and dominant colors per anthology."""
    years: dict[int, list[tuple[str, int]]] = {}
    spans: dict[str, tuple[int, int, str]] = {}
    for a in c.anthologies:
        for idx, story in enumerate(a.stories):
            years.setdefault(story.publication_year, []).append((a.id, idx))
        lo, hi = year_span(a)
        spans[a.id] = (lo, hi, srgb_hex(dominant_srgb(a.palette)))
    return TimelineData(
        years={y: tuple(pairs) for y, pairs in years.items()},
        spans=spans,
    )
