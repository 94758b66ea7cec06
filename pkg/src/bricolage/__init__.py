"""Material-first exploration engine for digitized print collections.

Represents a collection of print artifacts through their physical qualities:
true millimeter-scale shelf and pile layouts, dominant cover colors in
perceptual color space, and combinable visual filters (color wheel samples,
publication-year ranges, physical-size clusters).
"""

from .collection import (
    Anthology,
    Collection,
    Story,
    load_manifest,
    load_manifest_file,
    year_span,
)
from .errors import BricolageError
from .facets import (
    ColorSampleFilter,
    FilterState,
    SizeCategory,
    TimelineData,
    avg_story_count,
    compute_size_categories,
    evaluate,
    matches_color,
    matches_years,
    timeline_data,
)
from .index import CollectionIndex, build_index, ingest, load_index
from .layout import (
    LayoutState,
    Placement,
    ScaleSpec,
    move_item,
    pile_layout,
    ruler_ticks,
    shelf_layout,
    thickness_mm,
    zoom_at,
)
from .palette import (
    ColorPalette,
    LabColor,
    WheelPosition,
    delta_e,
    dominant_color,
    extract_palette,
    sample_to_color,
    srgb_to_lab,
    wheel_position,
)

__version__ = "0.1.0"

__all__ = [
    "Anthology",
    "BricolageError",
    "Collection",
    "CollectionIndex",
    "ColorPalette",
    "ColorSampleFilter",
    "FilterState",
    "LabColor",
    "LayoutState",
    "Placement",
    "ScaleSpec",
    "SizeCategory",
    "Story",
    "TimelineData",
    "WheelPosition",
    "avg_story_count",
    "build_index",
    "compute_size_categories",
    "delta_e",
    "dominant_color",
    "evaluate",
    "extract_palette",
    "ingest",
    "load_index",
    "load_manifest",
    "load_manifest_file",
    "matches_color",
    "matches_years",
    "move_item",
    "pile_layout",
    "ruler_ticks",
    "sample_to_color",
    "shelf_layout",
    "srgb_to_lab",
    "thickness_mm",
    "timeline_data",
    "wheel_position",
    "year_span",
    "zoom_at",
]
