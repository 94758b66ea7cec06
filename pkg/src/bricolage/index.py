"""Self-contained collection index: manifest fields + computed metadata.

The index is what the offline ingest step materializes and what the service
and the headless query tool load: every anthology with its palette, the
size clustering, and the timeline data. It is a single JSON document;
images stay external, referenced by path relative to the image root.
Serialization is deterministic, so identical inputs produce byte-identical
index files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .collection import (
    Anthology,
    Collection,
    Story,
    anthology_to_manifest,
    load_manifest_file,
    year_span,
)
from .errors import MalformedManifest
from .facets import SizeCategory, TimelineData, compute_size_categories, timeline_data
from .palette import ColorPalette

INDEX_FORMAT = "bricolage-index/1"


@dataclass(frozen=True)
class CollectionIndex:
    collection: Collection
    size_categories: list[SizeCategory]
    timeline: TimelineData

    def to_json(self) -> dict:
        records = []
        for a in self.collection.anthologies:
            rec = anthology_to_manifest(a)
            rec["palette"] = a.palette.to_json()
            records.append(rec)
        return {
            "format": INDEX_FORMAT,
            "anthologies": records,
            "size_categories": [cat.to_json() for cat in self.size_categories],
            "timeline": self.timeline.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CollectionIndex":
        if obj.get("format") != INDEX_FORMAT:
            raise MalformedManifest(
                f"not a {INDEX_FORMAT} document (format={obj.get('format')!r})"
            )
        anthologies = []
        for rec in obj["anthologies"]:
            rec = dict(rec)
            palette = ColorPalette.from_json(rec.pop("palette"))
            stories = tuple(
                Story(title=s["title"], publication_year=s["publication_year"])
                for s in rec.pop("stories")
            )
            anthologies.append(Anthology(**rec, stories=stories, palette=palette))
        return cls(
            collection=Collection.from_anthologies(anthologies),
            size_categories=[
                SizeCategory.from_json(c) for c in obj["size_categories"]
            ],
            timeline=TimelineData.from_json(obj["timeline"]),
        )


def build_index(collection: Collection) -> CollectionIndex:
    """Compute the per-collection metadata cached in the index."""
    return CollectionIndex(
        collection=collection,
        size_categories=compute_size_categories(collection),
        timeline=timeline_data(collection),
    )


def dumps_index(index: CollectionIndex) -> str:
    """Deterministic serialization: stable key order, fixed layout."""
    return json.dumps(index.to_json(), indent=2, sort_keys=True) + "\n"


def write_index(index: CollectionIndex, out_path: str | Path) -> None:
    Path(out_path).write_text(dumps_index(index), encoding="utf-8")


def load_index(path: str | Path) -> CollectionIndex:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedManifest(f"index is not valid JSON: {exc}") from None
    return CollectionIndex.from_json(obj)


def ingest(
    manifest_path: str | Path,
    image_root: str | Path,
    out_path: str | Path,
    k_colors: int = 5,
) -> CollectionIndex:
    """Offline pipeline: manifest + images in, validated index file out."""
    collection = load_manifest_file(manifest_path, image_root, k_colors=k_colors)
    index = build_index(collection)
    write_index(index, out_path)
    return index


def collection_summary(index: CollectionIndex) -> dict:
    """Counts and extents for the collection overview endpoint."""
    c = index.collection
    spans = [year_span(a) for a in c.anthologies]
    return {
        "anthology_count": len(c),
        "story_count": sum(len(a.stories) for a in c.anthologies),
        "year_extent": [min(lo for lo, _ in spans), max(hi for _, hi in spans)]
        if spans
        else None,
        "size_categories": [cat.to_json() for cat in index.size_categories],
    }
