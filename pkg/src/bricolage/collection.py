"""Domain model for print collections and manifest ingestion.

A manifest is a single JSON document describing every anthology: physical
dimensions, materials, cover/spine image paths, and the stories bound into
it. Loading validates the document, checks that referenced images exist,
and computes a cover palette per anthology. The resulting Collection is
immutable; all user-facing mutation lives in session layout state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateId,
    EmptyStories,
    InvalidDimension,
    MalformedManifest,
    MissingImage,
    UnknownId,
)
from .palette import ColorPalette, palette_from_file

YEAR_MIN = 1800
YEAR_MAX = 2100

DEFAULT_PALETTE_COLORS = 5


@dataclass(frozen=True)
class Story:
    title: str
    publication_year: int

    def __post_init__(self):
        if not YEAR_MIN <= self.publication_year <= YEAR_MAX:
            raise ValueError(
                f"publication_year {self.publication_year} outside "
                f"{YEAR_MIN}..{YEAR_MAX}"
            )


@dataclass(frozen=True)
class Anthology:
    """One print artifact: physical dimensions, materials, cover, stories."""

    id: str
    title: str
    height_mm: float
    width_mm: float
    page_count: int
    cover_material: str
    page_material: str
    binding: str
    cover_image: str
    spine_image: str | None
    stories: tuple[Story, ...]
    palette: ColorPalette

    def __post_init__(self):
        if self.height_mm <= 0 or self.width_mm <= 0:
            raise InvalidDimension(
                f"anthology {self.id!r}: non-positive dimensions "
                f"{self.height_mm} x {self.width_mm} mm",
                id=self.id,
            )
        if self.page_count < 1:
            raise InvalidDimension(
                f"anthology {self.id!r}: page_count {self.page_count} < 1",
                id=self.id,
            )
        if not self.stories:
            raise EmptyStories(f"anthology {self.id!r} has no stories", id=self.id)


@dataclass(frozen=True)
class Collection:
    anthologies: tuple[Anthology, ...]
    id_index: dict[str, Anthology] = field(compare=False)

    @classmethod
    def from_anthologies(cls, anthologies) -> "Collection":
        anthologies = tuple(anthologies)
        index: dict[str, Anthology] = {}
        for a in anthologies:
            if a.id in index:
                raise DuplicateId(f"duplicate anthology id {a.id!r}", id=a.id)
            index[a.id] = a
        return cls(anthologies=anthologies, id_index=index)

    def __len__(self) -> int:
        return len(self.anthologies)

    def __iter__(self):
        return iter(self.anthologies)

    def __getitem__(self, anthology_id: str) -> Anthology:
        if anthology_id not in self.id_index:
            raise UnknownId(f"unknown anthology id {anthology_id!r}", id=anthology_id)
        return self.id_index[anthology_id]

    def __contains__(self, anthology_id: str) -> bool:
        return anthology_id in self.id_index

    def ids(self) -> list[str]:
        return [a.id for a in self.anthologies]


def year_span(anthology: Anthology) -> tuple[int, int]:
    """Min and max publication year over the anthology's stories."""
    years = [s.publication_year for s in anthology.stories]
    return min(years), max(years)


_REQUIRED_FIELDS = {
    "id": str,
    "title": str,
    "height_mm": (int, float),
    "width_mm": (int, float),
    "page_count": int,
    "cover_material": str,
    "page_material": str,
    "binding": str,
    "cover_image": str,
    "stories": list,
}


def _require(entry: dict, pos: int, name: str, types) -> object:
    if name not in entry:
        raise MalformedManifest(
            f"anthology #{pos}: missing field {name!r}", field=name
        )
    value = entry[name]
    if not isinstance(value, types) or isinstance(value, bool):
        raise MalformedManifest(
            f"anthology #{pos}: field {name!r} has wrong type "
            f"{type(value).__name__}",
            field=name,
        )
    return value


def _parse_stories(raw: list, pos: int) -> tuple[Story, ...]:
    stories = []
    for i, obj in enumerate(raw):
        if not isinstance(obj, dict):
            raise MalformedManifest(f"anthology #{pos}: story #{i} is not an object")
        try:
            title = obj["title"]
            year = obj["publication_year"]
        except KeyError as exc:
            raise MalformedManifest(
                f"anthology #{pos}: story #{i} missing field {exc.args[0]!r}"
            ) from None
        if not isinstance(title, str) or not isinstance(year, int) \
                or isinstance(year, bool):
            raise MalformedManifest(f"anthology #{pos}: story #{i} has wrong types")
        try:
            stories.append(Story(title=title, publication_year=year))
        except ValueError as exc:
            raise MalformedManifest(f"anthology #{pos}: story #{i}: {exc}") from None
    return tuple(stories)


def load_manifest(
    manifest_bytes: bytes | str,
    image_root: str | Path,
    k_colors: int = DEFAULT_PALETTE_COLORS,
) -> Collection:
    """Parse, validate, and palette-enrich a manifest document.

    Anthology order matches the manifest. Raises MalformedManifest,
    DuplicateId, InvalidDimension, EmptyStories, or MissingImage.
    """
    image_root = Path(image_root)
    try:
        doc = json.loads(manifest_bytes)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedManifest(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("anthologies"), list):
        raise MalformedManifest("manifest must be an object with an 'anthologies' list")

    anthologies = []
    seen: set[str] = set()
    for pos, entry in enumerate(doc["anthologies"]):
        if not isinstance(entry, dict):
            raise MalformedManifest(f"anthology #{pos} is not an object")
        fields = {
            name: _require(entry, pos, name, types)
            for name, types in _REQUIRED_FIELDS.items()
        }
        spine = entry.get("spine_image")
        if spine is not None and not isinstance(spine, str):
            raise MalformedManifest(
                f"anthology #{pos}: field 'spine_image' must be a string or null"
            )
        if fields["id"] in seen:
            raise DuplicateId(
                f"duplicate anthology id {fields['id']!r}", id=fields["id"]
            )
        seen.add(fields["id"])

        image_paths = [fields["cover_image"]] + ([spine] if spine else [])
        for rel in image_paths:
            if not (image_root / rel).is_file():
                raise MissingImage(
                    f"anthology {fields['id']!r}: image not found: {image_root / rel}",
                    path=str(image_root / rel),
                )

        stories = _parse_stories(fields.pop("stories"), pos)
        if not stories:
            raise EmptyStories(
                f"anthology {fields['id']!r} has no stories", id=fields["id"]
            )
        palette = palette_from_file(image_root / fields["cover_image"], k_colors)
        anthologies.append(
            Anthology(
                **fields,
                spine_image=spine,
                stories=stories,
                palette=palette,
            )
        )
    return Collection.from_anthologies(anthologies)


def load_manifest_file(
    manifest_path: str | Path,
    image_root: str | Path | None = None,
    k_colors: int = DEFAULT_PALETTE_COLORS,
) -> Collection:
    """Load a manifest file; image paths resolve against its directory by default."""
    manifest_path = Path(manifest_path)
    root = Path(image_root) if image_root is not None else manifest_path.parent
    return load_manifest(manifest_path.read_bytes(), root, k_colors)


def anthology_to_manifest(a: Anthology) -> dict:
    """Manifest-form dict of one anthology (exact field names, no palette)."""
    return {
        "id": a.id,
        "title": a.title,
        "height_mm": a.height_mm,
        "width_mm": a.width_mm,
        "page_count": a.page_count,
        "cover_material": a.cover_material,
        "page_material": a.page_material,
        "binding": a.binding,
        "cover_image": a.cover_image,
        "spine_image": a.spine_image,
        "stories": [
            {"title": s.title, "publication_year": s.publication_year}
            for s in a.stories
        ],
    }


def collection_to_manifest(c: Collection) -> dict:
    """Round-trip a Collection back to manifest form (palette excluded)."""
    return {"anthologies": [anthology_to_manifest(a) for a in c.anthologies]}
