"""Index build, serialization determinism, and summary."""
from __future__ import annotations

import json

import pytest

from bricolage.errors import MalformedManifest
from bricolage.index import (
    INDEX_FORMAT,
    CollectionIndex,
    build_index,
    collection_summary,
    dumps_index,
    ingest,
    load_index,
    write_index,
)


def test_index_serialization_is_deterministic(index):
    assert dumps_index(index) == dumps_index(index)
    reparsed = CollectionIndex.from_json(json.loads(dumps_index(index)))
    assert dumps_index(reparsed) == dumps_index(index)


def test_index_round_trip_preserves_everything(index):
    again = CollectionIndex.from_json(json.loads(dumps_index(index)))
    assert again.collection == index.collection
    assert again.size_categories == index.size_categories
    assert again.timeline == index.timeline


def test_ingest_writes_byte_identical_reruns(manifest_path, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    ingest(manifest_path, manifest_path.parent, out1)
    ingest(manifest_path, manifest_path.parent, out2)
    assert out1.read_bytes() == out2.read_bytes()
    idx = load_index(out1)
    assert len(idx.collection) == 10
    assert json.loads(out1.read_text())["format"] == INDEX_FORMAT


def test_write_then_load_round_trip(index, tmp_path):
    path = tmp_path / "index.json"
    write_index(index, path)
    assert load_index(path) == index


def test_load_index_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    with pytest.raises(MalformedManifest):
        load_index(bad)
    bad.write_text(json.dumps({"format": "something-else/9"}))
    with pytest.raises(MalformedManifest):
        load_index(bad)


def test_collection_summary(index):
    s = collection_summary(index)
    assert s["anthology_count"] == 10
    assert s["story_count"] == sum(len(a.stories) for a in index.collection)
    assert s["year_extent"] == [1840, 1990]
    assert len(s["size_categories"]) == 4
