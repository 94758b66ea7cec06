"""Filter families, combination semantics, size clustering, timeline data."""
from __future__ import annotations

import math

import pytest

from builders import make_anthology

from bricolage.collection import Collection, year_span
from bricolage.errors import EmptyCollection, InvalidFilter, UnknownId
from bricolage.facets import (
    ColorSampleFilter,
    FilterState,
    avg_story_count,
    compute_size_categories,
    evaluate,
    matches_color,
    matches_years,
    resolve_texture_refs,
    size_category_of,
    texture_ref,
    timeline_data,
)
from bricolage.palette import (
    LabColor,
    WheelPosition,
    delta_e,
    sample_to_color,
    wheel_position,
)

RED = (54.0, 80.0, 67.0)
BLUE = (32.0, 79.0, -108.0)


def sample_at(lab, tolerance=20.0, min_proportion=0.15):
    return ColorSampleFilter(
        position=wheel_position(LabColor(*lab)),
        tolerance_de=tolerance,
        min_proportion=min_proportion,
    )


def test_matches_color_zero_distance():
    target = sample_to_color(WheelPosition(10.0, 0.4))
    a = make_anthology("a", palette_entries=(((target.L, target.a, target.b), 1.0),))
    s = ColorSampleFilter(position=WheelPosition(10.0, 0.4))
    assert matches_color(a, s)


def test_matches_color_dominance_threshold():
    target = sample_to_color(WheelPosition(0.0, 0.6))
    a = make_anthology(
        "a",
        palette_entries=(
            ((20.0, 0.0, -40.0), 0.95),
            ((target.L, target.a, target.b), 0.05),
        ),
    )
    s = ColorSampleFilter(position=WheelPosition(0.0, 0.6), min_proportion=0.15)
    assert not matches_color(a, s)
    loose = ColorSampleFilter(position=WheelPosition(0.0, 0.6), min_proportion=0.05)
    assert matches_color(a, loose)


def test_matches_color_boundary_inclusive():
    # entry sits at delta-E exactly 10 from the sample color
    a = make_anthology("a", palette_entries=(((60.0, 50.0, 10.0), 1.0),))
    s = ColorSampleFilter(position=WheelPosition(0.0, 0.5), tolerance_de=10.0)
    assert delta_e(sample_to_color(s.position), LabColor(60.0, 50.0, 10.0)) == 10.0
    assert matches_color(a, s)
    tight = ColorSampleFilter(position=WheelPosition(0.0, 0.5), tolerance_de=9.999)
    assert not matches_color(a, tight)


def test_matches_years_examples():
    a = make_anthology("a", years=(1888, 1923))
    assert matches_years(a, (1900, 1950))
    assert not matches_years(make_anthology("b", years=(1888,)), (1889, 1890))
    assert matches_years(make_anthology("c", years=(1888,)), (1888, 1888))


def test_filter_state_validation():
    with pytest.raises(InvalidFilter):
        FilterState(year_range=(1950, 1930))
    with pytest.raises(InvalidFilter):
        ColorSampleFilter(position=WheelPosition(0, 0), tolerance_de=0.0)
    with pytest.raises(InvalidFilter):
        ColorSampleFilter(position=WheelPosition(0, 0), min_proportion=1.5)
    assert FilterState().is_empty()
    assert not FilterState(size_categories=frozenset({1})).is_empty()


def test_filter_state_wire_round_trip():
    f = FilterState(
        color_samples=(sample_at(RED), sample_at(BLUE, tolerance=5.0)),
        year_range=(1930, 1960),
        size_categories=frozenset({0, 2}),
    )
    again = FilterState.from_json(f.to_json())
    assert again == f
    assert FilterState.from_json({}) == FilterState()
    assert FilterState.from_json({"year_range": None}) == FilterState()
    with pytest.raises(InvalidFilter):
        FilterState.from_json({"year_range": [2000, 1990]})
    with pytest.raises(InvalidFilter):
        FilterState.from_json({"size_categories": [9]})


def test_evaluate_empty_filter_returns_all(collection):
    assert evaluate(FilterState(), collection) == collection.ids()


def test_evaluate_or_within_color(collection):
    red, blue = sample_at(RED), sample_at(BLUE)
    both = evaluate(FilterState(color_samples=(red, blue)), collection)
    only_red = evaluate(FilterState(color_samples=(red,)), collection)
    only_blue = evaluate(FilterState(color_samples=(blue,)), collection)
    assert set(both) == set(only_red) | set(only_blue)
    assert both == [i for i in collection.ids() if i in set(both)]  # order stable


def test_evaluate_and_across_families(collection, index):
    cats = index.size_categories
    f = FilterState(
        color_samples=(sample_at(RED, tolerance=35.0),),
        year_range=(1880, 1935),
        size_categories=frozenset({0, 1}),
    )
    combined = evaluate(f, collection, cats)
    by_color = evaluate(FilterState(color_samples=f.color_samples), collection, cats)
    by_years = evaluate(FilterState(year_range=f.year_range), collection, cats)
    by_size = evaluate(FilterState(size_categories=f.size_categories), collection, cats)
    assert set(combined) == set(by_color) & set(by_years) & set(by_size)


def test_evaluate_size_family(collection, index):
    cats = index.size_categories
    for cat in cats:
        got = evaluate(FilterState(size_categories=frozenset({cat.index})),
                       collection, cats)
        assert set(got) == set(cat.member_ids)


def test_avg_story_count(collection):
    c = Collection.from_anthologies(
        [make_anthology("a", years=(1900, 1901, 1902)),
         make_anthology("b", years=(1910, 1911, 1912, 1913, 1914))]
    )
    assert avg_story_count(c, ["a", "b"]) == 4.0
    assert avg_story_count(c, []) == 0.0
    assert avg_story_count(c, ["b"]) == 5.0
    with pytest.raises(UnknownId):
        avg_story_count(c, ["a", "zzz"])


def test_size_categories_distinct_sizes_are_singletons():
    sizes = [(100.0, 150.0), (148.0, 210.0), (210.0, 297.0), (250.0, 350.0)]
    c = Collection.from_anthologies(
        [make_anthology(f"s{i}", width=w, height=h) for i, (w, h) in enumerate(sizes)]
    )
    cats = compute_size_categories(c)
    assert len(cats) == 4
    for cat in cats:
        assert len(cat.member_ids) == 1
        member = c[cat.member_ids[0]]
        assert (cat.centroid_width_mm, cat.centroid_height_mm) == \
            (member.width_mm, member.height_mm)
    areas = [cat.centroid_width_mm * cat.centroid_height_mm for cat in cats]
    assert areas == sorted(areas)
    assert [cat.index for cat in cats] == [0, 1, 2, 3]


def test_size_categories_clamp_to_distinct_points():
    c = Collection.from_anthologies(
        [make_anthology(f"a{i}", width=100.0, height=150.0) for i in range(5)]
        + [make_anthology(f"b{i}", width=200.0, height=280.0) for i in range(3)]
    )
    cats = compute_size_categories(c)
    assert len(cats) == 2
    assert len(cats[0].member_ids) == 5 and len(cats[1].member_ids) == 3
    assert cats[0].darkness == 1.0
    assert cats[1].darkness == pytest.approx(3 / 5)


def test_size_categories_partition_and_darkness(collection):
    cats = compute_size_categories(collection)
    seen = [i for cat in cats for i in cat.member_ids]
    assert sorted(seen) == sorted(collection.ids())
    assert max(cat.darkness for cat in cats) == 1.0
    assert size_category_of(cats).keys() == set(collection.ids())


def test_size_categories_empty_collection():
    with pytest.raises(EmptyCollection):
        compute_size_categories(Collection.from_anthologies([]))


def test_texture_ref_is_nearest_dominant(collection):
    s = sample_at(RED)
    best = texture_ref(collection, s)
    target = sample_to_color(s.position)
    # brute-force the same minimum independently
    def dist(a):
        return delta_e(a.palette.entries[0].color, target)
    expect = min(collection, key=lambda a: (dist(a), collection.ids().index(a.id)))
    assert best == expect.id

    f = resolve_texture_refs(FilterState(color_samples=(s,)), collection)
    assert f.color_samples[0].texture_ref == best


def test_timeline_partitions_all_stories(collection):
    t = timeline_data(collection)
    total = sum(len(a.stories) for a in collection)
    assert sum(len(v) for v in t.years.values()) == total
    for aid, (lo, hi, color) in t.spans.items():
        assert (lo, hi) == year_span(collection[aid])
        assert color.startswith("#") and len(color) == 7
    # every (anthology, story index) pair lands in its own year bucket
    for year, members in t.years.items():
        for aid, story_idx in members:
            assert collection[aid].stories[story_idx].publication_year == year


def test_timeline_wire_round_trip(collection):
    t = timeline_data(collection)
    from bricolage.facets import TimelineData

    assert TimelineData.from_json(t.to_json()) == t
