"""Color math: sRGB/Lab conversion, delta-E, wheel mapping, palette extraction.

Non-trivial expected values below were frozen from a standalone reference
implementation of the CIE formulas (run separately, double precision).
"""
from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bricolage.errors import EmptyImage
from bricolage.palette import (
    C_REF,
    LabColor,
    WheelPosition,
    delta_e,
    dominant_color,
    extract_palette,
    lab_to_srgb,
    parse_hex,
    sample_to_color,
    srgb_hex,
    srgb_to_lab,
    wheel_position,
)

# Reference conversions (independent textbook CIE script, D65).
GRAY119_L = 50.034438792538225
RED_LAB = (53.24079183328088, 80.09246954480042, 67.20319253649727)
RED_HUE = 39.9990054376541
BLUE_LAB = (32.29700932295047, 79.18752678434745, -107.86016452983817)
BLUE_HUE = 306.28493976176156
GREEN_LAB = (87.73471889497407, -86.18270151612145, 83.17931454093255)
GREEN_HUE = 136.01595013282815


def test_white_and_black_are_exact():
    assert srgb_to_lab((255, 255, 255)) == LabColor(100.0, 0.0, 0.0)
    assert srgb_to_lab((0, 0, 0)) == LabColor(0.0, 0.0, 0.0)


def test_mid_gray_is_achromatic():
    lab = srgb_to_lab((119, 119, 119))
    assert lab.a == 0.0 and lab.b == 0.0
    assert lab.L == pytest.approx(GRAY119_L, abs=1e-9)


@pytest.mark.parametrize(
    "rgb, expected",
    [((255, 0, 0), RED_LAB), ((0, 0, 255), BLUE_LAB), ((0, 255, 0), GREEN_LAB)],
)
def test_primary_conversions_match_reference(rgb, expected):
    lab = srgb_to_lab(rgb)
    assert (lab.L, lab.a, lab.b) == pytest.approx(expected, abs=1e-9)


def test_delta_e_examples():
    c = LabColor(42.0, 13.0, -7.0)
    assert delta_e(c, c) == 0.0
    assert delta_e(LabColor(50, 0, 0), LabColor(60, 0, 0)) == 10.0
    assert delta_e(srgb_to_lab((255, 255, 255)), srgb_to_lab((0, 0, 0))) == 100.0


def test_hex_round_trip():
    assert parse_hex("#AABBCC") == (170, 187, 204)
    assert parse_hex("aabbcc") == (170, 187, 204)
    assert srgb_hex((170, 187, 204)) == "#AABBCC"
    with pytest.raises(ValueError):
        parse_hex("#12345")


def test_wheel_position_achromatic_and_pure_a():
    assert wheel_position(LabColor(50, 0, 0)) == WheelPosition(0.0, 0.0)
    w = wheel_position(LabColor(60, 50, 0))
    assert w.hue_deg == pytest.approx(0.0, abs=1e-12)
    assert w.radius == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize(
    "rgb, hue", [((255, 0, 0), RED_HUE), ((0, 0, 255), BLUE_HUE), ((0, 255, 0), GREEN_HUE)]
)
def test_wheel_position_matches_reference(rgb, hue):
    w = wheel_position(srgb_to_lab(rgb))
    assert w.hue_deg == pytest.approx(hue, abs=1e-9)
    assert w.radius == 1.0  # chroma > C_REF clamps


def test_sample_to_color_examples():
    assert sample_to_color(WheelPosition(0.0, 0.0)) == LabColor(60.0, 0.0, 0.0)
    c = sample_to_color(WheelPosition(90.0, 0.5))
    assert c.L == 60.0
    assert c.a == pytest.approx(0.0, abs=1e-12)
    assert c.b == pytest.approx(50.0, abs=1e-12)


lab_colors = st.builds(
    LabColor,
    st.floats(0, 100, allow_nan=False),
    st.floats(-128, 128, allow_nan=False),
    st.floats(-128, 128, allow_nan=False),
)


@given(lab_colors, lab_colors, lab_colors)
def test_delta_e_is_a_metric(x, y, z):
    assert delta_e(x, y) >= 0.0
    assert delta_e(x, y) == delta_e(y, x)
    assert delta_e(x, x) == 0.0
    # positivity only when some squared difference is representable
    if max(abs(x.L - y.L), abs(x.a - y.a), abs(x.b - y.b)) > 1e-150:
        assert delta_e(x, y) > 0.0
    assert delta_e(x, z) <= delta_e(x, y) + delta_e(y, z) + 1e-9


@given(
    st.floats(0, 360, exclude_max=True, allow_nan=False),
    st.floats(0.001, 1.0, allow_nan=False),
)
def test_wheel_round_trip(hue, radius):
    w = WheelPosition(hue, radius)
    back = wheel_position(sample_to_color(w))
    # hue comparison on the circle
    dh = min(abs(back.hue_deg - hue), 360 - abs(back.hue_deg - hue))
    assert dh < 1e-9
    assert abs(back.radius - radius) < 1e-9


def _image(rows):
    return np.array(rows, dtype=np.uint8)


def test_extract_palette_exact_frequencies():
    img = _image([[[255, 0, 0], [255, 0, 0]], [[255, 0, 0], [0, 0, 255]]])
    pal = extract_palette(img, 2)
    assert [e.proportion for e in pal.entries] == [0.75, 0.25]
    assert [e.srgb for e in pal.entries] == [(255, 0, 0), (0, 0, 255)]
    assert [e.to_json()["srgb"] for e in pal.entries] == ["#FF0000", "#0000FF"]
    red = srgb_to_lab((255, 0, 0))
    assert delta_e(pal.entries[0].color, red) < 1e-9


def test_extract_palette_single_color_collapses():
    img = np.zeros((10, 10, 3), dtype=np.uint8)
    img[..., 1] = 200
    pal = extract_palette(img, 3)
    assert len(pal.entries) == 1
    assert pal.entries[0].proportion == 1.0
    assert pal.entries[0].srgb == (0, 200, 0)


def test_extract_palette_rejects_bad_input():
    with pytest.raises(EmptyImage):
        extract_palette(np.zeros((0, 4, 3), dtype=np.uint8), 3)
    with pytest.raises(ValueError):
        extract_palette(_image([[[1, 2, 3]]]), 17)
    with pytest.raises(ValueError):
        extract_palette(_image([[[1, 2, 3]]]), 0)


def test_palette_sort_order_breaks_ties_by_lab():
    # two colors at exactly 50/50: darker (lower L) must come first
    img = _image([[[10, 10, 10], [240, 240, 240]]])
    pal = extract_palette(img, 2)
    assert [e.proportion for e in pal.entries] == [0.5, 0.5]
    assert pal.entries[0].color.L < pal.entries[1].color.L
    assert dominant_color(pal) == pal.entries[0].color


def test_palette_serialization_shape():
    img = _image([[[255, 0, 0], [0, 0, 255]]])
    pal = extract_palette(img, 2)
    data = [e.to_json() for e in pal.entries]
    for obj in data:
        assert set(obj) == {"lab", "srgb", "proportion"}
        assert len(obj["lab"]) == 3
        assert obj["srgb"].startswith("#")
    json.dumps(data)  # JSON-serializable


small_images = st.integers(1, 6).flatmap(
    lambda h: st.integers(1, 6).flatmap(
        lambda w: st.lists(
            st.tuples(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255)),
            min_size=h * w,
            max_size=h * w,
        ).map(lambda px: np.array(px, dtype=np.uint8).reshape(h, w, 3))
    )
)


@settings(max_examples=40, deadline=None)
@given(small_images, st.integers(1, 5))
def test_palette_properties_on_random_images(img, k):
    pal = extract_palette(img, k)
    assert abs(sum(e.proportion for e in pal.entries) - 1.0) <= 1e-6
    assert 1 <= len(pal.entries) <= k
    props = [e.proportion for e in pal.entries]
    assert props == sorted(props, reverse=True)
    # centroids stay inside the Lab bounding box of the input pixels
    from bricolage.palette import srgb_array_to_lab

    labs = srgb_array_to_lab(img.reshape(-1, 3))
    lo, hi = labs.min(axis=0) - 1e-9, labs.max(axis=0) + 1e-9
    for e in pal.entries:
        v = (e.color.L, e.color.a, e.color.b)
        assert all(lo[i] <= v[i] <= hi[i] for i in range(3))
    # determinism on identical bytes
    again = extract_palette(img, k)
    assert [e.to_json() for e in again.entries] == [e.to_json() for e in pal.entries]


@given(st.tuples(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255)))
def test_srgb_lab_round_trip(rgb):
    assert lab_to_srgb(srgb_to_lab(rgb)) == rgb


def test_lab_chroma_and_radius_clamp():
    lab = LabColor(60.0, 300.0, 400.0)
    assert lab.chroma == pytest.approx(500.0)
    assert wheel_position(lab).radius == 1.0
    assert C_REF == 100.0
