"""Angular slot layout, radial normalization, and traffic-light classification."""

from __future__ import annotations

import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfig import (
    ColorClass,
    Direction,
    LayoutConfig,
    RangeSet,
    classify,
    compute_slots,
    parse_dataset,
    value_to_radius,
)

from conftest import classify_oracle

TWO_PI = 2.0 * math.pi


def make_dataset(group_sizes: list[int]) -> "HealthDataset":
    doc = {
        "groups": [
            {
                "label": f"G{gi}",
                "measurements": [
                    {
                        "id": f"g{gi}m{mi}",
                        "label": f"g{gi}m{mi}",
                        "units": "",
                        "min": 0,
                        "max": 10,
                        "samples": [{"timestamp": 100, "value": 5}],
                    }
                    for mi in range(size)
                ],
            }
            for gi, size in enumerate(group_sizes)
        ]
    }
    return parse_dataset(json.dumps(doc))


# ---------------------------------------------------------------------------
# Slots


def test_single_measurement_dataset():
    plan = compute_slots(make_dataset([1]), LayoutConfig())
    assert plan.total_slots == 2
    assert plan.slot_width == pytest.approx(math.pi)
    start = LayoutConfig().start_angle
    assert plan.entries[0].angle == pytest.approx(start + math.pi / 2.0)


def test_two_groups_slot_indices():
    # groups of sizes {2, 3}: 7 slots, measurements in slots 0,1 and 3,4,5
    plan = compute_slots(make_dataset([2, 3]), LayoutConfig())
    assert plan.total_slots == 7
    assert plan.slot_width == pytest.approx(TWO_PI / 7.0)
    assert [e.slot_index for e in plan.entries] == [0, 1, 3, 4, 5]
    start = LayoutConfig().start_angle
    width = TWO_PI / 7.0
    for entry in plan.entries:
        assert entry.angle == pytest.approx(start + (entry.slot_index + 0.5) * width)


def test_bundled_dataset_has_nine_sectors(patient_dataset):
    plan = compute_slots(patient_dataset, LayoutConfig())
    assert len(plan.sectors) == 9
    # sum of sector arcs plus one gap slot per group tiles the full circle
    arc_total = sum(abs(s.end_angle - s.start_angle) for s in plan.sectors)
    gap_total = len(plan.sectors) * plan.slot_width
    assert arc_total + gap_total == pytest.approx(TWO_PI, abs=1e-9)


def test_angular_closure_random_group_vectors():
    rng = random.Random(99)
    for _ in range(250):
        sizes = [rng.randint(1, 8) for _ in range(rng.randint(1, 12))]
        plan = compute_slots(make_dataset(sizes), LayoutConfig())
        assert plan.total_slots == sum(sizes) + len(sizes)
        assert abs(plan.slot_width * plan.total_slots - TWO_PI) < 1e-9
        angles = [e.angle for e in plan.entries]
        assert all(b > a for a, b in zip(angles, angles[1:]))


def test_counterclockwise_angles_descend():
    config = LayoutConfig(direction=Direction.COUNTERCLOCKWISE)
    plan = compute_slots(make_dataset([3, 2]), config)
    angles = [e.angle for e in plan.entries]
    assert all(b < a for a, b in zip(angles, angles[1:]))


def test_sectors_are_disjoint():
    plan = compute_slots(make_dataset([4, 3, 2]), LayoutConfig())
    spans = sorted((s.start_angle, s.end_angle) for s in plan.sectors)
    for (_, end_a), (start_b, _) in zip(spans, spans[1:]):
        assert start_b >= end_a + plan.slot_width * 0.999


# ---------------------------------------------------------------------------
# Normalization

BAND = LayoutConfig(
    canvas_size=760.0,
    r_plot_min=60.0,
    r_band_inner=100.0,
    r_band_outer=140.0,
    r_plot_max=180.0,
    label_gutter=190.0,
)
REC = RangeSet(rec_lo=60.0, rec_hi=100.0)


def test_midpoint_maps_to_band_midpoint():
    assert value_to_radius(80.0, REC, BAND) == pytest.approx(120.0)


def test_endpoints_map_to_circumferences_exactly():
    assert value_to_radius(60.0, REC, BAND) == 100.0
    assert value_to_radius(100.0, REC, BAND) == 140.0


def test_overflow_half_span():
    # one half-span above the range lands halfway to the plot boundary
    assert value_to_radius(120.0, REC, BAND) == pytest.approx(160.0)


def test_overflow_clamps_at_plot_boundary():
    assert value_to_radius(1000.0, REC, BAND) == pytest.approx(180.0)
    assert value_to_radius(-1000.0, REC, BAND) == pytest.approx(60.0)


def test_underflow_symmetric():
    # one half-span below the range lands halfway toward the inner boundary
    assert value_to_radius(40.0, REC, BAND) == pytest.approx(80.0)


def test_degenerate_span_on_target_hits_band_midpoint():
    zero = RangeSet(rec_lo=0.0, rec_hi=0.0)
    assert value_to_radius(0.0, zero, BAND) == pytest.approx(120.0)


def test_degenerate_span_deviation_unit():
    zero = RangeSet(rec_lo=0.0, rec_hi=0.0)
    # unit falls back to max(|rec_lo|, 1) = 1, so 0.5 off target is halfway out
    assert value_to_radius(0.5, zero, BAND) == pytest.approx(160.0)
    assert value_to_radius(5.0, zero, BAND) == pytest.approx(180.0)


@settings(max_examples=300)
@given(
    lo=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
    span=st.floats(min_value=1e-2, max_value=1e6, allow_nan=False),
    t=st.floats(min_value=0.0, max_value=1.0 - 1e-4),
    dt=st.floats(min_value=1e-4, max_value=1.0),
)
def test_strictly_increasing_inside_range(lo, span, t, dt):
    # separation of at least 1e-4 of the span keeps float rounding out of play
    ranges = RangeSet(rec_lo=lo, rec_hi=lo + span)
    v1 = lo + t * span
    v2 = lo + min(t + dt, 1.0) * span
    if v2 > v1:
        assert value_to_radius(v2, ranges, BAND) > value_to_radius(v1, ranges, BAND)


@settings(max_examples=200)
@given(
    lo=st.floats(min_value=-1e4, max_value=1e4),
    span=st.floats(min_value=0.0, max_value=1e4),
    a=st.floats(min_value=-1e5, max_value=1e5),
    b=st.floats(min_value=-1e5, max_value=1e5),
)
def test_weakly_increasing_overall(lo, span, a, b):
    ranges = RangeSet(rec_lo=lo, rec_hi=lo + span)
    lo_v, hi_v = min(a, b), max(a, b)
    assert value_to_radius(hi_v, ranges, BAND) >= value_to_radius(lo_v, ranges, BAND)


def test_radius_always_within_plot_bounds():
    rng = random.Random(5)
    for _ in range(2000):
        lo = rng.uniform(-100, 100)
        span = rng.uniform(0, 50)
        ranges = RangeSet(rec_lo=lo, rec_hi=lo + span)
        r = value_to_radius(rng.uniform(-500, 500), ranges, BAND)
        assert BAND.r_plot_min <= r <= BAND.r_plot_max


# ---------------------------------------------------------------------------
# Classification


def test_inside_recommended_is_green():
    assert classify(75.0, REC) is ColorClass.GREEN


def test_warning_band_examples():
    ranges = RangeSet(rec_lo=60.0, rec_hi=100.0, warn_lo=50.0, warn_hi=110.0)
    assert classify(105.0, ranges) is ColorClass.YELLOW
    assert classify(115.0, ranges) is ColorClass.RED


def test_no_warning_bound_goes_straight_to_red():
    assert classify(59.0, REC) is ColorClass.RED
    assert classify(101.0, REC) is ColorClass.RED


@pytest.mark.parametrize("warn_lo", [None, 50.0])
@pytest.mark.parametrize("warn_hi", [None, 110.0])
def test_boundary_values(warn_lo, warn_hi):
    ranges = RangeSet(rec_lo=60.0, rec_hi=100.0, warn_lo=warn_lo, warn_hi=warn_hi)
    # recommended bounds are green
    assert classify(60.0, ranges) is ColorClass.GREEN
    assert classify(100.0, ranges) is ColorClass.GREEN
    # warning bounds, when present, are yellow
    if warn_lo is not None:
        assert classify(50.0, ranges) is ColorClass.YELLOW
    if warn_hi is not None:
        assert classify(110.0, ranges) is ColorClass.YELLOW


@settings(max_examples=500)
@given(
    value=st.floats(min_value=-200, max_value=200, allow_nan=False),
    lo=st.floats(min_value=-50, max_value=50),
    span=st.floats(min_value=0, max_value=60),
    wlo_gap=st.one_of(st.none(), st.floats(min_value=0, max_value=40)),
    whi_gap=st.one_of(st.none(), st.floats(min_value=0, max_value=40)),
)
def test_classify_matches_brute_force_oracle(value, lo, span, wlo_gap, whi_gap):
    hi = lo + span
    warn_lo = lo - wlo_gap if wlo_gap is not None else None
    warn_hi = hi + whi_gap if whi_gap is not None else None
    ranges = RangeSet(rec_lo=lo, rec_hi=hi, warn_lo=warn_lo, warn_hi=warn_hi)
    assert classify(value, ranges).value == classify_oracle(value, lo, hi, warn_lo, warn_hi)
