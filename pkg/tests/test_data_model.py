"""Data-source parsing, validation, serialization, and snapshot selection."""

from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfig import (
    DataSyntaxError,
    DuplicateError,
    RangeError,
    SchemaError,
    SelectionPolicy,
    SnapshotSpec,
    epoch_to_utc,
    latest_timestamps,
    parse_dataset,
    select_sample,
    serialize_dataset,
)
from hfig.data_model import collect_violations

from conftest import T_BEFORE, T_AFTER, select_sample_oracle

BLOOD_PRESSURE = {
    "groups": [
        {
            "label": "Blood Pressure",
            "measurements": [
                {
                    "id": "systolic",
                    "label": "Systolic",
                    "units": "mmHg",
                    "min": 90,
                    "max": 120,
                    "samples": [
                        {"timestamp": T_BEFORE, "value": 145},
                        {"timestamp": T_AFTER, "value": 128},
                    ],
                },
                {
                    "id": "diastolic",
                    "label": "Diastolic",
                    "units": "mmHg",
                    "min": 60,
                    "max": 80,
                    "samples": [
                        {"timestamp": T_BEFORE, "value": 95},
                        {"timestamp": T_AFTER, "value": 84},
                    ],
                },
            ],
        }
    ]
}


def test_blood_pressure_reference_document():
    ds = parse_dataset(json.dumps(BLOOD_PRESSURE))
    assert len(ds.groups) == 1
    assert ds.groups[0].label == "Blood Pressure"
    assert [m.id for m in ds.groups[0].measurements] == ["systolic", "diastolic"]
    for m in ds.groups[0].measurements:
        assert m.timestamps() == (T_BEFORE, T_AFTER)


def test_empty_groups_rejected():
    with pytest.raises(SchemaError) as exc:
        parse_dataset('{"groups": []}')
    assert exc.value.path == "$.groups"


def test_inverted_range_rejected():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    doc["groups"][0]["measurements"][0]["min"] = 100
    doc["groups"][0]["measurements"][0]["max"] = 60
    with pytest.raises(RangeError):
        parse_dataset(json.dumps(doc))


def test_malformed_json_is_syntax_error():
    with pytest.raises(DataSyntaxError):
        parse_dataset("{not json")
    with pytest.raises(DataSyntaxError):
        parse_dataset(b"")


def test_non_utf8_bytes_rejected():
    with pytest.raises(DataSyntaxError):
        parse_dataset(b"\xff\xfe{}")


def test_nan_rejected():
    doc = json.dumps(BLOOD_PRESSURE).replace("145", "NaN")
    with pytest.raises(DataSyntaxError):
        parse_dataset(doc)


def test_samples_sorted_after_parse():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    samples = doc["groups"][0]["measurements"][0]["samples"]
    doc["groups"][0]["measurements"][0]["samples"] = list(reversed(samples))
    ds = parse_dataset(json.dumps(doc))
    assert ds.groups[0].measurements[0].timestamps() == (T_BEFORE, T_AFTER)


def test_duplicate_sample_timestamp_rejected():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    doc["groups"][0]["measurements"][0]["samples"].append(
        {"timestamp": T_BEFORE, "value": 150}
    )
    with pytest.raises(DuplicateError):
        parse_dataset(json.dumps(doc))


def test_warning_bounds_are_independent():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    doc["groups"][0]["measurements"][0]["warning_max"] = 140
    ds = parse_dataset(json.dumps(doc))
    ranges = ds.groups[0].measurements[0].ranges
    assert ranges.warn_lo is None
    assert ranges.warn_hi == 140


@pytest.mark.parametrize(
    "mutate, expected, path_fragment",
    [
        (lambda d: d["groups"][0]["measurements"][0].pop("min"), SchemaError, ".min"),
        (lambda d: d["groups"][0]["measurements"][0].pop("id"), SchemaError, ".id"),
        (lambda d: d["groups"][0]["measurements"][0].pop("units"), SchemaError, ".units"),
        (lambda d: d["groups"][0]["measurements"][0].pop("samples"), SchemaError, ".samples"),
        (lambda d: d["groups"][0].pop("label"), SchemaError, ".label"),
        (lambda d: d.pop("groups"), SchemaError, "$.groups"),
        (lambda d: d["groups"][0]["measurements"][0].update(extra=1), SchemaError, ".extra"),
        (lambda d: d["groups"][0].update(notes="x"), SchemaError, ".notes"),
        (lambda d: d.update(version=2), SchemaError, "$.version"),
        (lambda d: d["groups"][0]["measurements"][0].update(id="BadId"), SchemaError, ".id"),
        (lambda d: d["groups"][0]["measurements"][0].update(id=""), SchemaError, ".id"),
        (lambda d: d["groups"][0]["measurements"][0].update(min="90"), SchemaError, ".min"),
        (lambda d: d["groups"][0]["measurements"][0].update(min=True), SchemaError, ".min"),
        (lambda d: d["groups"][0]["measurements"][0].update(label=3), SchemaError, ".label"),
        (lambda d: d["groups"][0]["measurements"][0].update(samples=[]), SchemaError, ".samples"),
        (lambda d: d["groups"][0].update(measurements=[]), SchemaError, ".measurements"),
        (
            lambda d: d["groups"][0]["measurements"][0]["samples"][0].update(timestamp=-5),
            SchemaError,
            ".timestamp",
        ),
        (
            lambda d: d["groups"][0]["measurements"][0]["samples"][0].update(timestamp=1.5),
            SchemaError,
            ".timestamp",
        ),
        (
            lambda d: d["groups"][0]["measurements"][0]["samples"][0].update(value="high"),
            SchemaError,
            ".value",
        ),
        (
            lambda d: d["groups"][0]["measurements"][0]["samples"][0].update(note="x"),
            SchemaError,
            ".note",
        ),
        (lambda d: d["groups"][0]["measurements"][0].update(warning_min=95), RangeError, "warning_min"),
        (lambda d: d["groups"][0]["measurements"][0].update(warning_max=100), RangeError, "warning_max"),
        (
            lambda d: d["groups"][0]["measurements"][1].update(id="systolic"),
            DuplicateError,
            "measurements[1].id",
        ),
        (lambda d: d["groups"].append(d["groups"][0]), DuplicateError, "label"),
    ],
)
def test_every_single_field_violation_rejected(mutate, expected, path_fragment):
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    mutate(doc)
    with pytest.raises(expected) as exc:
        parse_dataset(json.dumps(doc))
    assert path_fragment in (exc.value.path or "")


def test_collect_violations_reports_multiple():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    doc["groups"][0]["measurements"][0]["min"] = 500
    doc["groups"][0]["measurements"][1]["id"] = "BAD"
    violations = collect_violations(json.dumps(doc))
    assert len(violations) == 2
    assert {type(v) for v in violations} == {RangeError, SchemaError}


def test_collect_violations_empty_for_valid():
    assert collect_violations(json.dumps(BLOOD_PRESSURE)) == []


def test_subject_is_optional():
    doc = json.loads(json.dumps(BLOOD_PRESSURE))
    doc["subject"] = "Demo person"
    assert parse_dataset(json.dumps(doc)).subject == "Demo person"
    assert parse_dataset(json.dumps(BLOOD_PRESSURE)).subject is None


# ---------------------------------------------------------------------------
# Round-trip / canonical form


def test_serialize_parse_fixed_point(patient_text):
    first = parse_dataset(patient_text)
    canonical = serialize_dataset(first)
    assert parse_dataset(canonical) == first
    assert serialize_dataset(parse_dataset(canonical)) == canonical


def test_bundled_dataset_is_canonical(patient_text):
    assert serialize_dataset(parse_dataset(patient_text)).encode("utf-8") == patient_text


@settings(max_examples=50)
@given(st.data())
def test_round_trip_random_documents(data):
    import random as _random

    from conftest import random_dataset_doc

    seed = data.draw(st.integers(min_value=0, max_value=2**32 - 1))
    doc, _ = random_dataset_doc(_random.Random(seed), max_groups=4, max_measurements=4)
    first = parse_dataset(json.dumps(doc))
    canonical = serialize_dataset(first)
    assert parse_dataset(canonical) == first


# ---------------------------------------------------------------------------
# Epoch conversion


@pytest.mark.parametrize(
    "timestamp, expected",
    [
        (T_BEFORE, datetime(2015, 1, 9, 10, 10, 24, tzinfo=timezone.utc)),
        (T_AFTER, datetime(2015, 2, 12, 12, 5, 20, tzinfo=timezone.utc)),
        (0, datetime(1970, 1, 1, 0, 0, 0, tzinfo=timezone.utc)),
    ],
)
def test_epoch_to_utc(timestamp, expected):
    assert epoch_to_utc(timestamp) == expected


def test_epoch_rejects_negative():
    with pytest.raises(ValueError):
        epoch_to_utc(-1)


# ---------------------------------------------------------------------------
# Sample selection


@pytest.fixture()
def systolic():
    return parse_dataset(json.dumps(BLOOD_PRESSURE)).groups[0].measurements[0]


def test_select_exact_hit(systolic):
    assert select_sample(systolic, T_AFTER).timestamp == T_AFTER


def test_select_between_samples(systolic):
    assert select_sample(systolic, 1422000000).timestamp == T_BEFORE


def test_select_before_first_is_absent(systolic):
    assert select_sample(systolic, 1400000000) is None


def test_select_exact_policy(systolic):
    assert select_sample(systolic, T_BEFORE, SelectionPolicy.EXACT).timestamp == T_BEFORE
    assert select_sample(systolic, T_BEFORE + 1, SelectionPolicy.EXACT) is None


@settings(max_examples=200)
@given(
    times=st.lists(st.integers(min_value=0, max_value=10_000), min_size=1, max_size=20, unique=True),
    t=st.integers(min_value=-100, max_value=10_100),
)
def test_select_matches_scan_oracle(times, t):
    doc = {
        "groups": [
            {
                "label": "G",
                "measurements": [
                    {
                        "id": "m",
                        "label": "M",
                        "units": "",
                        "min": 0,
                        "max": 1,
                        "samples": [{"timestamp": ts, "value": float(i)} for i, ts in enumerate(sorted(times))],
                    }
                ],
            }
        ]
    }
    m = parse_dataset(json.dumps(doc)).groups[0].measurements[0]
    expected = select_sample_oracle(m.samples, t)
    assert select_sample(m, t) == expected


def test_latest_timestamps(patient_dataset):
    assert latest_timestamps(patient_dataset, 1) == (T_AFTER,)
    assert latest_timestamps(patient_dataset, 2) == (T_BEFORE, T_AFTER)
    assert latest_timestamps(patient_dataset, 5) == (T_BEFORE, T_AFTER)


def test_snapshot_spec_requires_ascending():
    with pytest.raises(ValueError):
        SnapshotSpec(timestamps=(5, 5))
    with pytest.raises(ValueError):
        SnapshotSpec(timestamps=(9, 3))
    with pytest.raises(ValueError):
        SnapshotSpec(timestamps=())
