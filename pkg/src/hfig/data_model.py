"""Canonical data-source schema: parsing, validation, serialization, snapshot selection.

The data source is a UTF-8 JSON document. Canonical key names:

    top level     groups, subject (optional)
    group         label, measurements
    measurement   id, label, units, min, max, warning_min (optional),
                  warning_max (optional), samples
    sample        timestamp, value

Unknown keys are rejected rather than ignored so schema drift is caught early.
All types are immutable after construction; parsing is a pure function, so
parsed datasets can be shared across concurrent renders.
"""

from __future__ import annotations

import json
import math
import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Iterator

from .errors import DataSyntaxError, DatasetError, DuplicateError, RangeError, SchemaError

_ID_RE = re.compile(r"[a-z0-9_]+\Z")

# 9999-12-31T23:59:59Z; keeps calendar conversion total on every platform.
MAX_TIMESTAMP = 253_402_300_799


@dataclass(frozen=True, slots=True)
class Sample:
    """One observed value at one point in time (epoch seconds UTC)."""

    timestamp: int
    value: float


@dataclass(frozen=True, slots=True)
class RangeSet:
    """Recommended bounds plus optional, independently-present warning bounds."""

    rec_lo: float
    rec_hi: float
    warn_lo: float | None = None
    warn_hi: float | None = None


@dataclass(frozen=True, slots=True)
class Measurement:
    id: str
    label: str
    units: str
    ranges: RangeSet
    samples: tuple[Sample, ...]

    def timestamps(self) -> tuple[int, ...]:
        return tuple(s.timestamp for s in self.samples)


@dataclass(frozen=True, slots=True)
class MeasurementGroup:
    label: str
    measurements: tuple[Measurement, ...]


@dataclass(frozen=True, slots=True)
class HealthDataset:
    groups: tuple[MeasurementGroup, ...]
    subject: str | None = None

    def measurements(self) -> Iterator[Measurement]:
        for group in self.groups:
            yield from group.measurements

    def measurement_count(self) -> int:
        return sum(len(g.measurements) for g in self.groups)

    def sample_count(self) -> int:
        return sum(len(m.samples) for m in self.measurements())

    def all_timestamps(self) -> tuple[int, ...]:
        """Distinct sample timestamps across the dataset, ascending."""
        return tuple(sorted({s.timestamp for m in self.measurements() for s in m.samples}))


class SelectionPolicy(str, Enum):
    NEAREST_AT_OR_BEFORE = "nearest_at_or_before"
    EXACT = "exact"


@dataclass(frozen=True, slots=True)
class SnapshotSpec:
    """Which timestamps to visualize and how samples are matched to them."""

    timestamps: tuple[int, ...]
    policy: SelectionPolicy = SelectionPolicy.NEAREST_AT_OR_BEFORE

    def __post_init__(self) -> None:
        if not self.timestamps:
            raise ValueError("SnapshotSpec requires at least one timestamp")
        if any(b <= a for a, b in zip(self.timestamps, self.timestamps[1:])):
            raise ValueError("SnapshotSpec timestamps must be strictly ascending")


# ---------------------------------------------------------------------------
# Parsing


def _reject_constant(token: str) -> float:
    raise DataSyntaxError(f"non-finite number {token!r} is not allowed")


def _loads(text: str | bytes) -> object:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataSyntaxError(f"input is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DataSyntaxError(
            f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc


def _check_keys(node: dict, path: str, required: tuple[str, ...], allowed: frozenset[str]) -> None:
    for key in required:
        if key not in node:
            raise SchemaError("missing required key", path=f"{path}.{key}")
    for key in node:
        if key not in allowed:
            raise SchemaError("unknown key", path=f"{path}.{key}")


def _obj(node: object, path: str) -> dict:
    if not isinstance(node, dict):
        raise SchemaError(f"expected an object, got {type(node).__name__}", path=path)
    return node


def _array(node: object, path: str) -> list:
    if not isinstance(node, list):
        raise SchemaError(f"expected an array, got {type(node).__name__}", path=path)
    return node


def _string(node: object, path: str) -> str:
    if not isinstance(node, str):
        raise SchemaError(f"expected a string, got {type(node).__name__}", path=path)
    return node


def _number(node: object, path: str) -> float:
    # bool is a subclass of int and must not pass as a number
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise SchemaError(f"expected a number, got {type(node).__name__}", path=path)
    value = float(node)
    if not math.isfinite(value):
        raise SchemaError("number must be finite", path=path)
    return value


def _integer(node: object, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise SchemaError(f"expected an integer, got {type(node).__name__}", path=path)
    return node


_MEASUREMENT_KEYS = frozenset(
    {"id", "label", "units", "min", "max", "warning_min", "warning_max", "samples"}
)


def _parse_sample(node: object, path: str) -> Sample:
    obj = _obj(node, path)
    _check_keys(obj, path, ("timestamp", "value"), frozenset({"timestamp", "value"}))
    ts = _integer(obj["timestamp"], f"{path}.timestamp")
    if ts < 0:
        raise SchemaError("timestamp must be >= 0", path=f"{path}.timestamp")
    if ts > MAX_TIMESTAMP:
        raise SchemaError(f"timestamp must be <= {MAX_TIMESTAMP}", path=f"{path}.timestamp")
    value = _number(obj["value"], f"{path}.value")
    return Sample(timestamp=ts, value=value)


def _parse_measurement(node: object, path: str) -> Measurement:
    obj = _obj(node, path)
    _check_keys(obj, path, ("id", "label", "units", "min", "max", "samples"), _MEASUREMENT_KEYS)

    mid = _string(obj["id"], f"{path}.id")
    if not _ID_RE.fullmatch(mid):
        raise SchemaError("id must match [a-z0-9_]+", path=f"{path}.id")
    label = _string(obj["label"], f"{path}.label")
    units = _string(obj["units"], f"{path}.units")

    rec_lo = _number(obj["min"], f"{path}.min")
    rec_hi = _number(obj["max"], f"{path}.max")
    if rec_lo > rec_hi:
        raise RangeError(f"min {rec_lo:g} exceeds max {rec_hi:g}", path=f"{path}.min")

    warn_lo = warn_hi = None
    if "warning_min" in obj:
        warn_lo = _number(obj["warning_min"], f"{path}.warning_min")
        if warn_lo > rec_lo:
            raise RangeError(
                f"warning_min {warn_lo:g} exceeds min {rec_lo:g}", path=f"{path}.warning_min"
            )
    if "warning_max" in obj:
        warn_hi = _number(obj["warning_max"], f"{path}.warning_max")
        if warn_hi < rec_hi:
            raise RangeError(
                f"warning_max {warn_hi:g} is below max {rec_hi:g}", path=f"{path}.warning_max"
            )

    samples_node = _array(obj["samples"], f"{path}.samples")
    if not samples_node:
        raise SchemaError("must not be empty", path=f"{path}.samples")
    samples = sorted(
        (_parse_sample(s, f"{path}.samples[{i}]") for i, s in enumerate(samples_node)),
        key=lambda s: s.timestamp,
    )
    for a, b in zip(samples, samples[1:]):
        if a.timestamp == b.timestamp:
            raise DuplicateError(
                f"duplicate sample timestamp {a.timestamp}", path=f"{path}.samples"
            )

    ranges = RangeSet(rec_lo=rec_lo, rec_hi=rec_hi, warn_lo=warn_lo, warn_hi=warn_hi)
    return Measurement(id=mid, label=label, units=units, ranges=ranges, samples=tuple(samples))


def _build_dataset(data: object, errors: list[DatasetError] | None) -> HealthDataset:
    root = _obj(data, "$")
    _check_keys(root, "$", ("groups",), frozenset({"groups", "subject"}))
    subject = _string(root["subject"], "$.subject") if "subject" in root else None

    groups_node = _array(root["groups"], "$.groups")
    if not groups_node:
        raise SchemaError("must not be empty", path="$.groups")

    groups: list[MeasurementGroup] = []
    seen_ids: dict[str, str] = {}
    seen_group_labels: dict[str, str] = {}
    for gi, gnode in enumerate(groups_node):
        gpath = f"$.groups[{gi}]"
        try:
            gobj = _obj(gnode, gpath)
            _check_keys(gobj, gpath, ("label", "measurements"), frozenset({"label", "measurements"}))
            glabel = _string(gobj["label"], f"{gpath}.label")
            if glabel in seen_group_labels:
                raise DuplicateError(
                    f"group label {glabel!r} already used at {seen_group_labels[glabel]}",
                    path=f"{gpath}.label",
                )
            seen_group_labels[glabel] = f"{gpath}.label"
            mnodes = _array(gobj["measurements"], f"{gpath}.measurements")
            if not mnodes:
                raise SchemaError("must not be empty", path=f"{gpath}.measurements")
        except DatasetError as exc:
            if errors is None:
                raise
            errors.append(exc)
            continue

        measurements: list[Measurement] = []
        for mi, mnode in enumerate(mnodes):
            mpath = f"{gpath}.measurements[{mi}]"
            try:
                m = _parse_measurement(mnode, mpath)
                if m.id in seen_ids:
                    raise DuplicateError(
                        f"measurement id {m.id!r} already used at {seen_ids[m.id]}",
                        path=f"{mpath}.id",
                    )
            except DatasetError as exc:
                if errors is None:
                    raise
                errors.append(exc)
                continue
            seen_ids[m.id] = f"{mpath}.id"
            measurements.append(m)

        groups.append(MeasurementGroup(label=glabel, measurements=tuple(measurements)))

    return HealthDataset(groups=tuple(groups), subject=subject)


def parse_dataset(text: str | bytes) -> HealthDataset:
    """Parse and fully validate a data-source document.

    Raises the first violation found: DataSyntaxError, SchemaError, RangeError,
    or DuplicateError (all carry a JSON path when one applies).
    """
    return _build_dataset(_loads(text), errors=None)


def collect_violations(text: str | bytes) -> list[DatasetError]:
    """Best-effort validation that keeps going after per-measurement errors.

    Returns an empty list when the document is valid. Structural errors that
    prevent descending further (bad JSON, wrong top-level shape) yield a
    single-element list.
    """
    errors: list[DatasetError] = []
    try:
        _build_dataset(_loads(text), errors=errors)
    except DatasetError as exc:
        errors.append(exc)
    return errors


# ---------------------------------------------------------------------------
# Serialization


def _canonical_number(value: float) -> int | float:
    if float(value).is_integer() and abs(value) < 2**53:
        return int(value)
    return float(value)


def serialize_dataset(dataset: HealthDataset) -> str:
    """Serialize to the canonical form: fixed key order, 2-space indent, LF, trailing newline.

    parse(serialize(parse(x))) == parse(x) for every valid document x.
    """
    doc: dict = {}
    if dataset.subject is not None:
        doc["subject"] = dataset.subject
    doc["groups"] = []
    for group in dataset.groups:
        gdoc: dict = {"label": group.label, "measurements": []}
        for m in group.measurements:
            mdoc: dict = {
                "id": m.id,
                "label": m.label,
                "units": m.units,
                "min": _canonical_number(m.ranges.rec_lo),
                "max": _canonical_number(m.ranges.rec_hi),
            }
            if m.ranges.warn_lo is not None:
                mdoc["warning_min"] = _canonical_number(m.ranges.warn_lo)
            if m.ranges.warn_hi is not None:
                mdoc["warning_max"] = _canonical_number(m.ranges.warn_hi)
            mdoc["samples"] = [
                {"timestamp": s.timestamp, "value": _canonical_number(s.value)} for s in m.samples
            ]
            gdoc["measurements"].append(mdoc)
        doc["groups"].append(gdoc)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Time and snapshot selection


def epoch_to_utc(timestamp: int) -> datetime:
    """Epoch seconds to a timezone-aware UTC datetime (proleptic Gregorian, no leap seconds)."""
    if timestamp < 0:
        raise ValueError("timestamp must be >= 0")
    return datetime.fromtimestamp(timestamp, tz=timezone.utc)


def select_sample(
    measurement: Measurement,
    t: int,
    policy: SelectionPolicy = SelectionPolicy.NEAREST_AT_OR_BEFORE,
) -> Sample | None:
    """Pick the sample matched to snapshot time ``t``, or None when there is none.

    nearest_at_or_before returns the sample with the largest timestamp <= t;
    exact requires a sample at precisely t. Absence is a value, not an error.
    """
    times = measurement.timestamps()
    if policy is SelectionPolicy.EXACT:
        i = bisect_left(times, t)
        if i < len(times) and times[i] == t:
            return measurement.samples[i]
        return None
    i = bisect_right(times, t) - 1
    if i < 0:
        return None
    return measurement.samples[i]


def latest_timestamps(dataset: HealthDataset, n: int) -> tuple[int, ...]:
    """The n most recent distinct sample timestamps across the dataset, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    distinct = dataset.all_timestamps()
    return distinct[-n:]
