"""Activity-tracker ingestion: payload parsing, metric mapping, dataset merging.

Tracker payloads carry timed entries whose numeric fields are metrics. A
user-supplied mapping file assigns each metric a target group, measurement id,
display label, units, and recommended ranges; unmapped metrics are reported,
never silently dropped. Entry times without an explicit timezone are rejected:
health data crossing devices must be unambiguous.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from typing import Mapping

from .data_model import (
    MAX_TIMESTAMP,
    HealthDataset,
    Measurement,
    MeasurementGroup,
    RangeSet,
    Sample,
    parse_dataset,
    serialize_dataset,
)
from .errors import ConflictError, DataSyntaxError, MappingError, SchemaError, TimeParseError

_ENTRY_LIST_KEYS = ("entries", "activities")
_TIME_KEYS = ("start_time", "startTime")


@dataclass(frozen=True, slots=True)
class TrackerEntry:
    start_time: int  # epoch seconds UTC
    metrics: Mapping[str, float]


@dataclass(frozen=True, slots=True)
class TrackerPayload:
    entries: tuple[TrackerEntry, ...]


@dataclass(frozen=True, slots=True)
class MetricTarget:
    group_label: str
    measurement_id: str
    label: str
    units: str
    ranges: RangeSet


@dataclass(frozen=True, slots=True)
class MetricMapping:
    metrics: Mapping[str, MetricTarget]


@dataclass(frozen=True, slots=True)
class DatasetFragment:
    """A partial dataset produced by ingestion; unlike HealthDataset it may be empty."""

    groups: tuple[MeasurementGroup, ...]

    def is_empty(self) -> bool:
        return not self.groups


@dataclass(frozen=True, slots=True)
class IngestResult:
    fragment: DatasetFragment
    unmapped: tuple[str, ...]
    entry_count: int


def _parse_time(value: object, path: str) -> int:
    if isinstance(value, bool):
        raise TimeParseError("start time must be an epoch integer or ISO-8601 string", path=path)
    if isinstance(value, int):
        if not 0 <= value <= MAX_TIMESTAMP:
            raise TimeParseError(f"epoch time out of range: {value}", path=path)
        return value
    if isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        try:
            parsed = datetime.fromisoformat(text)
        except ValueError as exc:
            raise TimeParseError(f"unparsable time {value!r}", path=path) from exc
        if parsed.tzinfo is None:
            raise TimeParseError(
                f"time {value!r} has no timezone; health data must be unambiguous", path=path
            )
        return int(parsed.timestamp())
    raise TimeParseError(
        f"start time must be an epoch integer or ISO-8601 string, got {type(value).__name__}",
        path=path,
    )


def parse_tracker_payload(text: str | bytes) -> TrackerPayload:
    """Parse a tracker API response.

    Accepts a bare entry array or an object holding it under ``entries`` or
    ``activities`` (the shape step counters expose). Within an entry, the start
    time comes from ``start_time``/``startTime``; every other numeric field is
    a metric, and non-numeric fields are ignored.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataSyntaxError(f"payload is not valid UTF-8: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataSyntaxError(f"malformed payload JSON: {exc.msg}") from exc

    if isinstance(data, list):
        items, base = data, "$"
    elif isinstance(data, dict):
        for key in _ENTRY_LIST_KEYS:
            if key in data:
                if not isinstance(data[key], list):
                    raise SchemaError("expected an array", path=f"$.{key}")
                items, base = data[key], f"$.{key}"
                break
        else:
            raise SchemaError(
                "payload must contain an 'entries' or 'activities' array", path="$"
            )
    else:
        raise SchemaError("payload must be an array or object", path="$")

    entries: list[TrackerEntry] = []
    for i, item in enumerate(items):
        path = f"{base}[{i}]"
        if not isinstance(item, dict):
            raise SchemaError("entry must be an object", path=path)
        time_value = None
        for key in _TIME_KEYS:
            if key in item:
                time_value = _parse_time(item[key], f"{path}.{key}")
                break
        if time_value is None:
            raise TimeParseError("entry has no start_time/startTime", path=path)
        metrics = {
            key: float(val)
            for key, val in item.items()
            if key not in _TIME_KEYS
            and not isinstance(val, bool)
            and isinstance(val, (int, float))
        }
        entries.append(TrackerEntry(start_time=time_value, metrics=metrics))
    return TrackerPayload(entries=tuple(entries))


def parse_metric_mapping(text: str | bytes) -> MetricMapping:
    """Parse a mapping config: metric name -> target measurement definition."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MappingError(f"malformed mapping JSON: {exc.msg}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("metrics"), dict):
        raise MappingError("mapping must be an object with a 'metrics' object", path="$")

    targets: dict[str, MetricTarget] = {}
    for name, node in data["metrics"].items():
        path = f"$.metrics.{name}"
        if not isinstance(node, dict):
            raise MappingError("mapping entry must be an object", path=path)
        for key in ("group", "id", "label", "units", "min", "max"):
            if key not in node:
                raise MappingError("missing required key", path=f"{path}.{key}")
        ranges = RangeSet(
            rec_lo=float(node["min"]),
            rec_hi=float(node["max"]),
            warn_lo=float(node["warning_min"]) if "warning_min" in node else None,
            warn_hi=float(node["warning_max"]) if "warning_max" in node else None,
        )
        targets[name] = MetricTarget(
            group_label=str(node["group"]),
            measurement_id=str(node["id"]),
            label=str(node["label"]),
            units=str(node["units"]),
            ranges=ranges,
        )
    return MetricMapping(metrics=targets)


def _validate_fragment(fragment: DatasetFragment) -> None:
    # round-trip through the data-model parser so duplicates, range errors, and
    # id rules surface with the exact same semantics as file input
    if fragment.is_empty():
        return
    parse_dataset(serialize_dataset(HealthDataset(groups=fragment.groups)))


def tracker_to_samples(payload: TrackerPayload, mapping: MetricMapping) -> IngestResult:
    """Turn mapped metrics into measurements with one sample per entry."""
    samples_by_metric: dict[str, list[Sample]] = {}
    unmapped: set[str] = set()
    for entry in payload.entries:
        for name, value in entry.metrics.items():
            if name in mapping.metrics:
                samples_by_metric.setdefault(name, []).append(
                    Sample(timestamp=entry.start_time, value=value)
                )
            else:
                unmapped.add(name)

    groups: dict[str, list[Measurement]] = {}
    group_order: list[str] = []
    for name in mapping.metrics:
        if name not in samples_by_metric:
            continue
        target = mapping.metrics[name]
        samples = tuple(sorted(samples_by_metric[name], key=lambda s: s.timestamp))
        measurement = Measurement(
            id=target.measurement_id,
            label=target.label,
            units=target.units,
            ranges=target.ranges,
            samples=samples,
        )
        if target.group_label not in groups:
            groups[target.group_label] = []
            group_order.append(target.group_label)
        groups[target.group_label].append(measurement)

    fragment = DatasetFragment(
        groups=tuple(
            MeasurementGroup(label=label, measurements=tuple(groups[label]))
            for label in group_order
        )
    )
    _validate_fragment(fragment)
    return IngestResult(
        fragment=fragment,
        unmapped=tuple(sorted(unmapped)),
        entry_count=len(payload.entries),
    )


def _same_definition(a: Measurement, b: Measurement) -> bool:
    return a.label == b.label and a.units == b.units and a.ranges == b.ranges


def _union_samples(measurement_id: str, a: tuple[Sample, ...], b: tuple[Sample, ...]) -> tuple[Sample, ...]:
    merged: dict[int, float] = {s.timestamp: s.value for s in a}
    for s in b:
        if s.timestamp in merged and merged[s.timestamp] != s.value:
            raise ConflictError(
                f"measurement {measurement_id!r} has conflicting values at timestamp {s.timestamp}"
            )
        merged[s.timestamp] = s.value
    return tuple(Sample(timestamp=t, value=merged[t]) for t in sorted(merged))


def merge(base: HealthDataset, fragment: DatasetFragment | HealthDataset) -> HealthDataset:
    """Union a fragment into a dataset.

    Samples are unioned per measurement id and re-sorted; identical duplicate
    samples collapse. New measurements append to their group, new groups append
    to the dataset. A fragment that redefines an existing measurement's label,
    units, or ranges is rejected.
    """
    base_ids = {m.id: m for m in base.measurements()}

    new_groups: list[MeasurementGroup] = list(base.groups)
    group_index = {g.label: i for i, g in enumerate(new_groups)}

    for fgroup in fragment.groups:
        for fm in fgroup.measurements:
            if fm.id in base_ids:
                existing = base_ids[fm.id]
                if not _same_definition(existing, fm):
                    raise ConflictError(
                        f"measurement {fm.id!r} is already defined with different ranges, "
                        "label, or units"
                    )
                merged = Measurement(
                    id=fm.id,
                    label=existing.label,
                    units=existing.units,
                    ranges=existing.ranges,
                    samples=_union_samples(fm.id, existing.samples, fm.samples),
                )
                for gi, group in enumerate(new_groups):
                    if any(m.id == fm.id for m in group.measurements):
                        new_groups[gi] = MeasurementGroup(
                            label=group.label,
                            measurements=tuple(
                                merged if m.id == fm.id else m for m in group.measurements
                            ),
                        )
                        break
            elif fgroup.label in group_index:
                gi = group_index[fgroup.label]
                group = new_groups[gi]
                new_groups[gi] = MeasurementGroup(
                    label=group.label, measurements=group.measurements + (fm,)
                )
            else:
                group_index[fgroup.label] = len(new_groups)
                new_groups.append(MeasurementGroup(label=fgroup.label, measurements=(fm,)))

    result = HealthDataset(groups=tuple(new_groups), subject=base.subject)
    # re-validate through the parser so the merged dataset honors every invariant
    return parse_dataset(serialize_dataset(result))
