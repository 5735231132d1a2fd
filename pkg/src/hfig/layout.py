"""Geometry engine: angular slots, radial normalization, classification, polygons, scene.

Angles are radians in screen coordinates (y axis points down), so with the
default start angle of -pi/2 the first slot begins at 12 o'clock and clockwise
travel means numerically increasing angles. Radii and all other lengths are px.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .data_model import (
    HealthDataset,
    Measurement,
    RangeSet,
    SnapshotSpec,
    epoch_to_utc,
    select_sample,
)
from .errors import SchemaError
from .labels import LabelAnchor, PlacedLabel, place_labels

LAYOUT_VERSION = 1

TWO_PI = 2.0 * math.pi


class Direction(str, Enum):
    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"


class ShowLabels(str, Enum):
    ALL = "all"
    NONE = "none"


class ColorClass(str, Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"


@dataclass(frozen=True, slots=True)
class LayoutConfig:
    """Every geometric and styling constant in one place.

    The annular band between ``r_band_inner`` and ``r_band_outer`` represents
    the recommended range; values outside it plot between the band and the
    clamping radii ``r_plot_min`` / ``r_plot_max``. ``label_gutter`` reserves
    canvas space outside the plot area for label text.
    """

    canvas_size: float = 1400.0
    r_plot_min: float = 100.0
    r_band_inner: float = 280.0
    r_band_outer: float = 400.0
    r_plot_max: float = 520.0
    label_gutter: float = 180.0
    start_angle: float = -math.pi / 2.0
    direction: Direction = Direction.CLOCKWISE
    label_margin: float = 8.0
    label_line_height: float = 14.0
    label_font_size: float = 12.0
    group_label_font_size: float = 15.0
    label_x_offset: float = 10.0
    point_radius: float = 5.0
    point_stroke_width: float = 1.5
    polygon_stroke_width: float = 2.0
    snapshot_lighten_step: float = 0.35
    show_labels: ShowLabels = ShowLabels.ALL
    color_green: str = "#2e7d32"
    color_yellow: str = "#f9a825"
    color_red: str = "#c62828"
    band_fill: str = "#e8f0e8"
    band_stroke: str = "#c5d5c5"
    polygon_color: str = "#455a64"
    text_color: str = "#212121"
    detail_text_color: str = "#546e7a"

    def __post_init__(self) -> None:
        if self.canvas_size <= 0:
            raise ValueError("canvas_size must be positive")
        if not (0 < self.r_plot_min < self.r_band_inner < self.r_band_outer < self.r_plot_max):
            raise ValueError(
                "radii must satisfy 0 < r_plot_min < r_band_inner < r_band_outer < r_plot_max"
            )
        if self.r_plot_max > self.canvas_size / 2.0 - self.label_gutter:
            raise ValueError("r_plot_max must leave the label gutter free inside the canvas")
        if not 0.0 <= self.snapshot_lighten_step < 1.0:
            raise ValueError("snapshot_lighten_step must be in [0, 1)")
        if self.label_margin < 0 or self.label_gutter < 0 or self.label_x_offset < 0:
            raise ValueError("margins must be non-negative")
        if self.point_radius <= 0 or self.label_line_height <= 0 or self.label_font_size <= 0:
            raise ValueError("point_radius, line height, and font size must be positive")

    @property
    def center(self) -> tuple[float, float]:
        return (self.canvas_size / 2.0, self.canvas_size / 2.0)

    def scaled(self, canvas_size: float) -> "LayoutConfig":
        """Rescale the plot geometry to a new canvas side.

        Radii and the label gutter scale proportionally; text metrics, margins,
        and marker sizes stay fixed, so a larger canvas genuinely relieves label
        crowding (and a small one can overflow).
        """
        f = canvas_size / self.canvas_size
        return replace(
            self,
            canvas_size=canvas_size,
            r_plot_min=self.r_plot_min * f,
            r_band_inner=self.r_band_inner * f,
            r_band_outer=self.r_band_outer * f,
            r_plot_max=self.r_plot_max * f,
            label_gutter=self.label_gutter * f,
        )


_CONFIG_ENUMS = {"direction": Direction, "show_labels": ShowLabels}


def config_from_json(text: str | bytes) -> LayoutConfig:
    """Build a LayoutConfig from a JSON object of field overrides."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed config JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("config must be a JSON object", path="$")
    fields = {f for f in LayoutConfig.__dataclass_fields__}
    kwargs: dict = {}
    for key, value in data.items():
        if key not in fields:
            raise SchemaError("unknown config key", path=f"$.{key}")
        if key in _CONFIG_ENUMS:
            try:
                value = _CONFIG_ENUMS[key](value)
            except ValueError:
                choices = ", ".join(e.value for e in _CONFIG_ENUMS[key])
                raise SchemaError(f"must be one of: {choices}", path=f"$.{key}") from None
        kwargs[key] = value
    try:
        return LayoutConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"invalid config: {exc}", path="$") from exc


# ---------------------------------------------------------------------------
# Angular slot layout


@dataclass(frozen=True, slots=True)
class SectorArc:
    group_label: str
    start_angle: float
    end_angle: float


@dataclass(frozen=True, slots=True)
class SlotEntry:
    measurement_id: str
    slot_index: int
    angle: float


@dataclass(frozen=True, slots=True)
class AngularSlotPlan:
    """One slot per measurement plus one empty gap slot after each group."""

    slot_width: float
    total_slots: int
    entries: tuple[SlotEntry, ...]
    sectors: tuple[SectorArc, ...]

    def angle_of(self, measurement_id: str) -> float:
        for entry in self.entries:
            if entry.measurement_id == measurement_id:
                return entry.angle
        raise KeyError(measurement_id)


def _direction_sign(direction: Direction) -> float:
    return 1.0 if direction is Direction.CLOCKWISE else -1.0


def compute_slots(dataset: HealthDataset, config: LayoutConfig) -> AngularSlotPlan:
    """Assign each measurement the center of its slot, leaving a gap slot per group."""
    total_slots = sum(len(g.measurements) + 1 for g in dataset.groups)
    slot_width = TWO_PI / total_slots
    sign = _direction_sign(config.direction)

    entries: list[SlotEntry] = []
    sectors: list[SectorArc] = []
    slot = 0
    for group in dataset.groups:
        first = slot
        for m in group.measurements:
            angle = config.start_angle + sign * (slot + 0.5) * slot_width
            entries.append(SlotEntry(measurement_id=m.id, slot_index=slot, angle=angle))
            slot += 1
        sectors.append(
            SectorArc(
                group_label=group.label,
                start_angle=config.start_angle + sign * first * slot_width,
                end_angle=config.start_angle + sign * slot * slot_width,
            )
        )
        slot += 1  # gap slot between groups

    return AngularSlotPlan(
        slot_width=slot_width,
        total_slots=total_slots,
        entries=tuple(entries),
        sectors=tuple(sectors),
    )


# ---------------------------------------------------------------------------
# Radial normalization and classification


def value_to_radius(value: float, ranges: RangeSet, config: LayoutConfig) -> float:
    """Map a value to its plot radius, normalized against the recommended range.

    Inside [rec_lo, rec_hi] the mapping is linear across the band. Outside, the
    deviation is measured in units of the recommended span and clamped at one
    full span, which lands on the plot boundary. A degenerate span (rec_lo ==
    rec_hi, e.g. a zero-target measurement) puts the on-target value at the
    band midpoint and falls back to max(|rec_lo|, 1) as the deviation unit.
    """
    lo, hi = ranges.rec_lo, ranges.rec_hi
    span = hi - lo
    if lo <= value <= hi:
        if span == 0.0:
            return (config.r_band_inner + config.r_band_outer) / 2.0
        if value == lo:
            return config.r_band_inner
        if value == hi:
            return config.r_band_outer
        return config.r_band_inner + (value - lo) / span * (
            config.r_band_outer - config.r_band_inner
        )
    unit = span if span > 0.0 else max(abs(lo), 1.0)
    if value > hi:
        d = min(1.0, (value - hi) / unit)
        return config.r_band_outer + d * (config.r_plot_max - config.r_band_outer)
    d = min(1.0, (lo - value) / unit)
    return config.r_band_inner - d * (config.r_band_inner - config.r_plot_min)


def classify(value: float, ranges: RangeSet) -> ColorClass:
    """Traffic-light classification against recommended and warning bounds.

    Green inside the recommended range (bounds inclusive). Outside it, the
    violated side's warning bound grants yellow when the value is still within
    it (warning bound inclusive); with no warning bound on that side, or beyond
    it, the value is red.
    """
    if ranges.rec_lo <= value <= ranges.rec_hi:
        return ColorClass.GREEN
    if value < ranges.rec_lo:
        if ranges.warn_lo is not None and ranges.warn_lo <= value:
            return ColorClass.YELLOW
        return ColorClass.RED
    if ranges.warn_hi is not None and value <= ranges.warn_hi:
        return ColorClass.YELLOW
    return ColorClass.RED


# ---------------------------------------------------------------------------
# Points and polygons


@dataclass(frozen=True, slots=True)
class PlottedPoint:
    measurement_id: str
    snapshot_index: int
    angle: float
    radius: float
    value: float | None
    color: ColorClass | None
    present: bool


@dataclass(frozen=True, slots=True)
class SnapshotPolygon:
    """One snapshot's present points joined in angular order; closed only with >= 3 vertices."""

    snapshot_index: int
    vertices: tuple[tuple[float, float], ...]
    closed: bool


def plot_points(
    dataset: HealthDataset,
    spec: SnapshotSpec,
    plan: AngularSlotPlan,
    config: LayoutConfig,
) -> tuple[PlottedPoint, ...]:
    """One point per (measurement, snapshot); absent when no sample matches."""
    angles = {e.measurement_id: e.angle for e in plan.entries}
    points: list[PlottedPoint] = []
    for snap_index, t in enumerate(spec.timestamps):
        for m in dataset.measurements():
            sample = select_sample(m, t, spec.policy)
            if sample is None:
                points.append(
                    PlottedPoint(
                        measurement_id=m.id,
                        snapshot_index=snap_index,
                        angle=angles[m.id],
                        radius=0.0,
                        value=None,
                        color=None,
                        present=False,
                    )
                )
                continue
            points.append(
                PlottedPoint(
                    measurement_id=m.id,
                    snapshot_index=snap_index,
                    angle=angles[m.id],
                    radius=value_to_radius(sample.value, m.ranges, config),
                    value=sample.value,
                    color=classify(sample.value, m.ranges),
                    present=True,
                )
            )
    return tuple(points)


def build_polygons(
    points: Sequence[PlottedPoint], plan: AngularSlotPlan
) -> tuple[SnapshotPolygon, ...]:
    """Join each snapshot's present points in angular order, crossing group gaps.

    Returned oldest-first so the newest snapshot draws on top. Measurements
    absent at a snapshot are skipped, never interpolated.
    """
    slot_order = {e.measurement_id: e.slot_index for e in plan.entries}
    by_snapshot: dict[int, list[PlottedPoint]] = {}
    for p in points:
        if p.present:
            by_snapshot.setdefault(p.snapshot_index, []).append(p)

    polygons: list[SnapshotPolygon] = []
    for snap_index in sorted(by_snapshot):
        ordered = sorted(by_snapshot[snap_index], key=lambda p: slot_order[p.measurement_id])
        vertices = tuple((p.angle, p.radius) for p in ordered)
        polygons.append(
            SnapshotPolygon(
                snapshot_index=snap_index, vertices=vertices, closed=len(vertices) >= 3
            )
        )
    return tuple(polygons)


def label_radius(points: Sequence[PlottedPoint], config: LayoutConfig) -> float:
    """Radial anchor for one measurement's label: max present-point radius plus margin.

    The max is over radii, not values, so a low outlier (small radius) never
    pulls the label inward past a later, larger-radius point. With no present
    points, labels anchor just outside the band.
    """
    radii = [p.radius for p in points if p.present]
    if not radii:
        return config.r_band_outer + config.label_margin
    return max(radii) + config.label_margin


# ---------------------------------------------------------------------------
# Snapshot styling


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    color = color.lstrip("#")
    return (int(color[0:2], 16), int(color[2:4], 16), int(color[4:6], 16))


def lighten(color: str, step: float, age: int) -> str:
    """Blend toward white by ``step``, applied once per step of age.

    The newest snapshot (age 0) keeps the full color; each older snapshot is
    interpolated toward white again, so the color approaches but never reaches
    white for step < 1.
    """
    r, g, b = _hex_to_rgb(color)
    factor = 1.0 - (1.0 - step) ** age
    r = round(r + (255 - r) * factor)
    g = round(g + (255 - g) * factor)
    b = round(b + (255 - b) * factor)
    return f"#{r:02x}{g:02x}{b:02x}"


def snapshot_color(base: str, snapshot_index: int, snapshot_count: int, config: LayoutConfig) -> str:
    age = snapshot_count - 1 - snapshot_index
    return lighten(base, config.snapshot_lighten_step, age)


# ---------------------------------------------------------------------------
# Scene


@dataclass(frozen=True, slots=True)
class GroupLabel:
    text: str
    angle: float
    radius: float


@dataclass(frozen=True, slots=True)
class LegendEntry:
    snapshot_index: int
    timestamp: int
    text: str
    color: str


@dataclass(frozen=True, slots=True)
class Scene:
    """Fully resolved geometry; the renderer's and the viewer's single input.

    Point, polygon, and sector geometry never depends on show_labels: hiding
    labels only empties the ``labels`` tuple.
    """

    canvas_size: float
    center: tuple[float, float]
    plan: AngularSlotPlan
    snapshots: tuple[int, ...]
    points: tuple[PlottedPoint, ...]
    polygons: tuple[SnapshotPolygon, ...]
    labels: tuple[PlacedLabel, ...]
    group_labels: tuple[GroupLabel, ...]
    legend: tuple[LegendEntry, ...]
    show_labels: ShowLabels
    subject: str | None


def _format_value(value: float) -> str:
    if float(value).is_integer() and abs(value) < 2**53:
        return str(int(value))
    return f"{value:.6g}"


def _label_lines(measurement: Measurement, points: Sequence[PlottedPoint]) -> tuple[str, str]:
    present = [p for p in points if p.present]
    if not present:
        return (measurement.label, "n/a")
    latest = max(present, key=lambda p: p.snapshot_index)
    value = _format_value(latest.value if latest.value is not None else 0.0)
    line = f"{value} {measurement.units}".strip()
    return (measurement.label, line)


def _estimate_box(lines: tuple[str, str], config: LayoutConfig) -> tuple[float, float]:
    # character-count estimate; 0.6em per glyph overestimates typical sans-serif
    # text so the non-overlap guarantee survives real font metrics
    width = max(len(line) for line in lines) * 0.6 * config.label_font_size
    height = len(lines) * config.label_line_height
    return (max(width, config.label_font_size), height)


def build_scene(dataset: HealthDataset, spec: SnapshotSpec, config: LayoutConfig) -> Scene:
    """Compose the full scene; deterministic for identical inputs."""
    plan = compute_slots(dataset, config)
    points = plot_points(dataset, spec, plan, config)
    polygons = build_polygons(points, plan)

    by_measurement: dict[str, list[PlottedPoint]] = {}
    for p in points:
        by_measurement.setdefault(p.measurement_id, []).append(p)

    labels: tuple[PlacedLabel, ...] = ()
    if config.show_labels is ShowLabels.ALL:
        anchors = []
        for m in dataset.measurements():
            mpoints = by_measurement[m.id]
            lines = _label_lines(m, mpoints)
            width, height = _estimate_box(lines, config)
            anchors.append(
                LabelAnchor(
                    measurement_id=m.id,
                    angle=plan.angle_of(m.id),
                    label_radius=label_radius(mpoints, config),
                    width=width,
                    height=height,
                    lines=lines,
                )
            )
        cx, cy = config.center
        circles = [
            (cx + p.radius * math.cos(p.angle), cy + p.radius * math.sin(p.angle), config.point_radius)
            for p in points
            if p.present
        ]
        labels = place_labels(anchors, config, point_circles=circles)

    group_labels = tuple(
        GroupLabel(
            text=sector.group_label,
            angle=(sector.start_angle + sector.end_angle) / 2.0,
            radius=(config.r_band_inner + config.r_band_outer) / 2.0,
        )
        for sector in plan.sectors
    )

    count = len(spec.timestamps)
    legend = tuple(
        LegendEntry(
            snapshot_index=i,
            timestamp=t,
            text=epoch_to_utc(t).strftime("%Y-%m-%d %H:%M:%S UTC"),
            color=snapshot_color(config.polygon_color, i, count, config),
        )
        for i, t in enumerate(spec.timestamps)
    )

    return Scene(
        canvas_size=config.canvas_size,
        center=config.center,
        plan=plan,
        snapshots=tuple(spec.timestamps),
        points=points,
        polygons=polygons,
        labels=labels,
        group_labels=group_labels,
        legend=legend,
        show_labels=config.show_labels,
        subject=dataset.subject,
    )


# ---------------------------------------------------------------------------
# Scene serialization (layout JSON, the viewer contract)


def _round6(x: float) -> float:
    r = round(x, 6)
    return 0.0 if r == 0.0 else r


def _polar_xy(center: tuple[float, float], angle: float, radius: float) -> tuple[float, float]:
    return (center[0] + radius * math.cos(angle), center[1] + radius * math.sin(angle))


def _point_fill(point: PlottedPoint, snapshot_count: int, config: LayoutConfig) -> str:
    base = {
        ColorClass.GREEN: config.color_green,
        ColorClass.YELLOW: config.color_yellow,
        ColorClass.RED: config.color_red,
    }[point.color]
    return snapshot_color(base, point.snapshot_index, snapshot_count, config)


def scene_to_json(scene: Scene, config: LayoutConfig, dataset: HealthDataset) -> str:
    """Serialize the scene for the interactive viewer (versioned layout JSON).

    Carries everything the viewer shows, already resolved: coordinates in px,
    angles in radians, colors as hex. The viewer never recomputes
    normalization, classification, or label placement.
    """
    center = scene.center
    snapshot_count = len(scene.snapshots)

    measurements = {}
    for group in dataset.groups:
        for m in group.measurements:
            entry: dict = {
                "label": m.label,
                "units": m.units,
                "group": group.label,
                "min": m.ranges.rec_lo,
                "max": m.ranges.rec_hi,
            }
            if m.ranges.warn_lo is not None:
                entry["warning_min"] = m.ranges.warn_lo
            if m.ranges.warn_hi is not None:
                entry["warning_max"] = m.ranges.warn_hi
            entry["samples"] = [[s.timestamp, s.value] for s in m.samples]
            measurements[m.id] = entry

    points = []
    for p in scene.points:
        x, y = _polar_xy(center, p.angle, p.radius) if p.present else (None, None)
        points.append(
            {
                "id": p.measurement_id,
                "snapshot": p.snapshot_index,
                "present": p.present,
                "angle": _round6(p.angle),
                "radius": _round6(p.radius) if p.present else None,
                "x": _round6(x) if p.present else None,
                "y": _round6(y) if p.present else None,
                "value": p.value,
                "color_class": p.color.value if p.color is not None else None,
                "fill": _point_fill(p, snapshot_count, config) if p.present else None,
            }
        )

    polygons = []
    for poly in scene.polygons:
        vertices = []
        for angle, radius in poly.vertices:
            x, y = _polar_xy(center, angle, radius)
            vertices.append(
                {"angle": _round6(angle), "radius": _round6(radius), "x": _round6(x), "y": _round6(y)}
            )
        polygons.append(
            {
                "snapshot": poly.snapshot_index,
                "closed": poly.closed,
                "color": snapshot_color(
                    config.polygon_color, poly.snapshot_index, snapshot_count, config
                ),
                "vertices": vertices,
            }
        )

    sectors = []
    for sector, glabel in zip(scene.plan.sectors, scene.group_labels):
        lx, ly = _polar_xy(center, glabel.angle, glabel.radius)
        sectors.append(
            {
                "group": sector.group_label,
                "start_angle": _round6(sector.start_angle),
                "end_angle": _round6(sector.end_angle),
                "label_x": _round6(lx),
                "label_y": _round6(ly),
            }
        )

    labels = []
    for label in scene.labels:
        labels.append(
            {
                "id": label.measurement_id,
                "lines": list(label.lines),
                "x": _round6(label.anchor_x),
                "y": _round6(label.anchor_y),
                "width": _round6(label.width),
                "height": _round6(label.height),
                "quadrant": label.quadrant.value,
                "label_radius": _round6(label.label_radius),
                "text_anchor": label.text_anchor,
            }
        )

    doc = {
        "layout_version": LAYOUT_VERSION,
        "canvas_size": _round6(scene.canvas_size),
        "center": [_round6(center[0]), _round6(center[1])],
        "band": {
            "r_plot_min": _round6(config.r_plot_min),
            "r_band_inner": _round6(config.r_band_inner),
            "r_band_outer": _round6(config.r_band_outer),
            "r_plot_max": _round6(config.r_plot_max),
            "fill": config.band_fill,
            "stroke": config.band_stroke,
        },
        "slot_width": _round6(scene.plan.slot_width),
        "total_slots": scene.plan.total_slots,
        "start_angle": _round6(config.start_angle),
        "direction": config.direction.value,
        "style": {
            "point_radius": _round6(config.point_radius),
            "point_stroke_width": _round6(config.point_stroke_width),
            "polygon_stroke_width": _round6(config.polygon_stroke_width),
            "label_font_size": _round6(config.label_font_size),
            "label_line_height": _round6(config.label_line_height),
            "group_label_font_size": _round6(config.group_label_font_size),
            "text_color": config.text_color,
            "detail_text_color": config.detail_text_color,
        },
        "subject": scene.subject,
        "snapshots": [
            {
                "index": e.snapshot_index,
                "timestamp": e.timestamp,
                "label": e.text,
                "color": e.color,
            }
            for e in scene.legend
        ],
        "sectors": sectors,
        "points": points,
        "polygons": polygons,
        "labels": labels,
        "measurements": measurements,
        "show_labels": scene.show_labels.value,
    }
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)
