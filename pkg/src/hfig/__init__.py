"""hfig: radial health-measurement figures.

Grouped measurements with recommended ranges render as multi-snapshot polygons
over a normalized annular band, emitted as standalone SVG. Ships a CLI
(``hfig``), an HTTP render service, and a tracker-data ingestion path.
"""

from .data_model import (
    HealthDataset,
    Measurement,
    MeasurementGroup,
    RangeSet,
    Sample,
    SelectionPolicy,
    SnapshotSpec,
    epoch_to_utc,
    latest_timestamps,
    parse_dataset,
    select_sample,
    serialize_dataset,
)
from .errors import (
    ConflictError,
    DataSyntaxError,
    DatasetError,
    DuplicateError,
    LayoutOverflow,
    MappingError,
    RangeError,
    SchemaError,
    TimeParseError,
)
from .ingest import (
    DatasetFragment,
    IngestResult,
    MetricMapping,
    TrackerPayload,
    merge,
    parse_metric_mapping,
    parse_tracker_payload,
    tracker_to_samples,
)
from .labels import LabelAnchor, PlacedLabel, Quadrant, place_labels
from .layout import (
    LAYOUT_VERSION,
    AngularSlotPlan,
    ColorClass,
    Direction,
    LayoutConfig,
    PlottedPoint,
    Scene,
    ShowLabels,
    SnapshotPolygon,
    build_polygons,
    build_scene,
    classify,
    compute_slots,
    config_from_json,
    label_radius,
    plot_points,
    scene_to_json,
    value_to_radius,
)
from .pipeline import layout_from_source, render_source
from .svg_render import SvgDocument, lint_svg, polar_to_cartesian, render_svg

__version__ = "0.1.0"

__all__ = [
    "AngularSlotPlan",
    "ColorClass",
    "ConflictError",
    "DataSyntaxError",
    "DatasetError",
    "DatasetFragment",
    "Direction",
    "DuplicateError",
    "HealthDataset",
    "IngestResult",
    "LAYOUT_VERSION",
    "LabelAnchor",
    "LayoutConfig",
    "LayoutOverflow",
    "MappingError",
    "Measurement",
    "MeasurementGroup",
    "MetricMapping",
    "PlacedLabel",
    "PlottedPoint",
    "Quadrant",
    "RangeError",
    "RangeSet",
    "Sample",
    "Scene",
    "SchemaError",
    "SelectionPolicy",
    "ShowLabels",
    "SnapshotPolygon",
    "SnapshotSpec",
    "SvgDocument",
    "TimeParseError",
    "TrackerPayload",
    "build_polygons",
    "build_scene",
    "classify",
    "compute_slots",
    "config_from_json",
    "epoch_to_utc",
    "label_radius",
    "latest_timestamps",
    "layout_from_source",
    "lint_svg",
    "merge",
    "parse_dataset",
    "parse_metric_mapping",
    "parse_tracker_payload",
    "place_labels",
    "plot_points",
    "polar_to_cartesian",
    "render_source",
    "render_svg",
    "scene_to_json",
    "select_sample",
    "serialize_dataset",
    "tracker_to_samples",
    "value_to_radius",
]
