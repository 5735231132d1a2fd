"""One-call orchestration shared by the CLI and the HTTP service.

Both front doors go through the same functions so a POST body and a file on
disk render to byte-identical output.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from .data_model import HealthDataset, SnapshotSpec, latest_timestamps, parse_dataset
from .errors import SchemaError
from .layout import LayoutConfig, Scene, ShowLabels, build_scene, scene_to_json
from .svg_render import SvgDocument, render_svg


def resolve_snapshots(
    dataset: HealthDataset,
    snapshots: Sequence[int] | None = None,
    latest: int | None = None,
) -> SnapshotSpec:
    """Build the snapshot spec from explicit timestamps or a --latest count.

    With neither given, the single most recent sample timestamp is used.
    """
    if snapshots is not None and latest is not None:
        raise ValueError("snapshots and latest are mutually exclusive")
    if snapshots is not None:
        ordered = tuple(sorted(snapshots))
        if len(set(ordered)) != len(ordered):
            raise ValueError("snapshot timestamps must be distinct")
        return SnapshotSpec(timestamps=ordered)
    return SnapshotSpec(timestamps=latest_timestamps(dataset, latest if latest is not None else 1))


def apply_options(
    config: LayoutConfig,
    size: float | None = None,
    labels: str | None = None,
) -> LayoutConfig:
    if size is not None:
        if size <= 0:
            raise SchemaError("size must be positive", path="size")
        config = config.scaled(float(size))
    if labels is not None:
        try:
            config = replace(config, show_labels=ShowLabels(labels))
        except ValueError:
            raise SchemaError("labels must be 'all' or 'none'", path="labels") from None
    return config


def scene_from_source(
    text: str | bytes,
    *,
    snapshots: Sequence[int] | None = None,
    latest: int | None = None,
    size: float | None = None,
    labels: str | None = None,
    config: LayoutConfig | None = None,
) -> tuple[Scene, LayoutConfig, HealthDataset]:
    dataset = parse_dataset(text)
    cfg = apply_options(config if config is not None else LayoutConfig(), size, labels)
    spec = resolve_snapshots(dataset, snapshots, latest)
    return build_scene(dataset, spec, cfg), cfg, dataset


def render_source(
    text: str | bytes,
    *,
    snapshots: Sequence[int] | None = None,
    latest: int | None = None,
    size: float | None = None,
    labels: str | None = None,
    config: LayoutConfig | None = None,
) -> SvgDocument:
    """Parse a data-source document and render it to SVG in one step."""
    scene, cfg, _ = scene_from_source(
        text, snapshots=snapshots, latest=latest, size=size, labels=labels, config=config
    )
    return render_svg(scene, cfg)


def layout_from_source(
    text: str | bytes,
    *,
    snapshots: Sequence[int] | None = None,
    latest: int | None = None,
    size: float | None = None,
    labels: str | None = None,
    config: LayoutConfig | None = None,
) -> str:
    """Parse a data-source document and serialize its scene as layout JSON."""
    scene, cfg, dataset = scene_from_source(
        text, snapshots=snapshots, latest=latest, size=size, labels=labels, config=config
    )
    return scene_to_json(scene, cfg, dataset)
