"""Command-line front door: render, validate, ingest, serve.

Exit codes: 0 success, 1 validation/layout error, 2 usage error. Diagnostics go
to stderr; artifacts go to stdout or the requested file, nothing else.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from .data_model import (
    HealthDataset,
    collect_violations,
    epoch_to_utc,
    parse_dataset,
    serialize_dataset,
)
from .errors import DatasetError, LayoutOverflow
from .ingest import (
    merge,
    parse_metric_mapping,
    parse_tracker_payload,
    tracker_to_samples,
)
from .layout import LayoutConfig, config_from_json
from .pipeline import render_source


def _load_config(config_path: str | None) -> LayoutConfig:
    if config_path is None:
        return LayoutConfig()
    return config_from_json(Path(config_path).read_bytes())


def _write_output(data: bytes, output: str) -> None:
    if output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(output).write_bytes(data)


def _parse_snapshot_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(",") if part.strip())
    except ValueError:
        raise click.UsageError("--snapshots must be comma-separated epoch seconds") from None
    if not values:
        raise click.UsageError("--snapshots must list at least one timestamp")
    if len(set(values)) != len(values):
        raise click.UsageError("--snapshots must not repeat timestamps")
    return values


@click.group()
@click.version_option(version=__version__, prog_name="hfig")
def main() -> None:
    """Render grouped health measurements as radial SVG figures."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--snapshots", "snapshots_text", default=None,
              help="Comma-separated epoch seconds to visualize.")
@click.option("--latest", "latest", default=None, type=int,
              help="Visualize the N most recent distinct sample timestamps.")
@click.option("--output", default="-", help="Output file, or - for stdout.")
@click.option("--size", default=None, type=float, help="Canvas side in px (scales the figure).")
@click.option("--labels", default=None, type=click.Choice(["all", "none"]),
              help="Measurement label visibility.")
@click.option("--config", "config_path", default=None, envvar="HFIG_CONFIG",
              type=click.Path(exists=True, dir_okay=False),
              help="Layout config JSON (HFIG_CONFIG as fallback).")
def render(
    input_path: str,
    snapshots_text: str | None,
    latest: int | None,
    output: str,
    size: float | None,
    labels: str | None,
    config_path: str | None,
) -> None:
    """Render a data-source file to a standalone SVG document."""
    if snapshots_text is not None and latest is not None:
        raise click.UsageError("--snapshots and --latest are mutually exclusive")
    if latest is not None and latest < 1:
        raise click.UsageError("--latest must be >= 1")
    snapshots = _parse_snapshot_list(snapshots_text) if snapshots_text is not None else None

    try:
        config = _load_config(config_path)
        document = render_source(
            Path(input_path).read_bytes(),
            snapshots=snapshots,
            latest=latest,
            size=size,
            labels=labels,
            config=config,
        )
    except DatasetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except LayoutOverflow as exc:
        click.echo(f"error: {exc} (try --size with a larger canvas or --labels none)", err=True)
        sys.exit(1)
    _write_output(bytes(document), output)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
def validate(input_path: str) -> None:
    """Check a data-source file and print a summary or every violation found."""
    text = Path(input_path).read_bytes()
    violations = collect_violations(text)
    if violations:
        for violation in violations:
            click.echo(f"invalid: {violation}", err=True)
        sys.exit(1)

    dataset = parse_dataset(text)
    timestamps = dataset.all_timestamps()
    first = epoch_to_utc(timestamps[0]).strftime("%Y-%m-%dT%H:%M:%SZ")
    last = epoch_to_utc(timestamps[-1]).strftime("%Y-%m-%dT%H:%M:%SZ")
    if dataset.subject:
        click.echo(f"subject: {dataset.subject}")
    click.echo(
        f"groups: {len(dataset.groups)}, measurements: {dataset.measurement_count()}, "
        f"samples: {dataset.sample_count()}"
    )
    click.echo(f"sample span: {first} .. {last}")
    for group in dataset.groups:
        ids = ", ".join(m.id for m in group.measurements)
        click.echo(f"  {group.label}: {ids}")


@main.command()
@click.option("--tracker", "tracker_path", required=True,
              help="Tracker payload file, or - for stdin.")
@click.option("--mapping", "mapping_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Metric mapping config JSON.")
@click.option("--into", "into_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Existing dataset to merge into.")
@click.option("--output", default="-", help="Merged dataset file, or - for stdout.")
def ingest(tracker_path: str, mapping_path: str, into_path: str | None, output: str) -> None:
    """Convert a tracker payload into data-source form and merge it."""
    if tracker_path == "-":
        tracker_bytes = sys.stdin.buffer.read()
    else:
        path = Path(tracker_path)
        if not path.is_file():
            raise click.UsageError(f"tracker file not found: {tracker_path}")
        tracker_bytes = path.read_bytes()

    try:
        mapping = parse_metric_mapping(Path(mapping_path).read_bytes())
        payload = parse_tracker_payload(tracker_bytes)
        result = tracker_to_samples(payload, mapping)
        for name in result.unmapped:
            click.echo(f"unmapped metric: {name}", err=True)
        if into_path is not None:
            base = parse_dataset(Path(into_path).read_bytes())
            merged = merge(base, result.fragment)
        else:
            if result.fragment.is_empty():
                click.echo("error: no mapped metrics in payload and no --into dataset", err=True)
                sys.exit(1)
            merged = parse_dataset(
                serialize_dataset(HealthDataset(groups=result.fragment.groups))
            )
    except DatasetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _write_output(serialize_dataset(merged).encode("utf-8"), output)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True, type=int, envvar="HFIG_PORT",
              help="Listen port (HFIG_PORT as fallback).")
@click.option("--config", "config_path", default=None, envvar="HFIG_CONFIG",
              type=click.Path(exists=True, dir_okay=False),
              help="Layout config JSON (HFIG_CONFIG as fallback).")
def serve(host: str, port: int, config_path: str | None) -> None:
    """Run the HTTP render service."""
    import uvicorn

    from .service import create_app

    try:
        config = _load_config(config_path)
    except DatasetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    uvicorn.run(create_app(config=config), host=host, port=port)


if __name__ == "__main__":
    main()
