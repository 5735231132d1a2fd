"""Standalone SVG emission: deterministic, no scripts, styles, or external references.

Every visual property is a presentational attribute, so the exported file is a
complete document on its own. Element order is fixed (band, sectors, polygons
oldest-first, points, labels, legend) and every number is written with exactly
three decimal places, so identical scenes produce byte-identical documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping
from xml.sax.saxutils import escape, quoteattr

from .layout import (
    ColorClass,
    Direction,
    LayoutConfig,
    Scene,
    snapshot_color,
)

_FONT_FAMILY = "Helvetica, Arial, sans-serif"

_FORBIDDEN_SUBSTRINGS = (
    "<script",
    "<style",
    "<link",
    "class=",
    "href=",
    "src=",
    "url(",
    "@import",
)


@dataclass(frozen=True, slots=True)
class SvgDocument:
    text: str
    width: float
    height: float
    element_counts: Mapping[str, int]

    def __bytes__(self) -> bytes:
        return self.text.encode("utf-8")


def fmt(value: float) -> str:
    """Fixed three-decimal, locale-independent number formatting."""
    out = f"{value:.3f}"
    return "0.000" if out == "-0.000" else out


def polar_to_cartesian(angle: float, radius: float, config: LayoutConfig) -> tuple[float, float]:
    """Polar to canvas coordinates; the y axis points down (screen convention)."""
    cx, cy = config.center
    return (cx + radius * math.cos(angle), cy + radius * math.sin(angle))


def _class_color(color: ColorClass, config: LayoutConfig) -> str:
    return {
        ColorClass.GREEN: config.color_green,
        ColorClass.YELLOW: config.color_yellow,
        ColorClass.RED: config.color_red,
    }[color]


def _annular_sector_path(
    start_angle: float, end_angle: float, r_inner: float, r_outer: float, config: LayoutConfig
) -> str:
    sweep = 1 if config.direction is Direction.CLOCKWISE else 0
    large = 1 if abs(end_angle - start_angle) > math.pi else 0
    ox0, oy0 = polar_to_cartesian(start_angle, r_outer, config)
    ox1, oy1 = polar_to_cartesian(end_angle, r_outer, config)
    ix0, iy0 = polar_to_cartesian(end_angle, r_inner, config)
    ix1, iy1 = polar_to_cartesian(start_angle, r_inner, config)
    return (
        f"M {fmt(ox0)} {fmt(oy0)} "
        f"A {fmt(r_outer)} {fmt(r_outer)} 0 {large} {sweep} {fmt(ox1)} {fmt(oy1)} "
        f"L {fmt(ix0)} {fmt(iy0)} "
        f"A {fmt(r_inner)} {fmt(r_inner)} 0 {large} {1 - sweep} {fmt(ix1)} {fmt(iy1)} Z"
    )


class _Writer:
    def __init__(self) -> None:
        self.parts: list[str] = []
        self.counts: dict[str, int] = {}

    def raw(self, line: str) -> None:
        self.parts.append(line)

    def element(self, tag: str, attrs: list[tuple[str, str]], text: str | None = None) -> None:
        self.counts[tag] = self.counts.get(tag, 0) + 1
        rendered = " ".join(f"{name}={quoteattr(value)}" for name, value in attrs)
        if text is None:
            self.parts.append(f"<{tag} {rendered}/>")
        else:
            self.parts.append(f"<{tag} {rendered}>{escape(text)}</{tag}>")

    def document(self) -> str:
        return "\n".join(self.parts) + "\n"


def render_svg(scene: Scene, config: LayoutConfig) -> SvgDocument:
    """Emit the scene as a standalone SVG 1.1 document (UTF-8, LF line endings)."""
    size = scene.canvas_size
    snapshot_count = len(scene.snapshots)
    w = _Writer()
    w.raw('<?xml version="1.0" encoding="UTF-8"?>')
    w.raw(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(size)}" height="{fmt(size)}" '
        f'viewBox="0.000 0.000 {fmt(size)} {fmt(size)}">'
    )

    # band: the two circumferences bounding the recommended area
    cx, cy = scene.center
    for radius in (config.r_band_inner, config.r_band_outer):
        w.element(
            "circle",
            [
                ("cx", fmt(cx)),
                ("cy", fmt(cy)),
                ("r", fmt(radius)),
                ("fill", "none"),
                ("stroke", config.band_stroke),
                ("stroke-width", fmt(1.0)),
            ],
        )

    # sectors: one filled band segment per group, gaps left blank
    for sector, glabel in zip(scene.plan.sectors, scene.group_labels):
        w.element(
            "path",
            [
                ("d", _annular_sector_path(
                    sector.start_angle, sector.end_angle,
                    config.r_band_inner, config.r_band_outer, config,
                )),
                ("fill", config.band_fill),
            ],
        )
        lx, ly = polar_to_cartesian(glabel.angle, glabel.radius, config)
        w.element(
            "text",
            [
                ("x", fmt(lx)),
                ("y", fmt(ly)),
                ("text-anchor", "middle"),
                ("font-family", _FONT_FAMILY),
                ("font-size", fmt(config.group_label_font_size)),
                ("fill", config.detail_text_color),
            ],
            text=glabel.text,
        )

    # polygons, oldest first so the newest snapshot draws on top
    for polygon in scene.polygons:
        color = snapshot_color(config.polygon_color, polygon.snapshot_index, snapshot_count, config)
        pts = " ".join(
            f"{fmt(x)},{fmt(y)}"
            for x, y in (polar_to_cartesian(a, r, config) for a, r in polygon.vertices)
        )
        if polygon.closed:
            w.element(
                "polygon",
                [
                    ("points", pts),
                    ("fill", color),
                    ("fill-opacity", fmt(0.15)),
                    ("stroke", color),
                    ("stroke-width", fmt(config.polygon_stroke_width)),
                    ("stroke-linejoin", "round"),
                ],
            )
        elif len(polygon.vertices) == 2:
            w.element(
                "polyline",
                [
                    ("points", pts),
                    ("fill", "none"),
                    ("stroke", color),
                    ("stroke-width", fmt(config.polygon_stroke_width)),
                    ("stroke-linecap", "round"),
                ],
            )

    # points, oldest snapshot first, ringed so overlapping snapshots stay distinct
    for point in scene.points:
        if not point.present:
            continue
        x, y = polar_to_cartesian(point.angle, point.radius, config)
        fill = snapshot_color(
            _class_color(point.color, config), point.snapshot_index, snapshot_count, config
        )
        w.element(
            "circle",
            [
                ("cx", fmt(x)),
                ("cy", fmt(y)),
                ("r", fmt(config.point_radius)),
                ("fill", fill),
                ("stroke", "#ffffff"),
                ("stroke-width", fmt(config.point_stroke_width)),
            ],
        )

    # measurement labels (two lines each: name, latest value with units)
    for label in scene.labels:
        x0, y0, _, _ = label.bbox()
        for i, line in enumerate(label.lines):
            baseline = y0 + (i + 1) * config.label_line_height - 3.0
            w.element(
                "text",
                [
                    ("x", fmt(label.anchor_x)),
                    ("y", fmt(baseline)),
                    ("text-anchor", label.text_anchor),
                    ("font-family", _FONT_FAMILY),
                    ("font-size", fmt(config.label_font_size)),
                    ("fill", config.text_color if i == 0 else config.detail_text_color),
                ],
                text=line,
            )

    # legend: subject title, then one swatch per snapshot
    legend_y = 24.0
    if scene.subject:
        w.element(
            "text",
            [
                ("x", fmt(16.0)),
                ("y", fmt(legend_y)),
                ("text-anchor", "start"),
                ("font-family", _FONT_FAMILY),
                ("font-size", fmt(config.group_label_font_size)),
                ("fill", config.text_color),
            ],
            text=scene.subject,
        )
        legend_y += 22.0
    for entry in scene.legend:
        w.element(
            "circle",
            [
                ("cx", fmt(22.0)),
                ("cy", fmt(legend_y - 4.0)),
                ("r", fmt(5.0)),
                ("fill", entry.color),
                ("stroke", "#ffffff"),
                ("stroke-width", fmt(1.0)),
            ],
        )
        w.element(
            "text",
            [
                ("x", fmt(34.0)),
                ("y", fmt(legend_y)),
                ("text-anchor", "start"),
                ("font-family", _FONT_FAMILY),
                ("font-size", fmt(config.label_font_size)),
                ("fill", config.detail_text_color),
            ],
            text=entry.text,
        )
        legend_y += 20.0

    w.raw("</svg>")
    return SvgDocument(
        text=w.document(),
        width=size,
        height=size,
        element_counts=dict(w.counts),
    )


def lint_svg(text: str) -> list[str]:
    """Find forbidden constructs: scripts, styles, classes, external references.

    The xmlns namespace declaration is required by SVG and allowed; anything
    else that smells like an external reference or deferred styling is flagged.
    """
    findings: list[str] = []
    haystack = text.replace('xmlns="http://www.w3.org/2000/svg"', "")
    lowered = haystack.lower()
    for needle in _FORBIDDEN_SUBSTRINGS:
        if needle in lowered:
            findings.append(f"forbidden construct: {needle}")
    return findings
