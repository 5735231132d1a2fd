"""Overlap-free label placement: quadrant stacking plus point-circle avoidance.

Labels are partitioned into the four canvas quadrants by their slot angle and
processed from the horizontal axis outward, each one pushed vertically just far
enough to clear the previous box. Boxes always extend horizontally away from
the figure, so the east/west halves and the axis seeding make cross-quadrant
overlap impossible by construction. A final sweep pushes any box that would
still cover a plotted point circle further outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Sequence

from .errors import LayoutOverflow

if TYPE_CHECKING:  # pragma: no cover - import cycle guard
    from .layout import LayoutConfig

TWO_PI = 2.0 * math.pi

# clearance added beyond a point circle when a box is pushed past it
_CIRCLE_CLEARANCE = 1.0


class Quadrant(str, Enum):
    NE = "NE"
    NW = "NW"
    SE = "SE"
    SW = "SW"


@dataclass(frozen=True, slots=True)
class LabelAnchor:
    """Placement request for one measurement's label."""

    measurement_id: str
    angle: float
    label_radius: float
    width: float
    height: float
    lines: tuple[str, str]


@dataclass(frozen=True, slots=True)
class PlacedLabel:
    """A resolved label box. ``anchor`` is the text anchor point; the box is
    vertically centered on it and extends horizontally per ``text_anchor``."""

    measurement_id: str
    lines: tuple[str, str]
    anchor_x: float
    anchor_y: float
    width: float
    height: float
    quadrant: Quadrant
    label_radius: float
    text_anchor: str  # "start" (box extends right) or "end" (box extends left)

    def bbox(self) -> tuple[float, float, float, float]:
        """(x0, y0, x1, y1) of the label box."""
        if self.text_anchor == "start":
            x0 = self.anchor_x
        else:
            x0 = self.anchor_x - self.width
        y0 = self.anchor_y - self.height / 2.0
        return (x0, y0, x0 + self.width, y0 + self.height)


def quadrant_of(angle: float) -> Quadrant:
    """Quadrant by normalized angle (screen coordinates, y down).

    Ties on the horizontal axis go to the upper quadrant (0 -> NE, pi -> NW);
    on the vertical axis straight-down goes SE and straight-up NE.
    """
    a = angle % TWO_PI
    if a == 0.0 or a >= 3.0 * math.pi / 2.0:
        return Quadrant.NE
    if a <= math.pi / 2.0:
        return Quadrant.SE
    if a < math.pi:
        return Quadrant.SW
    return Quadrant.NW


_EAST = (Quadrant.NE, Quadrant.SE)
_NORTH = (Quadrant.NE, Quadrant.NW)


def _sweep_clear_of_circles(
    inner_x: float,
    y0: float,
    y1: float,
    width: float,
    east: bool,
    circles: Sequence[tuple[float, float, float]],
) -> float:
    """Push a box's inner edge outward until no circle in its y-band intersects it.

    Circles must be sorted by x ascending for an east box and descending for a
    west box; the inner edge only ever moves outward, so one pass suffices.
    """
    for cx, cy, cr in circles:
        if cy + cr <= y0 or cy - cr >= y1:
            continue
        if east:
            if cx + cr > inner_x and cx - cr < inner_x + width:
                inner_x = cx + cr + _CIRCLE_CLEARANCE
        else:
            if cx - cr < inner_x and cx + cr > inner_x - width:
                inner_x = cx - cr - _CIRCLE_CLEARANCE
    return inner_x


def place_labels(
    anchors: Sequence[LabelAnchor],
    config: "LayoutConfig",
    point_circles: Sequence[tuple[float, float, float]] = (),
) -> tuple[PlacedLabel, ...]:
    """Place every label so that no two boxes overlap, no box covers a point
    circle, and every box stays inside the canvas.

    ``point_circles`` are (x, y, r) obstacles in canvas coordinates. Raises
    LayoutOverflow when a quadrant's stack or a pushed box leaves the canvas.
    """
    cx, cy = config.center
    margin = config.label_margin

    by_quadrant: dict[Quadrant, list[tuple[int, LabelAnchor]]] = {q: [] for q in Quadrant}
    for index, anchor in enumerate(anchors):
        by_quadrant[quadrant_of(anchor.angle)].append((index, anchor))

    east_circles = sorted(point_circles, key=lambda c: c[0])
    west_circles = list(reversed(east_circles))

    placed: list[tuple[int, PlacedLabel]] = []
    for quadrant, members in by_quadrant.items():
        east = quadrant in _EAST
        north = quadrant in _NORTH
        # work outward from the horizontal axis
        members.sort(key=lambda item: (abs(item[1].label_radius * math.sin(item[1].angle)), item[0]))

        min_edge = margin / 2.0  # |y| offset from the axis the next box must clear
        for index, anchor in members:
            half = anchor.height / 2.0
            natural = abs(anchor.label_radius * math.sin(anchor.angle))
            offset = max(natural, min_edge + half)
            min_edge = offset + half + margin
            y = cy - offset if north else cy + offset

            side = 1.0 if east else -1.0
            inner_x = cx + anchor.label_radius * math.cos(anchor.angle) + side * config.label_x_offset
            inner_x = _sweep_clear_of_circles(
                inner_x,
                y - half,
                y + half,
                anchor.width,
                east,
                east_circles if east else west_circles,
            )

            label = PlacedLabel(
                measurement_id=anchor.measurement_id,
                lines=anchor.lines,
                anchor_x=inner_x,
                anchor_y=y,
                width=anchor.width,
                height=anchor.height,
                quadrant=quadrant,
                label_radius=anchor.label_radius,
                text_anchor="start" if east else "end",
            )
            x0, y0, x1, y1 = label.bbox()
            if y0 < 0.0 or y1 > config.canvas_size:
                raise LayoutOverflow(
                    f"label stack for quadrant {quadrant.value} exceeds the canvas; "
                    "enlarge the canvas or hide measurement labels"
                )
            if x0 < 0.0 or x1 > config.canvas_size:
                raise LayoutOverflow(
                    f"label {anchor.measurement_id!r} does not fit horizontally; "
                    "enlarge the canvas or hide measurement labels"
                )
            placed.append((index, label))

    placed.sort(key=lambda item: item[0])
    return tuple(label for _, label in placed)
