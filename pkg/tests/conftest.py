"""Shared fixtures: bundled data paths, random dataset generation, geometry oracles."""

from __future__ import annotations

import json
import math
import random
from importlib import resources
from pathlib import Path

import pytest

from hfig import HealthDataset, LayoutConfig, Scene, parse_dataset

T_BEFORE = 1420798224  # 2015-01-09T10:10:24Z
T_AFTER = 1423742720  # 2015-02-12T12:05:20Z

GOLDEN_DIR = Path(__file__).parent / "golden"

_WORDS = (
    "pulse", "sleep", "sugar", "salt", "iron", "steps", "force", "mood",
    "fiber", "water", "focus", "grip", "pace", "rest", "heat", "load",
)


def bundled_text(name: str) -> bytes:
    return resources.files("hfig.data").joinpath(name).read_bytes()


@pytest.fixture(scope="session")
def patient_text() -> bytes:
    return bundled_text("modeled_patient.json")


@pytest.fixture(scope="session")
def patient_dataset(patient_text: bytes) -> HealthDataset:
    return parse_dataset(patient_text)


@pytest.fixture()
def patient_doc(patient_text: bytes) -> dict:
    return json.loads(patient_text)


def random_dataset_doc(
    rng: random.Random,
    max_groups: int = 12,
    max_measurements: int = 8,
    max_snapshots: int = 4,
    max_total: int | None = None,
) -> tuple[dict, list[int]]:
    """A random valid data-source document plus snapshot timestamps for it."""
    snapshot_times = sorted(rng.sample(range(1_400_000_000, 1_500_000_000), rng.randint(1, max_snapshots)))

    n_groups = rng.randint(1, max_groups)
    groups = []
    mcount = 0
    next_id = 0
    for gi in range(n_groups):
        size = rng.randint(1, max_measurements)
        if max_total is not None:
            size = min(size, max_total - mcount)
            if size < 1:
                break
        measurements = []
        for _ in range(size):
            lo = round(rng.uniform(-50.0, 150.0), 2)
            if rng.random() < 0.05:
                hi = lo  # degenerate zero-span target
            else:
                hi = round(lo + rng.uniform(0.5, 100.0), 2)
            span = max(hi - lo, 1.0)
            m: dict = {
                "id": f"m{next_id}_{rng.choice(_WORDS)}",
                "label": f"{rng.choice(_WORDS).capitalize()} {next_id}",
                "units": rng.choice(("", "mg", "score", "bpm", "kg")),
                "min": lo,
                "max": hi,
            }
            next_id += 1
            if rng.random() < 0.5:
                m["warning_min"] = round(lo - rng.uniform(0.1, span), 2)
            if rng.random() < 0.5:
                m["warning_max"] = round(hi + rng.uniform(0.1, span), 2)
            n_samples = rng.randint(1, max_snapshots + 1)
            times = rng.sample(range(1_395_000_000, 1_505_000_000), n_samples)
            m["samples"] = [
                {"timestamp": t, "value": round(rng.uniform(lo - 2.5 * span, hi + 2.5 * span), 3)}
                for t in sorted(times)
            ]
            measurements.append(m)
            mcount += 1
        if measurements:
            groups.append({"label": f"Group {gi}", "measurements": measurements})
    doc = {"groups": groups}
    return doc, snapshot_times


def random_dataset(rng: random.Random, **kwargs) -> tuple[HealthDataset, list[int]]:
    doc, times = random_dataset_doc(rng, **kwargs)
    return parse_dataset(json.dumps(doc)), times


# ---------------------------------------------------------------------------
# Independent oracles


def boxes_intersect(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> bool:
    """Strict axis-aligned bounding-box overlap (positive area)."""
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def scene_label_boxes(scene: Scene) -> list[tuple[float, float, float, float]]:
    return [label.bbox() for label in scene.labels]


def scene_point_boxes(scene: Scene, config: LayoutConfig) -> list[tuple[float, float, float, float]]:
    cx, cy = scene.center
    out = []
    for p in scene.points:
        if not p.present:
            continue
        x = cx + p.radius * math.cos(p.angle)
        y = cy + p.radius * math.sin(p.angle)
        r = config.point_radius
        out.append((x - r, y - r, x + r, y + r))
    return out


def count_label_collisions(scene: Scene, config: LayoutConfig) -> tuple[int, int]:
    """O(n^2) oracle: (label-label overlaps, label-circle overlaps)."""
    labels = scene_label_boxes(scene)
    points = scene_point_boxes(scene, config)
    label_label = sum(
        1
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
        if boxes_intersect(labels[i], labels[j])
    )
    label_circle = sum(1 for box in labels for p in points if boxes_intersect(box, p))
    return label_label, label_circle


def classify_oracle(value: float, lo: float, hi: float, warn_lo: float | None, warn_hi: float | None) -> str:
    """Brute-force five-region classifier, written independently of the engine."""
    if lo <= value <= hi:
        return "green"
    if value < lo:
        if warn_lo is None:
            return "red"
        return "yellow" if value >= warn_lo else "red"
    if warn_hi is None:
        return "red"
    return "yellow" if value <= warn_hi else "red"


def select_sample_oracle(samples, t):
    """Exhaustive linear scan for the nearest sample at or before t."""
    best = None
    for s in samples:
        if s.timestamp <= t and (best is None or s.timestamp > best.timestamp):
            best = s
    return best
