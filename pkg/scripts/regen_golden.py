"""Regenerate the checked-in golden SVG for the bundled sample dataset.

Run only when an intentional rendering change lands, then review the diff:

    python scripts/regen_golden.py
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from hfig import render_source

T1 = 1420798224
T2 = 1423742720


def main() -> None:
    source = resources.files("hfig.data").joinpath("modeled_patient.json").read_bytes()
    document = render_source(source, snapshots=(T1, T2))
    target = Path(__file__).resolve().parent.parent / "tests" / "golden" / "modeled_patient.svg"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(bytes(document))
    print(f"wrote {target} ({len(document.text)} bytes)")


if __name__ == "__main__":
    main()
