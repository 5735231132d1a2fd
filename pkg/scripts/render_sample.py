"""Render the bundled modeled-patient dataset to out/sample.svg and out/sample_layout.json."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from hfig import layout_from_source, render_source

T1 = 1420798224
T2 = 1423742720


def main() -> None:
    source = resources.files("hfig.data").joinpath("modeled_patient.json").read_bytes()
    out = Path(__file__).resolve().parent.parent / "out"
    out.mkdir(exist_ok=True)

    svg = render_source(source, snapshots=(T1, T2))
    (out / "sample.svg").write_bytes(bytes(svg))

    layout = layout_from_source(source, snapshots=(T1, T2))
    (out / "sample_layout.json").write_text(layout, encoding="utf-8")

    print(f"wrote {out / 'sample.svg'} ({len(svg.text)} bytes)")
    print(f"wrote {out / 'sample_layout.json'} ({len(layout)} bytes)")


if __name__ == "__main__":
    main()
