"""Regenerates the checked-in TGRM fixtures.  Run from the repo root:

    python3 tests/fixtures/make_fixtures.py
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from thermoscan.thermogram import (
    HotSpot,
    SyntheticSpec,
    Thermogram,
    TemperatureMatrix,
    VisualImage,
    generate_synthetic,
    save_thermogram,
)

HERE = Path(__file__).parent


def golden() -> None:
    # 1. plain grid, no noise, no defects
    t, _, _ = generate_synthetic(SyntheticSpec(rows=1, cols=2, module_size=24, gap=6))
    (HERE / "grid_1x2_clean.tgrm").write_bytes(save_thermogram(t))

    # 2. noisy grid with one hot spot
    t, _, _ = generate_synthetic(
        SyntheticSpec(
            rows=2,
            cols=2,
            module_size=30,
            gap=8,
            noise_std=0.3,
            seed=42,
            hot_spots=(HotSpot(module_index=3, center=(15.0, 15.0), radius=4.0, delta_c=10.0),),
        )
    )
    (HERE / "grid_2x2_hotspot.tgrm").write_bytes(save_thermogram(t))

    # 3. hand-built tiny image with non-trivial metadata
    rng = np.random.default_rng(7)
    vis = rng.integers(0, 256, size=(5, 7, 3), dtype=np.uint8)
    temps = np.linspace(-5.0, 55.0, 35, dtype=np.float32).reshape(5, 7)
    t = Thermogram(
        id="tiny-handmade",
        visual=VisualImage.from_uint8(vis),
        temperature=TemperatureMatrix(temps),
        meta={"camera": "bench", "note": "unicode °C"},
    )
    (HERE / "tiny_meta.tgrm").write_bytes(save_thermogram(t))


def malformed() -> None:
    good = (HERE / "grid_1x2_clean.tgrm").read_bytes()

    (HERE / "bad_magic.tgrm").write_bytes(b"NOPE" + good[4:])
    (HERE / "bad_version.tgrm").write_bytes(good[:4] + struct.pack("<H", 9) + good[6:])
    (HERE / "truncated.tgrm").write_bytes(good[:8])
    (HERE / "trailing.tgrm").write_bytes(good + b"\x00junk")

    # temperature block shorter than the header's width*height promises
    header_len = struct.unpack_from("<I", good, 6)[0]
    off = 10 + header_len
    (HERE / "short_temps.tgrm").write_bytes(good[:off + 40])

    # NaN in the first temperature cell
    nan = good[:off] + struct.pack("<f", float("nan")) + good[off + 4:]
    (HERE / "nan_temp.tgrm").write_bytes(nan)

    # physically impossible temperature
    hot = good[:off] + struct.pack("<f", 5000.0) + good[off + 4:]
    (HERE / "absurd_temp.tgrm").write_bytes(hot)


if __name__ == "__main__":
    golden()
    malformed()
    print("fixtures written to", HERE)
