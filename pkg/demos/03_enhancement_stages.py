"""
Contrast-enhancement stages, step by step
=========================================

Walks the preprocessing chain on one synthetic thermogram and dumps each
intermediate raster as a PNG: grayscale -> partition-based equalization
(DHE) -> tile-based equalization (CLAHE) -> Gaussian blur -> automatic
threshold.  Compare the files in demos/out/stages/ to see what each stage
buys.
"""

from pathlib import Path

import numpy as np

from thermoscan import SyntheticSpec, generate_synthetic
from thermoscan.imgproc import (
    BinaryMask,
    clahe,
    dhe,
    gaussian_blur,
    histogram,
    otsu_threshold,
    quantize,
    threshold_fixed,
    to_grayscale,
)
from thermoscan.imgproc.pngio import gray_to_png, mask_to_png

out_dir = Path(__file__).parent / "out" / "stages"
out_dir.mkdir(parents=True, exist_ok=True)

thermo, _, _ = generate_synthetic(SyntheticSpec(rows=2, cols=3, noise_std=0.3, seed=3))

gray = to_grayscale(thermo.visual)
(out_dir / "1_gray.png").write_bytes(gray_to_png(gray))

enhanced = dhe(gray, smoothing_window=5, min_partition_span=8)
(out_dir / "2_dhe.png").write_bytes(gray_to_png(enhanced))

enhanced = clahe(enhanced, tiles_x=8, tiles_y=8, clip_limit=4.0)
(out_dir / "3_clahe.png").write_bytes(gray_to_png(enhanced))

smooth = gaussian_blur(enhanced, sigma=1.0)
(out_dir / "4_blur.png").write_bytes(gray_to_png(smooth))

h = histogram(smooth)
t = otsu_threshold(h)
print(f"automatic threshold at bin {t} ({t / 255:.3f})")

# the mask keeps pixels at or above the threshold; the darker module class
# is its complement
bright = threshold_fixed(smooth, (t + 1) / 255.0)
modules = BinaryMask(1 - bright.data)
(out_dir / "5_modules.png").write_bytes(mask_to_png(modules))

# a quick text histogram of the enhanced image, 16 buckets
counts, _ = np.histogram(quantize(smooth), bins=16, range=(0, 256))
peak = counts.max()
for i, c in enumerate(counts):
    bar = "#" * int(40 * c / peak)
    print(f"{i * 16:>4}-{i * 16 + 15:<4} {bar}")

print(f"stage rasters in {out_dir}")
