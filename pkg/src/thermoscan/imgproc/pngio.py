"""Debug/interchange dumps of rasters to PNG and PGM."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image

from .raster import BinaryMask, GrayImage, LabelMap


def gray_to_png(g: GrayImage) -> bytes:
    arr = np.floor(255.0 * g.data + 0.5).astype(np.uint8)
    return _encode(Image.fromarray(arr, mode="L"))


def mask_to_png(b: BinaryMask) -> bytes:
    return _encode(Image.fromarray(b.data * np.uint8(255), mode="L"))


def labels_to_png16(lm: LabelMap) -> bytes:
    """16-bit grayscale PNG carrying raw label values."""
    if lm.data.max(initial=0) > 0xFFFF:
        raise ValueError("too many labels for 16-bit PNG")
    return _encode(Image.fromarray(lm.data.astype(np.uint16)))


def png16_to_labels(data: bytes) -> LabelMap:
    arr = np.asarray(Image.open(io.BytesIO(data)), dtype=np.int32)
    return LabelMap(arr, int(arr.max(initial=0)))


def rgb_to_png(arr: np.ndarray) -> bytes:
    """8-bit RGB array (H, W, 3) to PNG bytes."""
    return _encode(Image.fromarray(arr.astype(np.uint8), mode="RGB"))


def gray_to_pgm(g: GrayImage) -> bytes:
    arr = np.floor(255.0 * g.data + 0.5).astype(np.uint8)
    header = f"P5\n{g.width} {g.height}\n255\n".encode()
    return header + arr.tobytes()


def _encode(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()
