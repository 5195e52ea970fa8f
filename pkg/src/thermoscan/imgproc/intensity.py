"""Grayscale conversion, histogramming and threshold selection."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ..errors import EmptyHistogram
from .raster import BinaryMask, GrayImage, Histogram256, quantize

if TYPE_CHECKING:  # pragma: no cover
    from ..thermogram import VisualImage

# ITU-R BT.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114])


def to_grayscale(img: "VisualImage") -> GrayImage:
    """Convert an RGB raster to intensity: 0.299 R + 0.587 G + 0.114 B."""
    g = img.data @ _LUMA
    return GrayImage(np.clip(g, 0.0, 1.0))


def histogram(g: GrayImage) -> Histogram256:
    """Counts of quantized intensities; bin sum equals the pixel count."""
    q = quantize(g)
    return Histogram256(np.bincount(q.ravel(), minlength=256))


def threshold_fixed(g: GrayImage, th: float) -> BinaryMask:
    """Binarize: 1 where intensity >= th, else 0."""
    if not 0.0 <= th <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {th}")
    return BinaryMask((g.data >= th).astype(np.uint8))


def otsu_threshold(h: Histogram256) -> int:
    """Threshold bin maximizing between-class variance.

    The histogram is split into bins [0..t] and [t+1..255]; only splits
    where both classes are non-empty are considered, ties are broken by
    the smallest t.  When no valid split exists (a single occupied bin)
    the index of that bin is returned.  A pixel is foreground iff its
    quantized bin is strictly greater than the returned value.
    """
    counts = h.counts.astype(np.float64)
    total = counts.sum()
    if total == 0:
        raise EmptyHistogram("histogram has no samples")

    occupied = np.nonzero(counts)[0]
    if occupied.size == 1:
        return int(occupied[0])

    bins = np.arange(256, dtype=np.float64)
    w0 = np.cumsum(counts)                 # mass of class 0 for t = 0..255
    m0 = np.cumsum(counts * bins)          # unnormalized first moment
    w1 = total - w0
    mu_total = m0[-1]

    valid = (w0 > 0) & (w1 > 0)
    variance = np.zeros(256)
    mu0 = np.divide(m0, w0, out=np.zeros(256), where=valid)
    mu1 = np.divide(mu_total - m0, w1, out=np.zeros(256), where=valid)
    variance[valid] = (w0 * w1)[valid] * (mu0 - mu1)[valid] ** 2
    return int(np.argmax(variance))  # argmax takes the first (smallest t) maximum
