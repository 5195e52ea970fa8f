"""Smoothing filters."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidParameter
from .raster import GrayImage


def gaussian_kernel1d(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian taps with radius ceil(3 sigma)."""
    if sigma <= 0:
        raise InvalidParameter("sigma must be > 0")
    r = int(np.ceil(3.0 * sigma))
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def _reflect101(idx: np.ndarray, n: int) -> np.ndarray:
    """Map out-of-range indices by reflection about the edge samples."""
    if n == 1:
        return np.zeros_like(idx)
    period = 2 * (n - 1)
    idx = np.abs(idx) % period
    return np.where(idx > n - 1, period - idx, idx)


def _convolve_axis(a: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    r = kernel.size // 2
    n = a.shape[axis]
    idx = _reflect101(np.arange(-r, n + r), n)
    ext = np.take(a, idx, axis=axis)
    out = np.zeros_like(a)
    for k, weight in enumerate(kernel):
        out += weight * np.take(ext, np.arange(k, k + n), axis=axis)
    return out


def gaussian_blur(g: GrayImage, sigma: float) -> GrayImage:
    """Separable Gaussian smoothing with reflect-101 borders."""
    kernel = gaussian_kernel1d(sigma)
    out = _convolve_axis(g.data, kernel, axis=0)
    out = _convolve_axis(out, kernel, axis=1)
    return GrayImage(np.clip(out, 0.0, 1.0))
