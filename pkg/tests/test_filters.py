"""Gaussian blur: kernel construction, borders, and a direct-convolution oracle."""

import math

import numpy as np
import pytest

from thermoscan.errors import InvalidParameter
from thermoscan.imgproc import GrayImage, gaussian_blur, gaussian_kernel1d


def _blur_oracle(data: np.ndarray, sigma: float) -> np.ndarray:
    """Direct 2-D convolution with reflect-101 borders (no separability)."""
    k = gaussian_kernel1d(sigma)
    r = k.size // 2
    k2 = np.outer(k, k)
    h, w = data.shape
    out = np.zeros_like(data)

    def reflect(i, n):
        while i < 0 or i >= n:
            if i < 0:
                i = -i
            if i >= n:
                i = 2 * (n - 1) - i
        return i

    for i in range(h):
        for j in range(w):
            acc = 0.0
            for di in range(-r, r + 1):
                for dj in range(-r, r + 1):
                    acc += k2[di + r, dj + r] * data[reflect(i + di, h), reflect(j + dj, w)]
            out[i, j] = acc
    return out


class TestKernel:
    def test_radius_and_normalization(self):
        k = gaussian_kernel1d(1.0)
        assert k.size == 2 * math.ceil(3.0) + 1
        assert k.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.array_equal(k, k[::-1])

    def test_sigma_validation(self):
        with pytest.raises(InvalidParameter):
            gaussian_blur(GrayImage(np.zeros((4, 4))), 0.0)


class TestBlur:
    def test_constant_image_unchanged(self):
        g = GrayImage(np.full((8, 8), 0.6))
        out = gaussian_blur(g, 1.5)
        assert np.allclose(out.data, 0.6, atol=1e-12)

    def test_impulse_center_weight_is_separable_product(self):
        data = np.zeros((15, 15))
        data[7, 7] = 1.0
        out = gaussian_blur(GrayImage(data), 1.0)
        k = gaussian_kernel1d(1.0)
        center = k[k.size // 2]
        assert out.data[7, 7] == pytest.approx(center * center, abs=1e-12)

    def test_impulse_response_rotation_symmetric(self):
        data = np.zeros((15, 15))
        data[7, 7] = 1.0
        out = gaussian_blur(GrayImage(data), 1.2).data
        assert np.allclose(out, np.rot90(out), atol=1e-12)

    def test_direct_convolution_oracle(self):
        rng = np.random.default_rng(0)
        for sigma in (0.6, 1.0, 1.7):
            data = rng.random((12, 10))
            out = gaussian_blur(GrayImage(data), sigma)
            assert np.allclose(out.data, _blur_oracle(data, sigma), atol=1e-12)

    def test_mean_preserved_on_interior_dominant_image(self):
        rng = np.random.default_rng(1)
        data = np.full((64, 64), 0.5)
        data[20:44, 20:44] = rng.random((24, 24))
        out = gaussian_blur(GrayImage(data), 1.0)
        assert out.data.mean() == pytest.approx(data.mean(), abs=1e-6)
