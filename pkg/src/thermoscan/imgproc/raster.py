"""Single-channel raster containers used by the processing kernels.

All containers are immutable: the wrapped numpy arrays are copied on
construction and marked read-only, so instances are safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidParameter


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class GrayImage:
    """Row-major intensity raster with values in [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise InvalidParameter(f"GrayImage expects a 2-D array, got ndim={arr.ndim}")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise InvalidParameter("GrayImage intensities must lie in [0, 1]")
        object.__setattr__(self, "data", _frozen(arr))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class BinaryMask:
    """Raster whose values are exactly 0 or 1."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise InvalidParameter(f"BinaryMask expects a 2-D array, got ndim={arr.ndim}")
        arr = arr.astype(np.uint8, copy=True)
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise InvalidParameter("BinaryMask values must be 0 or 1")
        object.__setattr__(self, "data", _frozen(arr))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class StructuringElement:
    """Anchor-centered neighborhood: a set of (drow, dcol) offsets containing (0, 0)."""

    offsets: tuple[tuple[int, int], ...]

    def __post_init__(self):
        offs = tuple(sorted((int(r), int(c)) for r, c in self.offsets))
        if not offs:
            raise InvalidParameter("structuring element must be non-empty")
        if (0, 0) not in offs:
            raise InvalidParameter("structuring element must contain the anchor (0, 0)")
        object.__setattr__(self, "offsets", offs)

    @classmethod
    def box(cls, height: int, width: int | None = None) -> "StructuringElement":
        """Full rectangle of odd side lengths centered on the anchor."""
        if width is None:
            width = height
        if height < 1 or width < 1 or height % 2 == 0 or width % 2 == 0:
            raise InvalidParameter("box sides must be odd and >= 1")
        rh, rw = height // 2, width // 2
        return cls(tuple((r, c) for r in range(-rh, rh + 1) for c in range(-rw, rw + 1)))

    @classmethod
    def cross(cls, radius: int) -> "StructuringElement":
        """Plus-shaped element reaching `radius` pixels along each axis."""
        if radius < 0:
            raise InvalidParameter("cross radius must be >= 0")
        offs = {(0, 0)}
        for d in range(1, radius + 1):
            offs.update({(d, 0), (-d, 0), (0, d), (0, -d)})
        return cls(tuple(offs))

    def reflected(self) -> "StructuringElement":
        return StructuringElement(tuple((-r, -c) for r, c in self.offsets))


@dataclass(frozen=True)
class LabelMap:
    """Non-negative integer labels; 0 is background/unlabeled."""

    data: np.ndarray
    label_count: int

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise InvalidParameter(f"LabelMap expects a 2-D array, got ndim={arr.ndim}")
        arr = arr.astype(np.int32, copy=True)
        if arr.size and arr.min() < 0:
            raise InvalidParameter("labels must be non-negative")
        object.__setattr__(self, "data", _frozen(arr))
        object.__setattr__(self, "label_count", int(self.label_count))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def boundary_label(self) -> int:
        """Reserved label marking watershed separation lines."""
        return self.label_count + 1


@dataclass(frozen=True)
class Histogram256:
    """256 bin counts over the quantized intensity q = floor(255 v + 0.5)."""

    counts: np.ndarray = field(default_factory=lambda: np.zeros(256, dtype=np.int64))

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.shape != (256,):
            raise InvalidParameter("Histogram256 needs exactly 256 bins")
        if arr.size and arr.min() < 0:
            raise InvalidParameter("bin counts must be non-negative")
        object.__setattr__(self, "counts", _frozen(arr))

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def quantize(g: GrayImage) -> np.ndarray:
    """Map intensities in [0, 1] onto integer bins 0..255."""
    return np.floor(255.0 * g.data + 0.5).astype(np.int64)
