"""Thermogram data model, TGRM container I/O and the synthetic generator.

A thermogram pairs a visual RGB raster with a same-shape temperature
matrix in degrees Celsius.  The TGRM container is the single-file
interchange format (little-endian):

    magic "TGRM" | u16 version = 1 | u32 header length |
    UTF-8 JSON header {"width", "height", "temp_unit": "celsius", "meta"} |
    width * height float32 temperatures, row-major |
    u32 PNG length | 8-bit RGB PNG of the visual image

Trailing bytes are forbidden.  Saving is canonical: the JSON header is
emitted with sorted keys and no whitespace, so save(load(save(t)))
reproduces the same bytes.
"""

from __future__ import annotations

import io
import json
import math
import struct
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from .errors import (
    BadMagic,
    NonFiniteTemperature,
    OutOfPhysicalRange,
    ShapeMismatch,
    SpecInvalid,
    TrailingBytes,
    TruncatedFile,
    UnsupportedVersion,
)
from .imgproc.raster import BinaryMask, LabelMap

MAGIC = b"TGRM"
VERSION = 1
DEFAULT_TEMP_RANGE = (-40.0, 200.0)


@dataclass(frozen=True)
class VisualImage:
    """RGB raster with channel intensities in [0, 1].

    Values are snapped to the 8-bit grid (k/255) on construction, since
    the container stores the visual image as an 8-bit PNG and round-trips
    must be exact.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ShapeMismatch(f"visual image must be (H, W, 3), got {arr.shape}")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise ValueError("visual intensities must lie in [0, 1]")
        arr = np.floor(255.0 * arr + 0.5) / 255.0
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def to_uint8(self) -> np.ndarray:
        return np.floor(255.0 * self.data + 0.5).astype(np.uint8)

    @classmethod
    def from_uint8(cls, arr: np.ndarray) -> "VisualImage":
        return cls(np.asarray(arr, dtype=np.float64) / 255.0)


@dataclass(frozen=True)
class TemperatureMatrix:
    """Per-pixel temperatures in Celsius, stored as float32."""

    data: np.ndarray
    valid_range: tuple[float, float] = DEFAULT_TEMP_RANGE

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float32).copy()
        if arr.ndim != 2:
            raise ShapeMismatch(f"temperature matrix must be 2-D, got {arr.shape}")
        if arr.size:
            bad = np.argwhere(~np.isfinite(arr))
            if bad.size:
                r, c = bad[0]
                raise NonFiniteTemperature(f"non-finite temperature at ({r}, {c})")
            lo, hi = self.valid_range
            bad = np.argwhere((arr < lo) | (arr > hi))
            if bad.size:
                r, c = bad[0]
                raise OutOfPhysicalRange(
                    f"temperature {arr[r, c]:.2f} C at ({r}, {c}) outside [{lo}, {hi}] C"
                )
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class Thermogram:
    id: str
    visual: VisualImage
    temperature: TemperatureMatrix
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if (self.visual.height, self.visual.width) != (
            self.temperature.height,
            self.temperature.width,
        ):
            raise ShapeMismatch(
                f"visual {self.visual.height}x{self.visual.width} vs temperature "
                f"{self.temperature.height}x{self.temperature.width}"
            )
        if self.visual.height < 1 or self.visual.width < 1:
            raise ShapeMismatch("thermogram must have at least one pixel")
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def height(self) -> int:
        return self.visual.height

    @property
    def width(self) -> int:
        return self.visual.width


# --- container I/O -----------------------------------------------------------

def save_thermogram(t: Thermogram) -> bytes:
    """Serialize to canonical TGRM bytes."""
    header = {
        "width": t.width,
        "height": t.height,
        "temp_unit": "celsius",
        "meta": {str(k): str(v) for k, v in sorted(t.meta.items())},
        "id": t.id,
    }
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()

    png = io.BytesIO()
    Image.fromarray(t.visual.to_uint8(), mode="RGB").save(png, format="PNG")
    png_bytes = png.getvalue()

    temps = np.ascontiguousarray(t.temperature.data, dtype="<f4").tobytes()
    return b"".join(
        [
            MAGIC,
            struct.pack("<H", VERSION),
            struct.pack("<I", len(header_bytes)),
            header_bytes,
            temps,
            struct.pack("<I", len(png_bytes)),
            png_bytes,
        ]
    )


def load_thermogram(
    data: bytes, temp_range: tuple[float, float] = DEFAULT_TEMP_RANGE
) -> Thermogram:
    """Parse and validate a TGRM container."""
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"magic at offset 0: expected {MAGIC!r}, got {data[:4]!r}")
    if len(data) < 10:
        raise TruncatedFile("file ends inside the fixed header (offset 4)")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != VERSION:
        raise UnsupportedVersion(f"version field at offset 4: got {version}, expected {VERSION}")
    (header_len,) = struct.unpack_from("<I", data, 6)
    off = 10
    if len(data) < off + header_len:
        raise TruncatedFile(f"JSON header at offset {off}: declared {header_len} bytes")
    try:
        header = json.loads(data[off:off + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TruncatedFile(f"JSON header at offset {off}: {exc}") from exc
    off += header_len

    for key in ("width", "height", "temp_unit", "meta", "id"):
        if key not in header:
            raise ShapeMismatch(f"JSON header missing field '{key}'")
    unknown = set(header) - {"width", "height", "temp_unit", "meta", "id"}
    if unknown:
        raise ShapeMismatch(f"JSON header has unknown fields {sorted(unknown)}")
    width, height = header["width"], header["height"]
    if not isinstance(width, int) or not isinstance(height, int) or width < 1 or height < 1:
        raise ShapeMismatch(f"header width/height invalid: {width}x{height}")
    if header["temp_unit"] != "celsius":
        raise ShapeMismatch(f"header temp_unit must be 'celsius', got {header['temp_unit']!r}")
    meta = header["meta"]
    if not isinstance(meta, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in meta.items()
    ):
        raise ShapeMismatch("header meta must be a string-to-string map")

    n = width * height
    temp_end = off + 4 * n
    # Distinguish a short temperature block from a truncated file: if the
    # remainder cannot even hold the PNG length field the shapes disagree.
    if len(data) < temp_end + 4:
        avail = max(0, len(data) - off - 4)
        raise ShapeMismatch(
            f"temperature block at offset {off}: header says {width}x{height} "
            f"({n} float32s), payload holds at most {avail // 4}"
        )
    temps = np.frombuffer(data[off:temp_end], dtype="<f4").reshape(height, width)

    bad = np.argwhere(~np.isfinite(temps))
    if bad.size:
        r, c = bad[0]
        raise NonFiniteTemperature(
            f"temperature cell ({r}, {c}) at offset {off + 4 * (int(r) * width + int(c))} is not finite"
        )
    lo, hi = temp_range
    bad = np.argwhere((temps < lo) | (temps > hi))
    if bad.size:
        r, c = bad[0]
        raise OutOfPhysicalRange(
            f"temperature cell ({r}, {c}) at offset {off + 4 * (int(r) * width + int(c))}: "
            f"{temps[r, c]:.2f} C outside [{lo}, {hi}] C"
        )

    (png_len,) = struct.unpack_from("<I", data, temp_end)
    png_off = temp_end + 4
    if len(data) < png_off + png_len:
        raise TruncatedFile(f"PNG block at offset {png_off}: declared {png_len} bytes")
    if len(data) > png_off + png_len:
        raise TrailingBytes(f"{len(data) - png_off - png_len} trailing bytes at offset {png_off + png_len}")
    try:
        img = Image.open(io.BytesIO(data[png_off:png_off + png_len]))
        img.load()
    except Exception as exc:
        raise TruncatedFile(f"PNG block at offset {png_off}: {exc}") from exc
    if img.mode != "RGB":
        raise ShapeMismatch(f"PNG at offset {png_off} must be 8-bit RGB, got mode {img.mode}")
    if img.size != (width, height):
        raise ShapeMismatch(
            f"PNG at offset {png_off} is {img.size[0]}x{img.size[1]}, header says {width}x{height}"
        )

    return Thermogram(
        id=str(header["id"]),
        visual=VisualImage.from_uint8(np.asarray(img)),
        temperature=TemperatureMatrix(temps, valid_range=temp_range),
        meta=meta,
    )


def crop_thermogram(t: Thermogram, row0: int, row1: int, col0: int, col1: int) -> Thermogram:
    """Sub-window copy (half-open bounds)."""
    return Thermogram(
        id=t.id,
        visual=VisualImage(t.visual.data[row0:row1, col0:col1]),
        temperature=TemperatureMatrix(
            t.temperature.data[row0:row1, col0:col1], valid_range=t.temperature.valid_range
        ),
        meta=t.meta,
    )


# --- synthetic scenes --------------------------------------------------------

@dataclass(frozen=True)
class HotSpot:
    """Injected defect: a Gaussian temperature bump inside one module."""

    module_index: int
    center: tuple[float, float]  # (row, col) in module-local pixels
    radius: float                # bump contributes > delta_c / 2 inside this radius
    delta_c: float


@dataclass(frozen=True)
class SyntheticSpec:
    rows: int = 2
    cols: int = 3
    module_size: int = 40
    gap: int = 8
    background_c: float = 20.0
    module_c: float = 35.0
    hot_spots: tuple[HotSpot, ...] = ()
    noise_std: float = 0.0
    seed: int = 0

    # visual rendering levels (8-bit-grid values)
    background_level: float = 210 / 255
    module_level: float = 90 / 255
    hotspot_gain: float = 120 / 255


def generate_synthetic(spec: SyntheticSpec) -> tuple[Thermogram, LabelMap, BinaryMask]:
    """Render a module grid and return (thermogram, module labels, defect mask).

    Modules are darker rectangles on a brighter background; hot spots add
    a Gaussian bump to both the temperature matrix and the visual image.
    The bump is scaled so that its noiseless contribution exceeds
    delta_c / 2 exactly for pixels strictly closer than ``radius`` to the
    center; those pixels (clipped to the module rectangle) form the
    ground-truth defect mask.
    """
    _validate_spec(spec)
    ms, gap = spec.module_size, spec.gap
    h = spec.rows * ms + (spec.rows + 1) * gap
    w = spec.cols * ms + (spec.cols + 1) * gap
    if h < 1 or w < 1:
        raise SpecInvalid("scene collapses to zero size; increase gap or module count")

    temp = np.full((h, w), spec.background_c, dtype=np.float64)
    visual = np.full((h, w), spec.background_level, dtype=np.float64)
    labels = np.zeros((h, w), dtype=np.int32)
    defects = np.zeros((h, w), dtype=np.uint8)

    origins = []
    for r in range(spec.rows):
        for c in range(spec.cols):
            r0 = gap + r * (ms + gap)
            c0 = gap + c * (ms + gap)
            origins.append((r0, c0))
            temp[r0:r0 + ms, c0:c0 + ms] = spec.module_c
            visual[r0:r0 + ms, c0:c0 + ms] = spec.module_level
            labels[r0:r0 + ms, c0:c0 + ms] = r * spec.cols + c + 1

    yy, xx = np.mgrid[0:h, 0:w]
    for hs in spec.hot_spots:
        r0, c0 = origins[hs.module_index]
        cr, cc = r0 + hs.center[0], c0 + hs.center[1]
        sigma = hs.radius / math.sqrt(2.0 * math.log(2.0))
        d2 = (yy - cr) ** 2 + (xx - cc) ** 2
        profile = np.exp(-d2 / (2.0 * sigma * sigma))
        temp += hs.delta_c * profile
        visual += spec.hotspot_gain * profile
        inside = d2 < hs.radius * hs.radius
        module_rect = np.zeros((h, w), dtype=bool)
        module_rect[r0:r0 + ms, c0:c0 + ms] = True
        defects[inside & module_rect] = 1

    if spec.noise_std > 0:
        rng = np.random.default_rng(spec.seed)
        temp = temp + rng.normal(0.0, spec.noise_std, size=(h, w))

    thermo = Thermogram(
        id=f"synthetic-{spec.seed}",
        visual=VisualImage(np.clip(visual, 0.0, 1.0)[:, :, None].repeat(3, axis=2)),
        temperature=TemperatureMatrix(temp.astype(np.float32)),
        meta={"source": "synthetic", "seed": str(spec.seed)},
    )
    return thermo, LabelMap(labels, spec.rows * spec.cols), BinaryMask(defects)


def _validate_spec(spec: SyntheticSpec) -> None:
    if spec.rows < 0 or spec.cols < 0:
        raise SpecInvalid("grid rows/cols must be >= 0")
    if spec.module_size < 1:
        raise SpecInvalid("module_size must be >= 1")
    if spec.gap < 0:
        raise SpecInvalid("gap must be >= 0")
    if spec.noise_std < 0:
        raise SpecInvalid("noise_std must be >= 0")
    n_modules = spec.rows * spec.cols
    for i, hs in enumerate(spec.hot_spots):
        if not 0 <= hs.module_index < n_modules:
            raise SpecInvalid(f"hot spot {i}: module index {hs.module_index} out of range")
        if hs.delta_c <= 0:
            raise SpecInvalid(f"hot spot {i}: delta_c must be > 0")
        if hs.radius <= 0:
            raise SpecInvalid(f"hot spot {i}: radius must be > 0")
        cr, cc = hs.center
        if not (0 <= cr < spec.module_size and 0 <= cc < spec.module_size):
            raise SpecInvalid(f"hot spot {i}: center {hs.center} outside its module")


def synthetic_spec_from_json(doc: dict) -> SyntheticSpec:
    """Build a SyntheticSpec from a plain JSON document."""
    known = {
        "rows", "cols", "module_size", "gap", "background_c", "module_c",
        "hot_spots", "noise_std", "seed",
    }
    unknown = set(doc) - known
    if unknown:
        raise SpecInvalid(f"unknown fields {sorted(unknown)}")
    spots = tuple(
        HotSpot(
            module_index=int(hs["module_index"]),
            center=(float(hs["center"][0]), float(hs["center"][1])),
            radius=float(hs["radius"]),
            delta_c=float(hs["delta_c"]),
        )
        for hs in doc.get("hot_spots", ())
    )
    fields = {k: doc[k] for k in known - {"hot_spots"} if k in doc}
    return SyntheticSpec(hot_spots=spots, **fields)
