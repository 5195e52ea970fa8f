"""From-scratch single-channel image-processing kernels."""

from .distance import distance_transform
from .filters import gaussian_blur, gaussian_kernel1d
from .histeq import clahe, dhe, equalize_global
from .intensity import histogram, otsu_threshold, threshold_fixed, to_grayscale
from .labeling import connected_components
from .morphology import dilate, erode, fill_holes, opening
from .raster import (
    BinaryMask,
    GrayImage,
    Histogram256,
    LabelMap,
    StructuringElement,
    quantize,
)
from .watershed import watershed

__all__ = [
    "BinaryMask",
    "GrayImage",
    "Histogram256",
    "LabelMap",
    "StructuringElement",
    "clahe",
    "connected_components",
    "dhe",
    "dilate",
    "distance_transform",
    "equalize_global",
    "erode",
    "fill_holes",
    "gaussian_blur",
    "gaussian_kernel1d",
    "histogram",
    "opening",
    "otsu_threshold",
    "quantize",
    "threshold_fixed",
    "to_grayscale",
    "watershed",
]
