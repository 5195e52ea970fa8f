"""Photovoltaic module segmentation and thermal hot-spot analysis."""

from . import analysis, errors, imgproc, pipeline, thermogram
from .analysis import (
    DefectReport,
    ModuleTemperatures,
    ThermalStats,
    analyze,
    detect_defects,
    extract_module_temperatures,
    module_stats,
    query_temperature,
    report_from_json,
    report_to_json,
)
from .pipeline import ModuleRegion, PipelineConfig, SegmentationResult, build_markers, segment, trace_boundary
from .thermogram import (
    HotSpot,
    SyntheticSpec,
    TemperatureMatrix,
    Thermogram,
    VisualImage,
    crop_thermogram,
    generate_synthetic,
    load_thermogram,
    save_thermogram,
)

__version__ = "0.1.0"

__all__ = [
    "DefectReport",
    "HotSpot",
    "ModuleRegion",
    "ModuleTemperatures",
    "PipelineConfig",
    "SegmentationResult",
    "SyntheticSpec",
    "TemperatureMatrix",
    "ThermalStats",
    "Thermogram",
    "VisualImage",
    "analysis",
    "analyze",
    "build_markers",
    "crop_thermogram",
    "detect_defects",
    "errors",
    "extract_module_temperatures",
    "generate_synthetic",
    "imgproc",
    "load_thermogram",
    "module_stats",
    "pipeline",
    "query_temperature",
    "report_from_json",
    "report_to_json",
    "save_thermogram",
    "segment",
    "thermogram",
    "trace_boundary",
]
