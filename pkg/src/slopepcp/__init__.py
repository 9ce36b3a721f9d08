"""Parallel coordinates rendering with slope-dependent line widths."""

from .geometry import (
    SegmentGeometry,
    SegmentInput,
    classical_vertical_thickness,
    perpendicular_distance,
    segment_angle,
    segment_geometry,
    segment_length,
    slope_width,
)

__all__ = [
    "SegmentGeometry",
    "SegmentInput",
    "classical_vertical_thickness",
    "perpendicular_distance",
    "segment_angle",
    "segment_geometry",
    "segment_length",
    "slope_width",
]

__version__ = "0.1.0"
