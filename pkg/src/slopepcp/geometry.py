"""Closed-form line geometry for parallel coordinates segments.

A segment between two adjacent axes is modelled as a parallelogram with
vertical left/right edges. Its slope angle alpha = atan(delta_h / delta_w)
lives in [0, pi/2). The adjusted perpendicular width is

    omega = h * cos(alpha) ** p

where p = 0 reproduces the classical constant-stroke-width plot and p = 1
gives every segment the same area delta_w * h regardless of slope.

Note on notation: formulas below use 1/cos(alpha) (secant), never
arccos. All angles are radians; degrees exist only at CLI/UI boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidGeometryError(ValueError):
    """Raised when segment geometry is degenerate (e.g. coincident axes)."""


@dataclass(frozen=True)
class SegmentInput:
    """Raw quantities defining one segment, all in plot units."""

    delta_h: float  # |value-height difference between endpoints|
    delta_w: float  # inter-axis spacing, > 0
    h: float        # default line height, > 0
    p: float        # adjustment strength

    def __post_init__(self) -> None:
        if self.delta_w <= 0:
            raise InvalidGeometryError(f"delta_w must be > 0, got {self.delta_w}")
        if self.h <= 0:
            raise InvalidGeometryError(f"h must be > 0, got {self.h}")
        if self.delta_h < 0:
            raise InvalidGeometryError(f"delta_h must be >= 0, got {self.delta_h}")
        if not math.isfinite(self.p):
            raise InvalidGeometryError(f"p must be finite, got {self.p}")


@dataclass(frozen=True)
class SegmentGeometry:
    """Derived per-segment geometry.

    area == length * omega holds exactly by construction.
    """

    alpha: float               # radians, [0, pi/2)
    length: float              # plot units
    omega: float               # perpendicular adjusted width
    vertical_thickness: float  # vertical cross-section of the parallelogram
    area: float                # plot units^2


def segment_angle(delta_h: float, delta_w: float) -> float:
    """Slope angle of a segment: atan(delta_h / delta_w), in [0, pi/2)."""
    if delta_w <= 0:
        raise InvalidGeometryError(
            f"axis spacing must be positive (axes coincide), got {delta_w}"
        )
    if delta_h < 0:
        raise InvalidGeometryError(f"delta_h must be >= 0, got {delta_h}")
    return math.atan(delta_h / delta_w)


def slope_width(h: float, alpha: float, p: float) -> float:
    """Adjusted perpendicular line width h * cos(alpha)**p.

    p = 0 returns h (classical rendering); p = 1 makes every segment's
    area equal to delta_w * h.
    """
    return h * math.cos(alpha) ** p


def classical_vertical_thickness(w: float, alpha: float) -> float:
    """Vertical extent of a constant-stroke-width line: w / cos(alpha)."""
    return w / math.cos(alpha)


def segment_length(delta_w: float, alpha: float) -> float:
    """Segment length delta_w / cos(alpha)."""
    return delta_w / math.cos(alpha)


def perpendicular_distance(d_h: float, alpha: float) -> float:
    """Orthogonal distance between two parallel segments whose axis
    intersections are d_h apart: d_h * cos(alpha)."""
    return d_h * math.cos(alpha)


def segment_geometry(inp: SegmentInput) -> SegmentGeometry:
    """All derived quantities for one segment.

    vertical_thickness = omega / cos(alpha) = h * cos(alpha)**(p - 1),
    area = length * omega = delta_w * h * cos(alpha)**(p - 1).
    """
    alpha = segment_angle(inp.delta_h, inp.delta_w)
    length = segment_length(inp.delta_w, alpha)
    omega = slope_width(inp.h, alpha, inp.p)
    return SegmentGeometry(
        alpha=alpha,
        length=length,
        omega=omega,
        vertical_thickness=omega / math.cos(alpha),
        area=length * omega,
    )
