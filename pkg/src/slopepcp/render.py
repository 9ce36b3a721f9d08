"""Raster and vector rendering of parallel coordinates with
slope-dependent line widths.

Segments are drawn as parallelograms with vertical left/right edges, so
the vertical cross-section at every column equals h * cos(alpha)**(p-1)
and per-column coverage is analytic. The raster path accumulates
fractional coverage unclamped and clamps at read-out, which makes the
result independent of record order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from . import geometry
from .data import NormalizedDataset


class ConfigError(ValueError):
    """Raised for invalid plot configuration."""


@dataclass(frozen=True)
class PlotConfig:
    """Plot geometry and rendering options, in pixels."""

    width_px: int = 960
    height_px: int = 480
    margin_px: int = 40
    h: float = 2.0          # default line height
    p: float = 1.0          # adjustment strength
    color: tuple[int, int, int] = (0, 0, 0)
    opacity: float = 1.0
    draw_axes: bool = True
    min_width: float = 0.0  # legibility floor on omega; breaks equal-area

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise ConfigError("plot size must be positive")
        if self.margin_px < 0 or 2 * self.margin_px >= min(self.width_px, self.height_px):
            raise ConfigError("margin leaves no plot interior")
        if self.h <= 0:
            raise ConfigError(f"line height must be > 0, got {self.h}")
        if not math.isfinite(self.p):
            raise ConfigError(f"p must be finite, got {self.p}")
        if not 0.0 <= self.opacity <= 1.0:
            raise ConfigError(f"opacity must be in [0, 1], got {self.opacity}")
        if self.min_width < 0:
            raise ConfigError("min_width must be >= 0")
        if len(self.color) != 3 or any(not 0 <= c <= 255 for c in self.color):
            raise ConfigError(f"color must be an RGB triple in 0..255: {self.color}")

    @property
    def axis_height_px(self) -> float:
        return self.height_px - 2 * self.margin_px

    def delta_w_px(self, d: int) -> float:
        if d < 2:
            raise ConfigError(f"need at least 2 axes, got {d}")
        return (self.width_px - 2 * self.margin_px) / (d - 1)


@dataclass
class CoverageBuffer:
    """W x H grid of ink coverage.

    raw holds the unclamped accumulated coverage (used by metrics);
    clamped() is the visible coverage with every cell in [0, 1].
    """

    raw: np.ndarray  # (height, width) float64, row-major, y down

    @property
    def width(self) -> int:
        return self.raw.shape[1]

    @property
    def height(self) -> int:
        return self.raw.shape[0]

    def clamped(self) -> np.ndarray:
        return np.clip(self.raw, 0.0, 1.0)


@dataclass(frozen=True)
class SegmentQuad:
    """One segment as a parallelogram; end edges are vertical."""

    x_left: float
    x_right: float
    y_left: float   # pixel y of the segment centerline at the left axis
    y_right: float
    thickness: float  # vertical edge length

    @property
    def vertices(self) -> tuple[tuple[float, float], ...]:
        t2 = self.thickness / 2.0
        return (
            (self.x_left, self.y_left - t2),
            (self.x_right, self.y_right - t2),
            (self.x_right, self.y_right + t2),
            (self.x_left, self.y_left + t2),
        )


@dataclass
class QuadBatch:
    """All quads of one rendering as flat arrays (one entry per record per
    adjacent axis pair)."""

    x_left: np.ndarray
    x_right: np.ndarray
    y_left: np.ndarray
    y_right: np.ndarray
    thickness: np.ndarray
    alpha: np.ndarray
    omega: np.ndarray
    record: np.ndarray  # record index per quad

    def __len__(self) -> int:
        return len(self.thickness)

    def __getitem__(self, i: int) -> SegmentQuad:
        return SegmentQuad(
            x_left=float(self.x_left[i]),
            x_right=float(self.x_right[i]),
            y_left=float(self.y_left[i]),
            y_right=float(self.y_right[i]),
            thickness=float(self.thickness[i]),
        )


def layout(config: PlotConfig, d: int) -> np.ndarray:
    """Equally spaced axis x-positions, first at margin, last at
    width - margin."""
    if d < 2:
        raise ConfigError(f"need at least 2 axes, got {d}")
    return np.linspace(config.margin_px, config.width_px - config.margin_px, d)


def value_to_y(values: np.ndarray, config: PlotConfig) -> np.ndarray:
    """Normalized value -> pixel y; value 1 at the top of the axis."""
    return config.margin_px + (1.0 - values) * config.axis_height_px


def build_quads(data: NormalizedDataset, config: PlotConfig) -> QuadBatch:
    """One parallelogram per record per adjacent axis pair.

    Angles come from pixel-space geometry (after axis scaling), so the
    distortion being corrected is that of the rendered plot.
    """
    xs = layout(config, data.d)
    ys = value_to_y(data.values, config)
    dw = config.delta_w_px(data.d)

    n, d = data.values.shape
    parts_xl, parts_xr, parts_yl, parts_yr = [], [], [], []
    parts_vt, parts_alpha, parts_omega, parts_rec = [], [], [], []
    rec_idx = np.arange(n)
    for j in range(d - 1):
        yl = ys[:, j]
        yr = ys[:, j + 1]
        alpha = np.arctan(np.abs(yr - yl) / dw)
        cos_a = np.cos(alpha)
        omega = config.h * cos_a ** config.p
        if config.min_width > 0:
            omega = np.maximum(omega, config.min_width)
        parts_xl.append(np.full(n, xs[j]))
        parts_xr.append(np.full(n, xs[j + 1]))
        parts_yl.append(yl)
        parts_yr.append(yr)
        parts_vt.append(omega / cos_a)
        parts_alpha.append(alpha)
        parts_omega.append(omega)
        parts_rec.append(rec_idx)
    return QuadBatch(
        x_left=np.concatenate(parts_xl),
        x_right=np.concatenate(parts_xr),
        y_left=np.concatenate(parts_yl),
        y_right=np.concatenate(parts_yr),
        thickness=np.concatenate(parts_vt),
        alpha=np.concatenate(parts_alpha),
        omega=np.concatenate(parts_omega),
        record=np.concatenate(parts_rec),
    )


_RASTER_CHUNK = 1024  # records per accumulation batch, caps peak memory


def _accumulate_pair(raw: np.ndarray, x0: float, x1: float, yl: np.ndarray,
                     yr: np.ndarray, vt: np.ndarray, weight: float) -> None:
    """Add the coverage of all quads between one axis pair into raw.

    Point sampling in x at column centers, exact interval coverage in y:
    each column of a quad covers the vertical span centred on the
    segment's centerline with height = vertical thickness.
    """
    height, width = raw.shape
    c0 = max(int(math.ceil(x0 - 0.5)), 0)
    c1 = min(int(math.ceil(x1 - 0.5)), width)
    if c1 <= c0:
        return
    cols = np.arange(c0, c1)
    t = (cols + 0.5 - x0) / (x1 - x0)

    for start in range(0, len(yl), _RASTER_CHUNK):
        yl_c = yl[start:start + _RASTER_CHUNK]
        yr_c = yr[start:start + _RASTER_CHUNK]
        vt_c = vt[start:start + _RASTER_CHUNK]
        yc = yl_c[:, None] + t[None, :] * (yr_c - yl_c)[:, None]
        top = yc - vt_c[:, None] / 2.0
        bot = yc + vt_c[:, None] / 2.0
        j0 = np.floor(top).astype(np.int64)
        k = int(math.ceil(float(vt_c.max()))) + 2
        rows = j0[:, :, None] + np.arange(k)[None, None, :]
        cover = np.clip(
            np.minimum(bot[:, :, None], rows + 1.0)
            - np.maximum(top[:, :, None], rows),
            0.0, 1.0,
        )
        valid = (rows >= 0) & (rows < height) & (cover > 0.0)
        flat = (rows * width + cols[None, :, None])[valid]
        counts = np.bincount(flat, weights=weight * cover[valid],
                             minlength=height * width)
        raw += counts.reshape(height, width)


def render_raster(data: NormalizedDataset, config: PlotConfig) -> CoverageBuffer:
    """Rasterize all segments into a coverage buffer.

    Accumulation is plain addition, so the result does not depend on the
    order in which quads are processed (up to float rounding); clamping
    happens only at read-out.
    """
    raw = np.zeros((config.height_px, config.width_px), dtype=np.float64)
    xs = layout(config, data.d)
    ys = value_to_y(data.values, config)
    dw = config.delta_w_px(data.d)
    for j in range(data.d - 1):
        yl = ys[:, j]
        yr = ys[:, j + 1]
        alpha = np.arctan(np.abs(yr - yl) / dw)
        cos_a = np.cos(alpha)
        omega = config.h * cos_a ** config.p
        if config.min_width > 0:
            omega = np.maximum(omega, config.min_width)
        _accumulate_pair(raw, float(xs[j]), float(xs[j + 1]), yl, yr,
                         omega / cos_a, config.opacity)
    return CoverageBuffer(raw=raw)


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _hex_color(color: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*color)


def _denormalized_label(rng: tuple[float, float], t: float, flipped: bool) -> str:
    lo, hi = rng
    if flipped:
        t = 1.0 - t
    return f"{lo + t * (hi - lo):.6g}"


def render_svg(data: NormalizedDataset, config: PlotConfig) -> str:
    """SVG document with one line per segment, stroke-width = omega.

    SVG stroke width is perpendicular to the path, so omega maps directly.
    All numeric attributes use fixed 6-decimal formatting; output is
    byte-identical for identical inputs.
    """
    xs = layout(config, data.d)
    ys = value_to_y(data.values, config)
    dw = config.delta_w_px(data.d)

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{config.width_px}" height="{config.height_px}" '
        f'viewBox="0 0 {config.width_px} {config.height_px}">\n'
    )
    out.write(
        f'<rect width="{config.width_px}" height="{config.height_px}" fill="#ffffff"/>\n'
    )
    out.write(
        f'<g stroke="{_hex_color(config.color)}" stroke-linecap="butt" '
        f'stroke-opacity="{_fmt(config.opacity)}" fill="none">\n'
    )
    for i in range(data.n):
        for j in range(data.d - 1):
            alpha = math.atan(abs(ys[i, j + 1] - ys[i, j]) / dw)
            omega = geometry.slope_width(config.h, alpha, config.p)
            if config.min_width > 0:
                omega = max(omega, config.min_width)
            out.write(
                f'<line x1="{_fmt(xs[j])}" y1="{_fmt(ys[i, j])}" '
                f'x2="{_fmt(xs[j + 1])}" y2="{_fmt(ys[i, j + 1])}" '
                f'stroke-width="{_fmt(omega)}"/>\n'
            )
    out.write('</g>\n')

    if config.draw_axes:
        y_top = config.margin_px
        y_bot = config.height_px - config.margin_px
        out.write('<g stroke="#444444" stroke-width="1.000000" fill="none">\n')
        for x in xs:
            out.write(
                f'<line x1="{_fmt(x)}" y1="{_fmt(y_top)}" '
                f'x2="{_fmt(x)}" y2="{_fmt(y_bot)}"/>\n'
            )
        out.write('</g>\n')
        out.write('<g font-family="sans-serif" font-size="10" fill="#444444">\n')
        for j, x in enumerate(xs):
            out.write(
                f'<text x="{_fmt(x)}" y="{_fmt(y_top - 8)}" '
                f'text-anchor="middle">{data.dimension_names[j]}</text>\n'
            )
            for t in (0.0, 0.5, 1.0):
                y = config.margin_px + (1.0 - t) * config.axis_height_px
                label = _denormalized_label(data.ranges[j], t, data.flipped[j])
                out.write(
                    f'<text x="{_fmt(x + 3)}" y="{_fmt(y + 3)}" '
                    f'text-anchor="start">{label}</text>\n'
                )
        out.write('</g>\n')

    out.write('</svg>\n')
    return out.getvalue()


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5).astype(np.uint8)


def write_image(buffer: CoverageBuffer, config: PlotConfig, fmt: str = "png") -> bytes:
    """Encode coverage as an image: linear blend from white background to
    config.color, round-half-up to 8 bits.

    PGM (P5) is a bit-exact uncompressed fallback; it ignores color and
    encodes coverage against white as pure gray.
    """
    c = buffer.clamped()
    if fmt == "pgm":
        gray = _round_half_up((1.0 - c) * 255.0)
        header = f"P5\n{buffer.width} {buffer.height}\n255\n".encode("ascii")
        return header + gray.tobytes()
    if fmt == "png":
        channels = [
            _round_half_up((1.0 - c) * 255.0 + c * col) for col in config.color
        ]
        img = Image.fromarray(np.stack(channels, axis=-1), mode="RGB")
        out = io.BytesIO()
        img.save(out, format="PNG")
        return out.getvalue()
    raise ValueError(f"unknown image format {fmt!r}")
