"""Distortion metrics: ink totals, per-cluster emphasis, angle
distribution and ink-concentration statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .data import DataError, NormalizedDataset
from .render import CoverageBuffer, PlotConfig, build_quads, render_raster

SCHEMA_VERSION = "slopepcp-metrics/1"

ANGLE_BINS = 18  # 5-degree bins over [0, 90)

Region = tuple[int, int, int, int]  # x0, y0, x1, y1 (exclusive)


class MetricsError(ValueError):
    pass


def _region_view(cells: np.ndarray, region: Region | None) -> np.ndarray:
    if region is None:
        return cells
    x0, y0, x1, y1 = region
    h, w = cells.shape
    if not (0 <= x0 < x1 <= w and 0 <= y0 < y1 <= h):
        raise MetricsError(f"region {region} outside {w}x{h} buffer")
    return cells[y0:y1, x0:x1]


def total_ink(buffer: CoverageBuffer, region: Region | None = None,
              clamped: bool = True) -> float:
    """Sum of coverage over a region (whole buffer by default)."""
    cells = buffer.clamped() if clamped else buffer.raw
    return float(_region_view(cells, region).sum())


# Aggregation scale (px) at which ghost clusters read as local density
# variation. Per-pixel clamped coverage moves the wrong way with the
# adjustment strength: thinner strokes at higher p leave more empty
# cells, which dominates a per-pixel Gini. Block-averaged unclamped ink
# measures the density field the bands actually live in.
GHOST_DENSITY_SCALE = 20


def _gini_of(xs: np.ndarray) -> float:
    total = xs.sum()
    if total <= 0.0:
        return 0.0
    xs = np.sort(xs)
    n = xs.size
    ranks = 2.0 * np.arange(1, n + 1) - n - 1
    return float(max(np.dot(xs, ranks) / (n * total), 0.0))


def concentration_gini(buffer: CoverageBuffer, region: Region | None = None,
                       cell_size: int = 1, clamped: bool = True) -> float:
    """Gini coefficient of ink concentration: 0 for perfectly even ink,
    approaching 1 when ink concentrates in few cells.

    With the defaults this is the Gini of the per-cell coverage multiset.
    cell_size > 1 averages coverage over cell_size x cell_size blocks
    first (trailing partial blocks dropped), measuring concentration of
    the local density field instead of individual stroke pixels; that is
    the form used as the ghost-cluster proxy.
    """
    cells = _region_view(buffer.clamped() if clamped else buffer.raw, region)
    if cells.size == 0:
        raise MetricsError("empty region")
    if cell_size > 1:
        b = cell_size
        h, w = cells.shape
        if h < b or w < b:
            raise MetricsError(f"region smaller than cell_size {b}")
        cells = cells[:h // b * b, :w // b * b]
        cells = cells.reshape(h // b, b, w // b, b).mean(axis=(1, 3))
    return _gini_of(cells.ravel().astype(np.float64))


def ghost_concentration(buffer: CoverageBuffer, region: Region | None = None) -> float:
    """Ghost-cluster salience proxy: density-field Gini at the documented
    aggregation scale, on unclamped ink."""
    return concentration_gini(buffer, region, cell_size=GHOST_DENSITY_SCALE,
                              clamped=False)


@dataclass(frozen=True)
class ClusterInk:
    count: int
    clamped: float
    unclamped: float

    @property
    def per_record_unclamped(self) -> float:
        return self.unclamped / self.count if self.count else 0.0

    @property
    def per_record_clamped(self) -> float:
        return self.clamped / self.count if self.count else 0.0


def cluster_ink(data: NormalizedDataset, config: PlotConfig) -> dict[int, ClusterInk]:
    """Render each labelled cluster in isolation and report its ink.

    Unclamped ink matches the analytic per-segment areas; clamped ink is
    what remains visible under overplotting.
    """
    if data.labels is None:
        raise DataError("cluster_ink requires labelled records")
    result: dict[int, ClusterInk] = {}
    for cid in sorted(int(c) for c in np.unique(data.labels)):
        mask = data.labels == cid
        sub = replace(data, values=data.values[mask], labels=data.labels[mask])
        buf = render_raster(sub, config)
        result[cid] = ClusterInk(
            count=int(mask.sum()),
            clamped=total_ink(buf),
            unclamped=total_ink(buf, clamped=False),
        )
    return result


@dataclass(frozen=True)
class AreaStats:
    min: float
    max: float
    mean: float
    stddev: float


@dataclass(frozen=True)
class MetricsReport:
    analytic_area_stats: AreaStats
    angle_histogram: list[int]            # 5-degree bins over [0, 90)
    concentration_gini: float
    data_ink_ratio: float
    per_cluster_ink: dict[int, ClusterInk] | None
    ink_ratio_matrix: dict[int, dict[int, float]] | None  # per-record ratios
    min_width_active: bool
    config_echo: dict


def _config_echo(config: PlotConfig) -> dict:
    return {
        "width_px": config.width_px,
        "height_px": config.height_px,
        "margin_px": config.margin_px,
        "h": config.h,
        "p": config.p,
        "color": list(config.color),
        "opacity": config.opacity,
        "draw_axes": config.draw_axes,
        "min_width": config.min_width,
    }


def analytic_report(data: NormalizedDataset, config: PlotConfig) -> MetricsReport:
    """Full metrics report: analytic per-segment areas and angles, plus
    raster-derived concentration and cluster ink."""
    quads = build_quads(data, config)
    dw = config.delta_w_px(data.d)
    areas = dw / np.cos(quads.alpha) * quads.omega
    degrees = np.degrees(quads.alpha)
    hist = np.histogram(degrees, bins=ANGLE_BINS, range=(0.0, 90.0))[0]

    buf = render_raster(data, config)
    m = config.margin_px
    interior: Region = (m, m, config.width_px - m, config.height_px - m)
    interior_area = (config.width_px - 2 * m) * (config.height_px - 2 * m)
    # unclamped ink can exceed the interior under heavy overplotting;
    # the ratio is capped so it stays a proportion
    ink_ratio = min(total_ink(buf, clamped=False) / interior_area, 1.0)

    per_cluster = None
    ratio_matrix = None
    if data.labels is not None:
        per_cluster = cluster_ink(data, config)
        ratio_matrix = {
            a: {
                b: (per_cluster[a].per_record_unclamped
                    / per_cluster[b].per_record_unclamped
                    if per_cluster[b].per_record_unclamped else float("inf"))
                for b in per_cluster
            }
            for a in per_cluster
        }

    return MetricsReport(
        analytic_area_stats=AreaStats(
            min=float(areas.min()),
            max=float(areas.max()),
            mean=float(areas.mean()),
            stddev=float(areas.std()),
        ),
        angle_histogram=[int(c) for c in hist],
        concentration_gini=ghost_concentration(buf, interior),
        data_ink_ratio=ink_ratio,
        per_cluster_ink=per_cluster,
        ink_ratio_matrix=ratio_matrix,
        min_width_active=config.min_width > 0,
        config_echo=_config_echo(config),
    )


def report_to_dict(report: MetricsReport) -> dict:
    doc: dict = {
        "schema": SCHEMA_VERSION,
        "analytic_area_stats": vars(report.analytic_area_stats).copy(),
        "angle_histogram": report.angle_histogram,
        "concentration_gini": report.concentration_gini,
        "data_ink_ratio": report.data_ink_ratio,
        "min_width_active": report.min_width_active,
        "config": report.config_echo,
    }
    if report.per_cluster_ink is not None:
        doc["per_cluster_ink"] = {
            str(cid): {
                "count": ink.count,
                "clamped": ink.clamped,
                "unclamped": ink.unclamped,
                "per_record_unclamped": ink.per_record_unclamped,
            }
            for cid, ink in report.per_cluster_ink.items()
        }
        doc["ink_ratio_matrix"] = {
            str(a): {str(b): v for b, v in row.items()}
            for a, row in report.ink_ratio_matrix.items()
        }
    return doc


def report_to_json(report: MetricsReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def _flatten(prefix: str, value, lines: list[str]) -> None:
    if isinstance(value, dict):
        for k in sorted(value, key=str):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], lines)
    elif isinstance(value, list):
        lines.append(f"{prefix} = {','.join(str(v) for v in value)}")
    else:
        lines.append(f"{prefix} = {value}")


def report_to_text(report: MetricsReport) -> str:
    """Flat key-value rendering of the same document as report_to_json."""
    lines: list[str] = []
    _flatten("", report_to_dict(report), lines)
    return "\n".join(lines) + "\n"
