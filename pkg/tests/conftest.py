import math

import numpy as np
import pytest

from slopepcp.data import NormalizedDataset
from slopepcp.render import PlotConfig


def supersample_quad_ink(x0, x1, y0, y1, thickness, width, height, factor=16):
    """Independent raster oracle: total ink of one parallelogram with
    vertical end edges, by subpixel point sampling.

    A subpixel at (x, y) is inside iff x0 <= x < x1 and y is within
    thickness/2 of the centerline at x. Deliberately shares no code with
    the render path.
    """
    cx0 = max(int(math.floor(x0)), 0)
    cx1 = min(int(math.ceil(x1)), width)
    ry0 = max(int(math.floor(min(y0, y1) - thickness)), 0)
    ry1 = min(int(math.ceil(max(y0, y1) + thickness)), height)
    if cx1 <= cx0 or ry1 <= ry0:
        return 0.0
    sub = (np.arange(factor) + 0.5) / factor
    xs = (np.arange(cx0, cx1)[:, None] + sub[None, :]).ravel()
    ys = (np.arange(ry0, ry1)[:, None] + sub[None, :]).ravel()
    X, Y = np.meshgrid(xs, ys)
    yc = y0 + (X - x0) / (x1 - x0) * (y1 - y0)
    inside = (X >= x0) & (X < x1) & (np.abs(Y - yc) <= thickness / 2.0)
    return float(inside.sum()) / factor**2


def single_segment_dataset(v_left, v_right):
    """One record across two axes, values already normalized."""
    return NormalizedDataset(
        dimension_names=("a", "b"),
        values=np.array([[v_left, v_right]], dtype=np.float64),
        ranges=((0.0, 1.0), (0.0, 1.0)),
    )


@pytest.fixture
def two_cluster_fixture():
    """Equal-size horizontal and 60-degree diagonal clusters over 2 axes.

    Geometry is pinned so the diagonal slope is 60 degrees in pixel space:
    axis height 400, axis spacing 208, value difference exactly 0.9, so
    tan(alpha) = 360 / 208 = 1.7308 (sec alpha = 1.9988). Values are built
    directly in normalized space to keep min-max scaling out of the way.
    """
    k = 20
    u = np.linspace(0.45, 0.55, k)
    horizontal = np.stack([u, u], axis=1)
    a = np.linspace(0.03, 0.07, k)
    diagonal = np.stack([a, a + 0.9], axis=1)
    data = NormalizedDataset(
        dimension_names=("a", "b"),
        values=np.vstack([horizontal, diagonal]),
        ranges=((0.0, 1.0), (0.0, 1.0)),
        labels=np.array([0] * k + [1] * k),
    )

    def config(p):
        return PlotConfig(width_px=288, height_px=480, margin_px=40, h=2.0, p=p)

    return data, config


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo acceptance-criterion results past pytest's output capture."""
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.CRITERION_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, verdict in test_acceptance.CRITERION_RESULTS:
            terminalreporter.write_line(f"[ACCEPTANCE] {name}: {verdict}")
