#!/usr/bin/env python3
"""Tabulate ink and concentration metrics across adjustment strengths for
the uniform-noise presets, showing how ghost-cluster salience drops as P
increases."""

import argparse

from slopepcp.data import normalize
from slopepcp.metrics import ghost_concentration, total_ink
from slopepcp.presets import load_preset
from slopepcp.render import PlotConfig, render_raster


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*",
                    default=["fig3-noise-100", "fig3-noise-200", "fig3-noise-400"])
    ap.add_argument("--p", nargs="*", type=float,
                    default=[0.0, 0.5, 1.0, 1.5, 2.0])
    args = ap.parse_args()

    print(f"{'preset':<16} {'P':>4} {'ink':>12} {'clamped':>12} {'density gini':>13}")
    for preset in args.presets:
        norm = normalize(load_preset(preset))
        for p in args.p:
            cfg = PlotConfig(p=p)
            buf = render_raster(norm, cfg)
            m = cfg.margin_px
            region = (m, m, cfg.width_px - m, cfg.height_px - m)
            print(f"{preset:<16} {p:>4g} {total_ink(buf, clamped=False):>12.1f} "
                  f"{total_ink(buf):>12.1f} {ghost_concentration(buf, region):>13.4f}")


if __name__ == "__main__":
    main()
