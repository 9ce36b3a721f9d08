#!/usr/bin/env python3
"""Render the preset datasets at P = 0, 1, 2 into an output directory,
one image per (preset, P): the regular / adjusted / over-adjusted grid."""

import argparse
from pathlib import Path

from slopepcp.data import normalize
from slopepcp.presets import available_presets, load_preset
from slopepcp.render import PlotConfig, render_raster, write_image


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures")
    ap.add_argument("--presets", nargs="*", default=["fig4-synthetic", "fig3-noise-400"],
                    help=f"any of: {', '.join(available_presets())}")
    ap.add_argument("--p", nargs="*", type=float, default=[0.0, 1.0, 2.0])
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for preset in args.presets:
        norm = normalize(load_preset(preset))
        for p in args.p:
            cfg = PlotConfig(p=p)
            buf = render_raster(norm, cfg)
            path = out / f"{preset}_p{p:g}.png"
            path.write_bytes(write_image(buf, cfg, fmt="png"))
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
