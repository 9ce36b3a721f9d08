"""Command-line interface: generate / render / sweep / metrics / serve.

Exit codes: 0 ok, 2 usage error, 3 data error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import data as data_mod
from . import metrics as metrics_mod
from . import presets as presets_mod
from . import render as render_mod
from .data import DataError
from .render import ConfigError, PlotConfig

# Used whenever --seed is omitted, so every run is reproducible from its
# argument list alone.
DEFAULT_SEED = 7

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4

RECOMMENDED_P_RANGE = (0.0, 2.0)


def _formatter(prog: str) -> argparse.HelpFormatter:
    # fixed width keeps --help output identical regardless of terminal
    return argparse.HelpFormatter(prog, width=80)


def _parse_color(text: str) -> tuple[int, int, int]:
    s = text.lstrip("#")
    if len(s) != 6:
        raise argparse.ArgumentTypeError(f"color must be RRGGBB hex, got {text!r}")
    try:
        return tuple(int(s[i:i + 2], 16) for i in (0, 2, 4))  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"color must be RRGGBB hex, got {text!r}") from None


def _add_config_args(p: argparse.ArgumentParser, single_p: bool = True) -> None:
    if single_p:
        p.add_argument("--p", type=float, default=1.0,
                       help="adjustment strength (0 = classical, 1 = equal-area)")
    else:
        p.add_argument("--p", type=str, default="0,1,2",
                       help="comma-separated adjustment strengths (default 0,1,2)")
    p.add_argument("--h", type=float, default=2.0, help="default line height in px")
    p.add_argument("--width", type=int, default=960, help="plot width in px")
    p.add_argument("--height", type=int, default=480, help="plot height in px")
    p.add_argument("--margin", type=int, default=40, help="margin in px")
    p.add_argument("--color", type=_parse_color, default=(0, 0, 0),
                   help="line color as RRGGBB hex (default 000000)")
    p.add_argument("--opacity", type=float, default=1.0, help="stroke opacity")
    p.add_argument("--min-width", type=float, default=0.0,
                   help="legibility floor on the adjusted width (breaks equal-area)")
    p.add_argument("--no-axes", action="store_true", help="omit axes and labels")


def _config_from_args(args: argparse.Namespace, p: float | None = None) -> PlotConfig:
    return PlotConfig(
        width_px=args.width,
        height_px=args.height,
        margin_px=args.margin,
        h=args.h,
        p=args.p if p is None else p,
        color=args.color,
        opacity=args.opacity,
        draw_axes=not args.no_axes,
        min_width=args.min_width,
    )


def _warn_p(p: float) -> None:
    lo, hi = RECOMMENDED_P_RANGE
    if not lo <= p <= hi:
        print(
            f"warning: P={p:g} is outside the recommended range [{lo:g}, {hi:g}]; "
            f"rendering anyway",
            file=sys.stderr,
        )


def _load_normalized(path: str) -> data_mod.NormalizedDataset:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise _IoFailure(f"cannot read {path}: {exc.strerror}") from exc
    return data_mod.normalize(data_mod.load_csv(raw))


class _IoFailure(Exception):
    pass


def _write(path: str, payload: bytes | str) -> None:
    try:
        if isinstance(payload, str):
            Path(path).write_text(payload)
        else:
            Path(path).write_bytes(payload)
    except OSError as exc:
        raise _IoFailure(f"cannot write {path}: {exc.strerror}") from exc


def cmd_generate(args: argparse.Namespace) -> int:
    if (args.preset is None) == (args.noise is None):
        raise DataError("exactly one of --preset / --noise is required")
    if args.preset is not None:
        dataset = presets_mod.load_preset(args.preset, seed=args.seed)
    else:
        try:
            n, d = (int(x) for x in args.noise.split(","))
        except ValueError:
            raise DataError(f"--noise expects 'n,d', got {args.noise!r}") from None
        seed = DEFAULT_SEED if args.seed is None else args.seed
        dataset = data_mod.gen_uniform_noise(n, d, seed)
    _write(args.out, data_mod.serialize_csv(dataset))
    print(f"wrote {dataset.n} records x {dataset.d} dims to {args.out}")
    return EXIT_OK


def _render_one(norm, config: PlotConfig, fmt: str) -> bytes | str:
    if fmt == "svg":
        return render_mod.render_svg(norm, config)
    buf = render_mod.render_raster(norm, config)
    return render_mod.write_image(buf, config, fmt=fmt)


def cmd_render(args: argparse.Namespace) -> int:
    _warn_p(args.p)
    norm = _load_normalized(getattr(args, "in"))
    config = _config_from_args(args)
    _write(args.out, _render_one(norm, config, args.format))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        p_values = [float(x) for x in args.p.split(",")]
    except ValueError:
        raise DataError(f"--p expects comma-separated reals, got {args.p!r}") from None
    norm = _load_normalized(getattr(args, "in"))
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _IoFailure(f"cannot create {out_dir}: {exc.strerror}") from exc
    for p in p_values:
        _warn_p(p)
        config = _config_from_args(args, p=p)
        path = out_dir / f"p{p:g}.{args.format}"
        _write(str(path), _render_one(norm, config, args.format))
        print(f"wrote {path}")
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace) -> int:
    _warn_p(args.p)
    norm = _load_normalized(getattr(args, "in"))
    config = _config_from_args(args)
    report = metrics_mod.analytic_report(norm, config)
    if args.report_format == "txt":
        text = metrics_mod.report_to_text(report)
    else:
        text = metrics_mod.report_to_json(report)
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=args.data_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopepcp",
        description="Parallel coordinates rendering with slope-dependent line widths.",
        formatter_class=_formatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a synthetic dataset as CSV",
                       formatter_class=_formatter)
    g.add_argument("--preset", help="named preset (e.g. fig1, fig3-noise-400)")
    g.add_argument("--noise", metavar="N,D", help="uniform noise: record count, dimensions")
    g.add_argument("--seed", type=int, default=None,
                   help=f"PRNG seed (default: preset's seed, or {DEFAULT_SEED})")
    g.add_argument("--out", required=True, help="output CSV path")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("render", help="render a CSV dataset",
                       formatter_class=_formatter)
    r.add_argument("--in", required=True, help="input CSV path")
    _add_config_args(r)
    r.add_argument("--format", choices=["svg", "png", "pgm"], default="svg")
    r.add_argument("--out", required=True, help="output file path")
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("sweep", help="render once per adjustment strength",
                       formatter_class=_formatter)
    s.add_argument("--in", required=True, help="input CSV path")
    _add_config_args(s, single_p=False)
    s.add_argument("--out-dir", required=True, help="output directory")
    s.add_argument("--format", choices=["svg", "png", "pgm"], default="png")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("metrics", help="compute a metrics report",
                       formatter_class=_formatter)
    m.add_argument("--in", required=True, help="input CSV path")
    _add_config_args(m)
    m.add_argument("--report-format", choices=["json", "txt"], default="json")
    m.add_argument("--out", help="output path (default: stdout)")
    m.set_defaults(func=cmd_metrics)

    v = sub.add_parser("serve", help="start the HTTP service",
                       formatter_class=_formatter)
    v.add_argument("--port", type=int, default=8000)
    v.add_argument("--data-dir", default=None, help="spool directory for uploads")
    v.add_argument("--ui-dir", default=None,
                   help="serve a static web UI from this directory at /")
    v.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
