"""Batch plotting CLI.

Verbs: ``lines``, ``heatmap``, ``panels``; each takes ``--in`` (and for
lines an optional ``--in2`` overlay), ``--metric``, and ``--out`` with
the image format inferred from the extension (png or svg).
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

from .data import MetricNotFoundError, SweepShapeError
from .figures import PlotSpec, plot_heatmap, plot_lines, plot_power_panels

_RENDERERS = {
    "lines": plot_lines,
    "heatmap": plot_heatmap,
    "panels": plot_power_panels,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotviz", description="Render figures from vifsim CSV exports"
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in _RENDERERS:
        p = sub.add_parser(kind)
        p.add_argument("--in", dest="input", required=True, metavar="PATH")
        if kind == "lines":
            p.add_argument("--in2", dest="input2", default=None, metavar="PATH",
                           help="second results CSV overlaid with dashed lines")
        p.add_argument("--metric", default=None, metavar="NAME")
        p.add_argument("--out", required=True, metavar="PATH")
        p.add_argument("--vmin", type=float, default=None)
        p.add_argument("--vmax", type=float, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    matplotlib.use("Agg")
    args = build_parser().parse_args(argv)
    extra = (args.input2,) if getattr(args, "input2", None) else ()
    try:
        spec = PlotSpec(
            inputs=(args.input,),
            metric=args.metric,
            out=args.out,
            vmin=args.vmin,
            vmax=args.vmax,
            extra_inputs=extra,
        )
        path = _RENDERERS[args.kind](spec)
    except (MetricNotFoundError, SweepShapeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
