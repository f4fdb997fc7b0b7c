"""Command-line interface.

Verbs:
  run        execute a scenario grid and write results/manifest/heatmaps
  calibrate  calibrate the precision-assurance margin on the baseline
  check      print closed-form oracle vs simulation deltas per scenario
  preset     run a named experiment (fig1|fig2|fig4|fig5|s1|s3|s5|s11)

Exit codes: 0 success, 2 configuration error, 3 scenario failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corrstruct import Structure
from .datagen import DEFAULT_SIGMA_EPS
from .metrics import DEFAULT_C_POWVAL
from .oracles import analytic_mae, analytic_pa, analytic_power, analytic_se
from .report import (
    HEATMAP_METRICS,
    HeatmapShapeError,
    export_heatmap_grid,
    write_metadata_json,
    write_results_csv,
)
from .runner import (
    GridConfig,
    GridExecutionError,
    PRESET_NAMES,
    preset_configs,
    run_calibration,
    run_grid,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SCENARIO = 3

#: Config file schema: flat "key = value" lines, '#' starts a comment.
#: Lists are comma separated.  Keys: n_grid, vif_grid, structure
#: (pairwise|equi), p, betas, intercept, sigma_eps, beta_main_sweep,
#: n_sims, seed_base, omit (predictor names like x4), c_powval.
CONFIG_KEYS = frozenset({
    "n_grid", "vif_grid", "structure", "p", "betas", "intercept",
    "sigma_eps", "beta_main_sweep", "n_sims", "seed_base", "omit", "c_powval",
})


class ConfigError(ValueError):
    pass


def _split_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def _parse_omit_names(raw: str) -> frozenset[int]:
    indices = set()
    for name in _split_list(raw):
        if name == "x_main":
            indices.add(0)
        elif name.startswith("x") and name[1:].isdigit():
            indices.add(int(name[1:]))
        else:
            raise ConfigError(f"bad omit entry {name!r}; expected x_main or x<i>")
    return frozenset(indices)


def _parse_structure(raw: str) -> Structure:
    try:
        return Structure(raw)
    except ValueError:
        raise ConfigError(
            f"bad structure {raw!r}; expected 'pairwise' or 'equi'"
        ) from None


def parse_config_file(path: str) -> dict:
    """Read the flat key/value config format into GridConfig field values."""
    values: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in text.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"{path}:{lineno}: unknown key {key!r} "
                f"(known: {', '.join(sorted(CONFIG_KEYS))})"
            )
        try:
            values.update(_convert(key, raw))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _convert(key: str, raw: str) -> dict:
    if key == "n_grid":
        return {"n_grid": tuple(int(v) for v in _split_list(raw))}
    if key == "vif_grid":
        return {"vif_grid": tuple(float(v) for v in _split_list(raw))}
    if key == "beta_main_sweep":
        items = _split_list(raw)
        return {"beta_main_sweep": tuple(float(v) for v in items)} if items else {}
    if key == "betas":
        items = _split_list(raw)
        return {"betas": tuple(float(v) for v in items)} if items else {}
    if key == "structure":
        return {"structure": _parse_structure(raw)}
    if key == "omit":
        return {"omit": _parse_omit_names(raw)}
    if key in ("p", "n_sims", "seed_base"):
        return {key: int(raw)}
    return {key: float(raw)}  # intercept, sigma_eps, c_powval


def _config_from_args(args: argparse.Namespace) -> GridConfig:
    values: dict = {}
    if getattr(args, "config", None):
        values = parse_config_file(args.config)
    if getattr(args, "seed_base", None) is not None:
        values["seed_base"] = args.seed_base
    if getattr(args, "n_sims", None) is not None:
        values["n_sims"] = args.n_sims
    if getattr(args, "structure", None) is not None:
        values["structure"] = _parse_structure(args.structure)
    if getattr(args, "p", None) is not None:
        values["p"] = args.p
    if getattr(args, "omit", None) is not None:
        values["omit"] = _parse_omit_names(args.omit)
    if getattr(args, "sweep_beta_main", False):
        from .runner import EFFECT_SIZE_SWEEP

        values["beta_main_sweep"] = EFFECT_SIZE_SWEEP
    try:
        return GridConfig(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _progress(done: int, total: int, scenario) -> None:
    print(
        f"[{done}/{total}] n={scenario.n} vif={scenario.spec.target_vif:g}",
        file=sys.stderr,
        flush=True,
    )


def _write_outputs(results, manifest, config: GridConfig, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_results_csv(results, os.path.join(out_dir, "results.csv"))
    write_metadata_json(manifest, os.path.join(out_dir, "manifest.json"))
    if len(config.beta_main_sweep) == 1:
        for metric in HEATMAP_METRICS:
            export_heatmap_grid(
                results, metric, os.path.join(out_dir, f"heatmap_{metric}.csv")
            )


def _cmd_run(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    try:
        results, manifest = run_grid(
            config, threads=args.threads, progress=_progress if args.verbose else None
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    except GridExecutionError as exc:
        print(exc, file=sys.stderr)
        return EXIT_SCENARIO
    try:
        _write_outputs(results, manifest, config, args.out)
    except HeatmapShapeError as exc:
        print(f"heatmap export failed: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    print(f"wrote {len(results)} scenario results to {args.out}")
    return EXIT_OK


def _cmd_calibrate(args: argparse.Namespace) -> int:
    from .corrstruct import CorrelationSpec
    from .datagen import Scenario

    scenario = Scenario(
        n=1000,
        spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 1.0, 6),
        n_sims=args.n_sims if args.n_sims is not None else 1000,
        seed_base=args.seed_base if args.seed_base is not None else 0,
    )
    c, achieved = run_calibration(
        scenario, target_pa=args.target_pa, tol=args.tol, threads=args.threads
    )
    print(f"c_powval = {c:.6g} (achieved PA {achieved:.4f}, "
          f"target {args.target_pa}, n_sims {scenario.n_sims})")
    if args.out:
        import json

        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "calibration.json"), "w") as fh:
            json.dump(
                {
                    "c_powval": c,
                    "achieved_pa": achieved,
                    "target_pa": args.target_pa,
                    "n_sims": scenario.n_sims,
                    "seed_base": scenario.seed_base,
                },
                fh,
                sort_keys=True,
                indent=2,
            )
            fh.write("\n")
    return EXIT_OK


CHECK_N_GRID = (1000, 10000)
CHECK_VIF_GRID = (1.0, 2.0, 5.0, 10.0, 25.0, 50.0)


def _cmd_check(args: argparse.Namespace) -> int:
    config = GridConfig(
        n_grid=CHECK_N_GRID,
        vif_grid=CHECK_VIF_GRID,
        n_sims=args.n_sims if args.n_sims is not None else 1000,
        seed_base=args.seed_base if args.seed_base is not None else 0,
    )
    try:
        results, _ = run_grid(config, threads=args.threads)
    except GridExecutionError as exc:
        print(exc, file=sys.stderr)
        return EXIT_SCENARIO
    beta_main = config.resolved_betas()[0]
    print(f"{'scenario':>22}  {'metric':>6}  {'simulated':>10}  "
          f"{'analytic':>10}  {'delta':>9}")
    for r in results:
        rows = (
            ("se", r.se, analytic_se(r.n, r.vif, DEFAULT_SIGMA_EPS)),
            ("mae", r.mae, analytic_mae(r.n, r.vif, DEFAULT_SIGMA_EPS)),
            ("pa", r.pa, analytic_pa(r.n, r.vif, DEFAULT_SIGMA_EPS, config.c_powval)),
            ("power", r.power, analytic_power(r.n, r.vif, DEFAULT_SIGMA_EPS, beta_main)),
        )
        label = f"n={r.n} vif={r.vif:g}"
        for metric, sim, oracle in rows:
            print(f"{label:>22}  {metric:>6}  {sim:>10.4f}  {oracle:>10.4f}  "
                  f"{sim - oracle:>+9.4f}")
    return EXIT_OK


def _cmd_preset(args: argparse.Namespace) -> int:
    try:
        labeled = preset_configs(args.name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for label, config in labeled:
        if args.n_sims is not None:
            from dataclasses import replace

            config = replace(config, n_sims=args.n_sims)
        out_dir = args.out if len(labeled) == 1 else os.path.join(args.out, label)
        try:
            results, manifest = run_grid(
                config,
                threads=args.threads,
                progress=_progress if args.verbose else None,
            )
        except GridExecutionError as exc:
            print(exc, file=sys.stderr)
            return EXIT_SCENARIO
        _write_outputs(results, manifest, config, out_dir)
        print(f"preset {label}: wrote {len(results)} scenario results to {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vifsim",
        description="Collinearity / sample-size OLS simulation engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_grid_flags: bool = True) -> None:
        p.add_argument("--threads", type=int, default=1, metavar="K")
        p.add_argument("--seed-base", type=int, default=None, metavar="INT")
        p.add_argument("--n-sims", type=int, default=None, metavar="INT")
        p.add_argument("--verbose", action="store_true")
        if with_grid_flags:
            p.add_argument("--omit", default=None, metavar="NAMES",
                           help="comma-separated predictor names, e.g. x4")
            p.add_argument("--structure", choices=["pairwise", "equi"], default=None)
            p.add_argument("--p", type=int, default=None, choices=[6, 20])
            p.add_argument("--sweep-beta-main", action="store_true",
                           help="sweep the tracked coefficient over 0..2 by 0.1")

    run_p = sub.add_parser("run", help="run a scenario grid")
    run_p.add_argument("--config", default=None, metavar="PATH")
    run_p.add_argument("--out", required=True, metavar="DIR")
    common(run_p)
    run_p.set_defaults(func=_cmd_run)

    cal_p = sub.add_parser("calibrate", help="calibrate the precision margin")
    cal_p.add_argument("--target-pa", type=float, default=0.80)
    cal_p.add_argument("--tol", type=float, default=0.0025)
    cal_p.add_argument("--out", default=None, metavar="DIR")
    common(cal_p, with_grid_flags=False)
    cal_p.set_defaults(func=_cmd_calibrate)

    check_p = sub.add_parser("check", help="oracle vs simulation deltas")
    common(check_p, with_grid_flags=False)
    check_p.set_defaults(func=_cmd_check)

    preset_p = sub.add_parser("preset", help="run a named experiment")
    preset_p.add_argument("name", choices=list(PRESET_NAMES))
    preset_p.add_argument("--out", required=True, metavar="DIR")
    common(preset_p, with_grid_flags=False)
    preset_p.set_defaults(func=_cmd_preset)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
