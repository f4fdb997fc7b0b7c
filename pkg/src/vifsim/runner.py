"""Scenario grids: enumeration, deterministic execution, named experiments.

Replicates are the unit of parallelism; every replicate's seed derives
from (seed_base, sim_index) alone and aggregation runs in ascending
sim_index order, so results are independent of the thread count.  A
failing replicate aborts its scenario (no silent skipping, which would
distort the proportion metrics).
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .corrstruct import DEFAULT_VIF_GRID, CorrelationSpec, Structure
from .datagen import (
    DEFAULT_BETAS,
    DEFAULT_INTERCEPT,
    DEFAULT_SIGMA_EPS,
    GENERATOR_NAME,
    TWENTY_VAR_BETAS,
    Scenario,
    generate_dataset,
)
from .metrics import (
    DEFAULT_C_POWVAL,
    MetricSummary,
    ScenarioResult,
    calibrate_c_powval,
    summarize,
)
from .ols import FitSummary, fit_ols

__all__ = [
    "DEFAULT_N_GRID",
    "EFFECT_SIZE_SWEEP",
    "REPLICATION_SWEEP_N_SIMS",
    "GridConfig",
    "RunManifest",
    "ScenarioError",
    "GridExecutionError",
    "enumerate_scenarios",
    "fit_replicates",
    "run_scenario",
    "run_grid",
    "sweep_effect_sizes",
    "run_calibration",
    "preset_configs",
    "PRESET_NAMES",
]

DEFAULT_N_GRID: tuple[int, ...] = (100, 500, 1000, 5000, 10000, 50000, 100000)

#: beta_main values for the effect-size sweep experiment (0 to 2 by 0.1).
EFFECT_SIZE_SWEEP: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(21))

#: Replication counts for the replication-sensitivity experiment.
REPLICATION_SWEEP_N_SIMS: tuple[int, ...] = (1000, 2000, 5000, 10000)


class ScenarioError(RuntimeError):
    """A replicate failed; carries the replicate index."""

    def __init__(self, sim_index: int, cause: BaseException):
        self.sim_index = sim_index
        super().__init__(f"replicate {sim_index} failed: {cause}")


class GridExecutionError(RuntimeError):
    """One or more scenarios aborted during a grid run."""

    def __init__(self, failures: list[tuple[int, str, str]]):
        self.failures = failures
        lines = [f"  scenario {i} ({key}): {msg}" for i, key, msg in failures]
        super().__init__(
            f"{len(failures)} scenario(s) failed:\n" + "\n".join(lines)
        )


@dataclass(frozen=True)
class GridConfig:
    """Declarative description of a scenario grid.

    ``betas = None`` selects the coefficient preset matching ``p`` (6 or
    20 predictors).  ``beta_main_sweep`` holds the tracked-coefficient
    values to run; the remaining coefficients stay fixed.
    """

    vif_grid: tuple[float, ...] = DEFAULT_VIF_GRID
    n_grid: tuple[int, ...] = DEFAULT_N_GRID
    structure: Structure = Structure.PAIRWISE_MAIN
    p: int = 6
    betas: tuple[float, ...] | None = None
    intercept: float = DEFAULT_INTERCEPT
    sigma_eps: float = DEFAULT_SIGMA_EPS
    beta_main_sweep: tuple[float, ...] = (DEFAULT_BETAS[0],)
    n_sims: int = 1000
    seed_base: int = 0
    omit: frozenset[int] = field(default_factory=frozenset)
    c_powval: float = DEFAULT_C_POWVAL

    def resolved_betas(self) -> tuple[float, ...]:
        if self.betas is not None:
            return self.betas
        if self.p == 6:
            return DEFAULT_BETAS
        if self.p == 20:
            return TWENTY_VAR_BETAS
        raise ValueError(
            f"no default coefficient preset for p = {self.p}; set betas explicitly"
        )

    def to_dict(self) -> dict:
        return {
            "vif_grid": list(self.vif_grid),
            "n_grid": list(self.n_grid),
            "structure": self.structure.value,
            "p": self.p,
            "betas": list(self.resolved_betas()),
            "intercept": self.intercept,
            "sigma_eps": self.sigma_eps,
            "beta_main_sweep": list(self.beta_main_sweep),
            "n_sims": self.n_sims,
            "seed_base": self.seed_base,
            "omit": sorted(self.omit),
            "c_powval": self.c_powval,
        }


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a grid run bit-exactly under the
    pinned generator."""

    config: dict
    config_hash: str
    generator: dict
    version: str
    created: str
    scenario_seeds: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "config_hash": self.config_hash,
            "generator": self.generator,
            "version": self.version,
            "created": self.created,
            "scenario_seeds": list(self.scenario_seeds),
        }


def _scenario_for(config: GridConfig, n: int, vif: float, beta_main: float) -> Scenario:
    betas = list(config.resolved_betas())
    betas[0] = beta_main
    return Scenario(
        n=n,
        spec=CorrelationSpec(config.structure, vif, config.p),
        betas=tuple(betas),
        intercept=config.intercept,
        sigma_eps=config.sigma_eps,
        n_sims=config.n_sims,
        seed_base=config.seed_base,
        omit=config.omit,
    )


def enumerate_scenarios(config: GridConfig) -> list[Scenario]:
    """Scenarios in deterministic order: n ascending, then VIF ascending,
    then beta_main ascending.  Invalid (n, vif) pairs are reported with
    their enumeration indices."""
    if not config.n_grid or not config.vif_grid or not config.beta_main_sweep:
        raise ValueError("n_grid, vif_grid, and beta_main_sweep must be non-empty")
    scenarios = []
    bad: list[str] = []
    index = 0
    for n in sorted(config.n_grid):
        for vif in sorted(config.vif_grid):
            for beta_main in sorted(config.beta_main_sweep):
                try:
                    scenarios.append(_scenario_for(config, n, vif, beta_main))
                except ValueError as exc:
                    bad.append(f"index {index} (n={n}, vif={vif}): {exc}")
                index += 1
    if bad:
        raise ValueError("invalid scenarios:\n" + "\n".join(bad))
    return scenarios


def _included_columns(scenario: Scenario) -> tuple[list[int], int]:
    keep = [j for j in range(scenario.spec.p) if j not in scenario.omit]
    return keep, keep.index(scenario.beta_main_index)


def fit_replicates(scenario: Scenario, threads: int = 1) -> list[FitSummary]:
    """All replicate fits of a scenario, in sim_index order.

    Columns listed in ``scenario.omit`` are dropped from the generated
    design before fitting (the data always come from the full model).
    """
    keep, tracked = _included_columns(scenario)
    full = len(keep) == scenario.spec.p

    def one(sim_index: int) -> FitSummary:
        try:
            ds = generate_dataset(scenario, sim_index)
            x = ds.x if full else ds.x[:, keep]
            return fit_ols(x, ds.y, tracked)
        except Exception as exc:
            raise ScenarioError(sim_index, exc) from exc

    if threads <= 1:
        return [one(i) for i in range(scenario.n_sims)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(scenario.n_sims)))


def _result_from(scenario: Scenario, summary: MetricSummary) -> ScenarioResult:
    return ScenarioResult(
        n=scenario.n,
        vif=scenario.spec.target_vif,
        structure=scenario.spec.structure,
        p=scenario.spec.p,
        beta_main=scenario.beta_main,
        cohens_d=(
            scenario.beta_main / scenario.sigma_eps if scenario.sigma_eps > 0
            else float("inf")
        ),
        n_sims=summary.n_sims,
        omit=tuple(sorted(scenario.omit)),
        coverage=summary.coverage,
        coverage_mcse=summary.coverage_mcse,
        bias=summary.bias,
        bias_mcse=summary.bias_mcse,
        mae=summary.mae,
        mae_mcse=summary.mae_mcse,
        pa=summary.pa,
        pa_mcse=summary.pa_mcse,
        power=summary.power,
        power_mcse=summary.power_mcse,
        ci_width=summary.ci_width,
        ci_width_mcse=summary.ci_width_mcse,
        se=summary.se,
        se_mcse=summary.se_mcse,
    )


def run_scenario(
    scenario: Scenario, threads: int = 1, c_powval: float = DEFAULT_C_POWVAL
) -> ScenarioResult:
    """Generate, fit, and summarize one scenario deterministically."""
    fits = fit_replicates(scenario, threads=threads)
    summary = summarize(fits, scenario.beta_main, c_powval)
    return _result_from(scenario, summary)


def sweep_effect_sizes(
    scenario: Scenario,
    betas_main: tuple[float, ...],
    threads: int = 1,
    c_powval: float = DEFAULT_C_POWVAL,
) -> list[ScenarioResult]:
    """Results for several tracked-coefficient values sharing one set of
    designs and errors.

    Changing beta_main adds a known multiple of the tracked column to y,
    which shifts the tracked estimate and its CI by exactly that amount
    and leaves residuals, sigma_hat, and all standard errors unchanged;
    the shifted summaries therefore equal independent reruns within
    floating-point noise (well inside 1e-9).
    """
    base_fits = fit_replicates(scenario, threads=threads)
    _, tracked = _included_columns(scenario)
    coef_pos = tracked + 1  # intercept first
    results = []
    for beta_main in betas_main:
        delta = beta_main - scenario.beta_main
        if delta == 0.0:
            fits = base_fits
        else:
            fits = []
            for f in base_fits:
                coefficients = f.all_coefficients.copy()
                coefficients[coef_pos] += delta
                fits.append(
                    replace(
                        f,
                        beta_hat=f.beta_hat + delta,
                        ci_low=f.ci_low + delta,
                        ci_high=f.ci_high + delta,
                        all_coefficients=coefficients,
                    )
                )
        summary = summarize(fits, beta_main, c_powval)
        betas = list(scenario.betas)
        betas[scenario.beta_main_index] = beta_main
        shifted = replace(scenario, betas=tuple(betas))
        results.append(_result_from(shifted, summary))
    return results


def _scenario_key(s: Scenario) -> str:
    return (
        f"n={s.n},vif={s.spec.target_vif:g},structure={s.spec.structure.value},"
        f"beta_main={s.beta_main:g}"
    )


def _build_manifest(config: GridConfig, scenarios: list[Scenario]) -> RunManifest:
    config_dict = config.to_dict()
    canonical = json.dumps(config_dict, sort_keys=True, separators=(",", ":"))
    return RunManifest(
        config=config_dict,
        config_hash=hashlib.sha256(canonical.encode()).hexdigest(),
        generator={"algorithm": GENERATOR_NAME, "numpy": np.__version__},
        version=__version__,
        created=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        scenario_seeds=tuple(
            {
                "scenario": _scenario_key(s),
                "seed_low": s.seed_base,
                "seed_high": s.seed_base + s.n_sims - 1,
            }
            for s in scenarios
        ),
    )


def run_grid(
    config: GridConfig,
    threads: int = 1,
    progress=None,
) -> tuple[list[ScenarioResult], RunManifest]:
    """Execute every scenario of ``config`` and return results in
    enumeration order plus a reproducibility manifest.

    ``progress`` is an optional callable invoked as
    ``progress(done, total, scenario)`` after each scenario.  Scenario
    failures are collected and raised together as
    :class:`GridExecutionError`; output is identical for identical
    configs regardless of ``threads``.
    """
    scenarios = enumerate_scenarios(config)
    manifest = _build_manifest(config, scenarios)
    sweep = tuple(sorted(config.beta_main_sweep))
    results: list[ScenarioResult] = []
    failures: list[tuple[int, str, str]] = []
    done = 0

    if len(sweep) == 1:
        for index, scenario in enumerate(scenarios):
            try:
                results.append(
                    run_scenario(scenario, threads=threads, c_powval=config.c_powval)
                )
            except ScenarioError as exc:
                failures.append((index, _scenario_key(scenario), str(exc)))
            done += 1
            if progress is not None:
                progress(done, len(scenarios), scenarios[index])
    else:
        # Scenarios sharing (n, vif) reuse one set of designs and errors.
        for group_start in range(0, len(scenarios), len(sweep)):
            group = scenarios[group_start:group_start + len(sweep)]
            try:
                results.extend(
                    sweep_effect_sizes(
                        group[0], sweep, threads=threads, c_powval=config.c_powval
                    )
                )
            except ScenarioError as exc:
                for offset, scenario in enumerate(group):
                    failures.append(
                        (group_start + offset, _scenario_key(scenario), str(exc))
                    )
            done += len(group)
            if progress is not None:
                progress(done, len(scenarios), group[-1])

    if failures:
        raise GridExecutionError(failures)
    return results, manifest


def run_calibration(
    scenario: Scenario | None = None,
    target_pa: float = 0.80,
    tol: float = 0.0025,
    threads: int = 1,
) -> tuple[float, float]:
    """Calibrate the precision margin on the no-collinearity baseline.

    Returns (c_powval, achieved PA).  The default baseline is N = 1000,
    VIF = 1, default coefficients and error scale, 1000 replicates.
    """
    if scenario is None:
        scenario = Scenario(
            n=1000,
            spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 1.0, 6),
        )
    if scenario.spec.target_vif != 1.0:
        raise ValueError("calibration baseline must have VIF = 1")
    fits = fit_replicates(scenario, threads=threads)
    c = calibrate_c_powval(fits, scenario.beta_main, target_pa, tol)
    achieved = float(
        np.mean([
            max(scenario.beta_main - f.ci_low, f.ci_high - scenario.beta_main) <= c
            for f in fits
        ])
    )
    return c, achieved


PRESET_NAMES = ("fig1", "fig2", "fig4", "fig5", "s1", "s3", "s5", "s11")


def preset_configs(name: str) -> list[tuple[str, GridConfig]]:
    """Named experiment presets as (label, config) pairs.

    fig1 / fig2 / fig5 share the main pairwise grid; fig4 is the
    effect-size sweep; s1 the replication-sensitivity study; s3 the
    all-predictors-collinear variant; s5 the 20-predictor variant; s11
    the misspecification study (x4 omitted from the fit).
    """
    main = GridConfig()
    if name in ("fig1", "fig2", "fig5"):
        return [(name, main)]
    if name == "fig4":
        return [(
            name,
            GridConfig(n_grid=(100, 1000, 10000), beta_main_sweep=EFFECT_SIZE_SWEEP),
        )]
    if name == "s1":
        return [
            (f"{name}_nsims{k}", GridConfig(n_grid=(100,), n_sims=k))
            for k in REPLICATION_SWEEP_N_SIMS
        ]
    if name == "s3":
        return [(name, GridConfig(structure=Structure.EQUICORRELATED))]
    if name == "s5":
        return [(name, GridConfig(structure=Structure.EQUICORRELATED, p=20))]
    if name == "s11":
        return [(
            name,
            GridConfig(structure=Structure.EQUICORRELATED, omit=frozenset({4})),
        )]
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
