"""Result persistence: flat CSV tables, heatmap matrices, run metadata.

Files are deterministic: UTF-8, LF line endings, rows in enumeration
order, numbers serialized with 6 significant digits (Monte Carlo noise
at 1000 replicates exceeds that resolution).
"""

from __future__ import annotations

import csv
import json
from typing import Sequence

from .corrstruct import Structure
from .datagen import predictor_name
from .metrics import ScenarioResult
from .runner import RunManifest

__all__ = [
    "RESULT_COLUMNS",
    "HEATMAP_METRICS",
    "HeatmapShapeError",
    "write_results_csv",
    "read_results_csv",
    "write_metadata_json",
    "export_heatmap_grid",
]

RESULT_COLUMNS = (
    "n", "vif", "structure", "p", "beta_main", "d", "n_sims", "omit",
    "coverage", "coverage_mcse", "bias", "bias_mcse", "mae", "mae_mcse",
    "pa", "pa_mcse", "power", "power_mcse", "ci_width", "ci_width_mcse",
    "se", "se_mcse",
)

HEATMAP_METRICS = ("pa", "power", "coverage", "mae")


class HeatmapShapeError(ValueError):
    """Results do not cover a full (n, vif) rectangle."""

    def __init__(self, missing: list[tuple[int, float]]):
        self.missing = missing
        cells = ", ".join(f"(n={n}, vif={v:g})" for n, v in missing)
        super().__init__(f"ragged grid, missing cells: {cells}")


def _fmt(value: float) -> str:
    return format(value, ".6g")


def _omit_names(omit: tuple[int, ...]) -> str:
    return ";".join(predictor_name(j) for j in omit)


def _parse_omit(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    indices = []
    for name in text.split(";"):
        indices.append(0 if name == "x_main" else int(name[1:]))
    return tuple(indices)


def _row_for(result: ScenarioResult) -> list[str]:
    return [
        str(result.n),
        _fmt(result.vif),
        result.structure.value,
        str(result.p),
        _fmt(result.beta_main),
        _fmt(result.cohens_d),
        str(result.n_sims),
        _omit_names(result.omit),
        _fmt(result.coverage), _fmt(result.coverage_mcse),
        _fmt(result.bias), _fmt(result.bias_mcse),
        _fmt(result.mae), _fmt(result.mae_mcse),
        _fmt(result.pa), _fmt(result.pa_mcse),
        _fmt(result.power), _fmt(result.power_mcse),
        _fmt(result.ci_width), _fmt(result.ci_width_mcse),
        _fmt(result.se), _fmt(result.se_mcse),
    ]


def write_results_csv(results: Sequence[ScenarioResult], path) -> None:
    """One header line plus one row per scenario, in the given order."""
    if not results:
        raise ValueError("no results to write")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for result in results:
            writer.writerow(_row_for(result))


def read_results_csv(path) -> list[ScenarioResult]:
    """Inverse of :func:`write_results_csv` (within 6-digit precision)."""
    results = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RESULT_COLUMNS:
            raise ValueError(
                f"unexpected header {reader.fieldnames}; expected {list(RESULT_COLUMNS)}"
            )
        for row in reader:
            results.append(
                ScenarioResult(
                    n=int(row["n"]),
                    vif=float(row["vif"]),
                    structure=Structure(row["structure"]),
                    p=int(row["p"]),
                    beta_main=float(row["beta_main"]),
                    cohens_d=float(row["d"]),
                    n_sims=int(row["n_sims"]),
                    omit=_parse_omit(row["omit"]),
                    coverage=float(row["coverage"]),
                    coverage_mcse=float(row["coverage_mcse"]),
                    bias=float(row["bias"]),
                    bias_mcse=float(row["bias_mcse"]),
                    mae=float(row["mae"]),
                    mae_mcse=float(row["mae_mcse"]),
                    pa=float(row["pa"]),
                    pa_mcse=float(row["pa_mcse"]),
                    power=float(row["power"]),
                    power_mcse=float(row["power_mcse"]),
                    ci_width=float(row["ci_width"]),
                    ci_width_mcse=float(row["ci_width_mcse"]),
                    se=float(row["se"]),
                    se_mcse=float(row["se_mcse"]),
                )
            )
    return results


def write_metadata_json(manifest: RunManifest, path) -> None:
    """Manifest as JSON with stable key order."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def export_heatmap_grid(
    results: Sequence[ScenarioResult], metric: str, path
) -> None:
    """CSV matrix of one metric: rows = n ascending, columns = VIF
    ascending, first row and column carrying the axis labels.

    Requires results covering a full (n, vif) rectangle for a single
    structure / coefficient combination; a ragged grid raises
    :class:`HeatmapShapeError` listing the missing cells.
    """
    if metric not in HEATMAP_METRICS:
        raise ValueError(
            f"unknown heatmap metric {metric!r}; expected one of {HEATMAP_METRICS}"
        )
    if not results:
        raise ValueError("no results to export")
    combos = {(r.structure, r.p, r.beta_main, r.omit) for r in results}
    if len(combos) > 1:
        raise ValueError(
            "heatmap export needs a single structure / p / beta_main / omit "
            f"combination, found {len(combos)}"
        )
    ns = sorted({r.n for r in results})
    vifs = sorted({r.vif for r in results})
    cells = {(r.n, r.vif): getattr(r, metric) for r in results}
    missing = [(n, v) for n in ns for v in vifs if (n, v) not in cells]
    if missing:
        raise HeatmapShapeError(missing)

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n\\vif"] + [_fmt(v) for v in vifs])
        for n in ns:
            writer.writerow([str(n)] + [_fmt(cells[(n, v)]) for v in vifs])
