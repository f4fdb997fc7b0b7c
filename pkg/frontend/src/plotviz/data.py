"""Loading and validation of vifsim CSV exports.

Two shapes are consumed: the flat results table (one row per scenario,
``<metric>`` / ``<metric>_mcse`` column pairs) and the heatmap matrix
(first row and column carry the VIF / N axis labels).  Rendering never
modifies the inputs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MetricNotFoundError",
    "SweepShapeError",
    "ResultsTable",
    "HeatmapMatrix",
    "load_results",
    "load_heatmap",
]


class MetricNotFoundError(ValueError):
    """Requested metric is not a column of the table."""

    def __init__(self, metric: str, available: tuple[str, ...]):
        self.metric = metric
        self.available = available
        super().__init__(
            f"metric {metric!r} not in table; available metrics: "
            f"{', '.join(available)}"
        )


class SweepShapeError(ValueError):
    """Sweep table is missing (n, beta_main) combinations."""

    def __init__(self, missing: list[tuple[int, float]]):
        self.missing = missing
        pairs = ", ".join(f"(n={n}, beta_main={b:g})" for n, b in missing)
        super().__init__(f"sweep rows missing for: {pairs}")


@dataclass(frozen=True)
class ResultsTable:
    """Rows of a results CSV with typed columns."""

    columns: tuple[str, ...]
    rows: list[dict]

    @property
    def metrics(self) -> tuple[str, ...]:
        return tuple(
            c for c in self.columns
            if f"{c}_mcse" in self.columns
        )

    def metric_column(self, metric: str) -> str:
        if metric not in self.metrics:
            raise MetricNotFoundError(metric, self.metrics)
        return metric

    def series_by_n(self, metric: str, beta_main: float | None = None):
        """Per sample size: (vif array, value array, mcse array), VIF
        ascending; optionally filtered to one beta_main."""
        self.metric_column(metric)
        rows = self.rows
        if beta_main is not None:
            rows = [r for r in rows if r["beta_main"] == beta_main]
        out = {}
        for n in sorted({int(r["n"]) for r in rows}):
            sub = sorted(
                (r for r in rows if int(r["n"]) == n), key=lambda r: r["vif"]
            )
            out[n] = (
                np.array([r["vif"] for r in sub]),
                np.array([r[metric] for r in sub]),
                np.array([r[f"{metric}_mcse"] for r in sub]),
            )
        return out

    def sweep_groups(self, metric: str):
        """Panels for a (n, vif, beta_main) sweep: {n: {beta: (vif, value)}}.

        Every (n, beta_main) pair must cover the full VIF set; absent
        combinations raise :class:`SweepShapeError`.
        """
        self.metric_column(metric)
        vif_all = sorted({r["vif"] for r in self.rows})
        betas = sorted({r["beta_main"] for r in self.rows})
        ns = sorted({int(r["n"]) for r in self.rows})
        missing = []
        panels: dict[int, dict[float, tuple[np.ndarray, np.ndarray]]] = {}
        for n in ns:
            panels[n] = {}
            for beta in betas:
                sub = sorted(
                    (
                        r for r in self.rows
                        if int(r["n"]) == n and r["beta_main"] == beta
                    ),
                    key=lambda r: r["vif"],
                )
                if [r["vif"] for r in sub] != vif_all:
                    missing.append((n, beta))
                    continue
                panels[n][beta] = (
                    np.array([r["vif"] for r in sub]),
                    np.array([r[metric] for r in sub]),
                )
        if missing:
            raise SweepShapeError(missing)
        return panels

    def cohens_d_for(self, beta_main: float) -> float:
        for r in self.rows:
            if r["beta_main"] == beta_main:
                return float(r["d"])
        raise KeyError(beta_main)


@dataclass(frozen=True)
class HeatmapMatrix:
    """Dense metric matrix with axis labels (n rows, VIF columns)."""

    n_labels: tuple[int, ...]
    vif_labels: tuple[float, ...]
    values: np.ndarray


_TEXT_COLUMNS = {"structure", "omit"}


def load_results(path) -> ResultsTable:
    """Parse a results CSV; numeric columns become floats."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames:
            raise ValueError(f"{path}: empty CSV, nothing to plot")
        columns = tuple(reader.fieldnames)
        rows = []
        for raw in reader:
            row: dict = {}
            for key, value in raw.items():
                row[key] = value if key in _TEXT_COLUMNS else float(value)
            rows.append(row)
    if not rows:
        raise ValueError(f"{path}: no data rows, nothing to plot")
    for required in ("n", "vif"):
        if required not in columns:
            raise ValueError(f"{path}: missing required column {required!r}")
    return ResultsTable(columns=columns, rows=rows)


def load_heatmap(path) -> HeatmapMatrix:
    """Parse a heatmap CSV written with axis labels in row/column one."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows) < 2:
        raise ValueError(f"{path}: empty heatmap CSV")
    header, body = rows[0], rows[1:]
    width = len(header)
    bad = [i for i, row in enumerate(body, start=2) if len(row) != width]
    if bad:
        raise ValueError(
            f"{path}: ragged matrix, rows with wrong width at lines {bad}"
        )
    vif_labels = tuple(float(v) for v in header[1:])
    n_labels = tuple(int(row[0]) for row in body)
    values = np.array([[float(cell) for cell in row[1:]] for row in body])
    return HeatmapMatrix(n_labels=n_labels, vif_labels=vif_labels, values=values)
