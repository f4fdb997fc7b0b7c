"""Figure rendering: metric-vs-VIF lines, (VIF x N) heatmaps, power panels.

Curves are keyed by sample size (or effect size) with a monotone deep-red
to deep-blue palette by rank; shaded bands show +/- 1 Monte Carlo
standard error.  Proportion metrics are drawn on a 0-100% scale.
Rendering is read-only and deterministic given identical inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import matplotlib
import numpy as np

from .data import HeatmapMatrix, ResultsTable, load_heatmap, load_results

__all__ = ["PlotSpec", "plot_lines", "plot_heatmap", "plot_power_panels"]

#: Metrics reported as proportions, displayed in percent.
PERCENT_METRICS = frozenset({"coverage", "pa", "power"})

METRIC_LABELS = {
    "coverage": "coverage (%)",
    "pa": "precision assurance (%)",
    "power": "traditional power (%)",
    "mae": "mean absolute error",
    "bias": "bias",
    "ci_width": "mean 95% CI width",
    "se": "mean standard error",
}

_ALLOWED_SUFFIXES = (".png", ".svg")


@dataclass(frozen=True)
class PlotSpec:
    """One figure request: inputs, metric, output path, color bounds."""

    inputs: tuple[str, ...]
    metric: str | None
    out: str
    vmin: float | None = None
    vmax: float | None = None
    extra_inputs: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        suffix = os.path.splitext(self.out)[1].lower()
        if suffix not in _ALLOWED_SUFFIXES:
            raise ValueError(
                f"unsupported output format {suffix!r}; use one of "
                f"{_ALLOWED_SUFFIXES}"
            )


def _pyplot():
    # Deferred so importing the package never selects a backend; the CLI
    # pins Agg and headless environments fall back to it automatically.
    import matplotlib.pyplot as plt

    return plt


def _palette(count: int) -> list:
    # Deep red (rank 0, smallest key) through deep blue (largest key).
    cmap = matplotlib.colormaps["coolwarm"]
    if count == 1:
        return [cmap(1.0)]
    return [cmap(1.0 - i / (count - 1)) for i in range(count)]


def _scale(metric: str) -> float:
    return 100.0 if metric in PERCENT_METRICS else 1.0


def _metric_label(metric: str) -> str:
    return METRIC_LABELS.get(metric, metric)


def _draw_lines(ax, table: ResultsTable, metric: str, dashed: bool) -> None:
    series = table.series_by_n(metric)
    colors = _palette(len(series))
    scale = _scale(metric)
    for color, (n, (vifs, values, mcses)) in zip(colors, series.items()):
        style = "--" if dashed else "-"
        label = f"N={n:,}" + (" (2)" if dashed else "")
        ax.plot(vifs, values * scale, style, color=color, label=label)
        ax.fill_between(
            vifs,
            (values - mcses) * scale,
            (values + mcses) * scale,
            color=color,
            alpha=0.2,
            linewidth=0,
        )


def plot_lines(spec: PlotSpec) -> str:
    """Metric vs VIF, one curve per sample size, +/- 1 mc_se band.

    A second input CSV, when given, is overlaid with dashed lines.
    """
    if spec.metric is None:
        raise ValueError("lines figures need --metric")
    table = load_results(spec.inputs[0])
    table.metric_column(spec.metric)
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        _draw_lines(ax, table, spec.metric, dashed=False)
        for extra in spec.extra_inputs:
            _draw_lines(ax, load_results(extra), spec.metric, dashed=True)
        ax.set_xlabel("VIF")
        ax.set_ylabel(_metric_label(spec.metric))
        if spec.metric in PERCENT_METRICS:
            ax.set_ylim(-2, 102)
        if spec.vmin is not None or spec.vmax is not None:
            ax.set_ylim(spec.vmin, spec.vmax)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(spec.out)
    finally:
        plt.close(fig)
    return spec.out


def plot_heatmap(spec: PlotSpec) -> str:
    """Cell-colored (VIF x N) matrix from an exported heatmap CSV."""
    matrix: HeatmapMatrix = load_heatmap(spec.inputs[0])
    metric = spec.metric or ""
    scale = _scale(metric)
    values = matrix.values * scale
    if spec.vmin is not None:
        vmin = spec.vmin
    else:
        vmin = 0.0 if metric in PERCENT_METRICS else float(values.min())
    if spec.vmax is not None:
        vmax = spec.vmax
    else:
        vmax = 100.0 if metric in PERCENT_METRICS else float(values.max())
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    try:
        image = ax.imshow(
            values,
            origin="lower",
            aspect="auto",
            cmap="viridis",
            vmin=vmin,
            vmax=vmax,
        )
        step = max(1, len(matrix.vif_labels) // 20)
        ticks = np.arange(0, len(matrix.vif_labels), step)
        ax.set_xticks(ticks)
        ax.set_xticklabels(
            [f"{matrix.vif_labels[i]:g}" for i in ticks], fontsize=7, rotation=90
        )
        ax.set_yticks(np.arange(len(matrix.n_labels)))
        ax.set_yticklabels([f"{n:,}" for n in matrix.n_labels], fontsize=8)
        ax.set_xlabel("VIF")
        ax.set_ylabel("sample size")
        label = _metric_label(metric) if metric else "value"
        fig.colorbar(image, ax=ax, label=label)
        fig.tight_layout()
        fig.savefig(spec.out)
    finally:
        plt.close(fig)
    return spec.out


def plot_power_panels(spec: PlotSpec) -> str:
    """One panel per sample size, one power-vs-VIF curve per effect size."""
    metric = spec.metric or "power"
    table = load_results(spec.inputs[0])
    panels = table.sweep_groups(metric)
    scale = _scale(metric)
    plt = _pyplot()
    fig, axes = plt.subplots(
        1, len(panels), figsize=(3.6 * len(panels), 3.6), sharey=True
    )
    if len(panels) == 1:
        axes = [axes]
    try:
        for ax, (n, curves) in zip(axes, panels.items()):
            colors = _palette(len(curves))
            for color, (beta, (vifs, values)) in zip(colors, sorted(curves.items())):
                d = table.cohens_d_for(beta)
                ax.plot(vifs, values * scale, color=color,
                        label=f"d={d:.2f}", linewidth=1.2)
            ax.set_title(f"N = {n:,}", fontsize=10)
            ax.set_xlabel("VIF")
            if metric in PERCENT_METRICS:
                ax.set_ylim(-2, 102)
        axes[0].set_ylabel(_metric_label(metric))
        axes[-1].legend(fontsize=6, ncol=2)
        fig.tight_layout()
        fig.savefig(spec.out)
    finally:
        plt.close(fig)
    return spec.out
