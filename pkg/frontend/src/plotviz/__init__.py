"""Figure rendering for vifsim result tables."""

__version__ = "0.1.0"

from .data import (  # noqa: F401
    HeatmapMatrix,
    MetricNotFoundError,
    ResultsTable,
    SweepShapeError,
    load_heatmap,
    load_results,
)
from .figures import (  # noqa: F401
    PlotSpec,
    plot_heatmap,
    plot_lines,
    plot_power_panels,
)
