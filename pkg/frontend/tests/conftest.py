"""Golden CSV fixtures produced through the vifsim command-line interface.

The plotting package consumes the simulator only through its exported
files, so fixtures shell out to ``python -m vifsim run``.
"""

import subprocess
import sys

import matplotlib
import pytest

matplotlib.use("Agg")

GRID_CONFIG = """\
n_grid = 500, 1000
vif_grid = 2.0, 10.0
n_sims = 200
"""

SWEEP_CONFIG = """\
n_grid = 100, 1000, 10000
vif_grid = 1.0, 5.0, 10.0
n_sims = 40
beta_main_sweep = 0.0, 1.0, 2.0
"""


def _run_vifsim(config_text: str, workdir, name: str):
    config = workdir / f"{name}.cfg"
    config.write_text(config_text)
    out = workdir / name
    subprocess.run(
        [sys.executable, "-m", "vifsim", "run",
         "--config", str(config), "--out", str(out)],
        check=True,
        capture_output=True,
    )
    return out


@pytest.fixture(scope="session")
def golden(tmp_path_factory):
    """Paths of golden outputs: a plain 4-scenario grid and a sweep."""
    root = tmp_path_factory.mktemp("golden")
    grid_dir = _run_vifsim(GRID_CONFIG, root, "grid")
    sweep_dir = _run_vifsim(SWEEP_CONFIG, root, "sweep")
    return {
        "results": grid_dir / "results.csv",
        "heatmap_pa": grid_dir / "heatmap_pa.csv",
        "heatmap_mae": grid_dir / "heatmap_mae.csv",
        "sweep": sweep_dir / "results.csv",
    }
