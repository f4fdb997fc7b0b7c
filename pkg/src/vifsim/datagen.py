"""Seeded generation of correlated regression datasets.

Each replicate draws a raw N x p standard-normal design, imposes the
requested correlation by right-multiplying with the transposed Cholesky
factor, draws an error vector, and assembles the outcome

    y = intercept + x @ betas + eps.

Seed discipline: replicate ``i`` of a scenario uses seed
``seed_base + i`` for both the design and the error stream, so the raw
(pre-transform) design and the errors are bit-identical across all
collinearity levels, structures, and coefficient choices.  Differences in
downstream metrics are then attributable to collinearity alone.

The generator is pinned: Philox (4x64) keyed by (seed, stream label) with
numpy's ziggurat normal sampler.  Design and error use distinct key labels
and are therefore independent streams.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .corrstruct import CorrelationSpec, build_correlation_matrix, cholesky_lower

__all__ = [
    "StreamLabel",
    "Scenario",
    "Dataset",
    "GENERATOR_NAME",
    "DEFAULT_SIGMA_EPS",
    "DEFAULT_INTERCEPT",
    "DEFAULT_BETAS",
    "TWENTY_VAR_BETAS",
    "standard_normal_stream",
    "generate_dataset",
    "empirical_vif",
    "write_dataset_csv",
]

#: Pinned generator identity; record alongside the numpy version.
GENERATOR_NAME = "philox4x64-ziggurat"

#: Error standard deviation matching a variance of pi^2 / 3.
DEFAULT_SIGMA_EPS = math.pi / math.sqrt(3.0)

DEFAULT_INTERCEPT = 10.0
DEFAULT_BETAS: tuple[float, ...] = (2.0, 1.3, 1.5, 6.0, 3.0, 1.0)

#: Coefficient preset for the 20-predictor variant (beta_main first).
TWENTY_VAR_BETAS: tuple[float, ...] = (
    2.0, 1.3, 1.5, 6.0, 3.0, 1.0, 6.6, 0.7, 3.1, 2.6,
    7.5, 6.9, 9.0, 1.3, 4.5, 0.8, 2.6, 5.3, 0.8, 2.4,
)


class StreamLabel(enum.Enum):
    """Independent substreams drawn from one seed."""

    DESIGN = 0
    ERROR = 1


def standard_normal_stream(seed: int, label: StreamLabel) -> np.random.Generator:
    """Generator for the pinned standard-normal stream of (seed, label).

    Identical arguments yield a bit-identical sequence across runs,
    platforms, and thread counts; the two labels give statistically
    independent streams (distinct Philox keys).
    """
    key = np.array([seed % 2**64, label.value], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def predictor_name(index: int) -> str:
    """Column name convention: x_main for the tracked predictor, x<i> after."""
    return "x_main" if index == 0 else f"x{index}"


@dataclass(frozen=True)
class Scenario:
    """One grid cell: sample size, collinearity target, coefficients, seeds.

    ``omit`` lists predictor indices dropped from the design before
    fitting; the data are always generated from the full model.
    """

    n: int
    spec: CorrelationSpec
    betas: tuple[float, ...] = DEFAULT_BETAS
    intercept: float = DEFAULT_INTERCEPT
    beta_main_index: int = 0
    sigma_eps: float = DEFAULT_SIGMA_EPS
    n_sims: int = 1000
    seed_base: int = 0
    omit: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(self.betas) != self.spec.p:
            raise ValueError(
                f"betas has length {len(self.betas)} but spec.p = {self.spec.p}"
            )
        if self.n < self.spec.p + 2:
            raise ValueError(
                f"n = {self.n} leaves no residual degrees of freedom "
                f"(need n >= p + 2 = {self.spec.p + 2})"
            )
        if self.sigma_eps < 0:
            raise ValueError(f"sigma_eps must be >= 0, got {self.sigma_eps}")
        if self.n_sims < 1:
            raise ValueError(f"n_sims must be >= 1, got {self.n_sims}")
        if not 0 <= self.beta_main_index < self.spec.p:
            raise ValueError(f"beta_main_index {self.beta_main_index} out of range")
        bad = [j for j in self.omit if not 0 <= j < self.spec.p]
        if bad:
            raise ValueError(f"omit indices out of range: {sorted(bad)}")
        if self.beta_main_index in self.omit:
            raise ValueError("cannot omit the tracked predictor")

    @property
    def beta_main(self) -> float:
        return self.betas[self.beta_main_index]


@dataclass(frozen=True)
class Dataset:
    """One replicate: correlated design, error vector, outcome vector."""

    x: np.ndarray
    eps: np.ndarray
    y: np.ndarray


@lru_cache(maxsize=64)
def _cholesky_for(spec: CorrelationSpec) -> np.ndarray:
    factor = cholesky_lower(build_correlation_matrix(spec))
    factor.flags.writeable = False
    return factor


def generate_dataset(scenario: Scenario, sim_index: int) -> Dataset:
    """Replicate ``sim_index`` of ``scenario`` under the pinned seed scheme.

    Rows of the raw design are transformed by the Cholesky factor (row
    covariance equals the target correlation matrix); the error draw is
    scaled by ``sigma_eps``.
    """
    if not 0 <= sim_index < scenario.n_sims:
        raise ValueError(
            f"sim_index {sim_index} outside [0, {scenario.n_sims})"
        )
    seed = scenario.seed_base + sim_index
    factor = _cholesky_for(scenario.spec)
    z = standard_normal_stream(seed, StreamLabel.DESIGN).standard_normal(
        (scenario.n, scenario.spec.p)
    )
    x = z @ factor.T
    eps = scenario.sigma_eps * standard_normal_stream(
        seed, StreamLabel.ERROR
    ).standard_normal(scenario.n)
    y = scenario.intercept + x @ np.asarray(scenario.betas) + eps
    return Dataset(x=x, eps=eps, y=y)


def empirical_vif(x: np.ndarray, j: int) -> float:
    """Realized VIF of column ``j``: 1 / (1 - R^2) from regressing it
    (with intercept) on the remaining columns.

    Raises on a rank-deficient auxiliary regression (infinite VIF).
    """
    x = np.asarray(x, dtype=float)
    n, p = x.shape
    if not 0 <= j < p:
        raise ValueError(f"column index {j} out of range for p = {p}")
    others = np.delete(x, j, axis=1)
    design = np.column_stack([np.ones(n), others])
    target = x[:, j]
    coef, residual, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < design.shape[1]:
        raise ValueError(
            f"auxiliary regression for column {j} is rank deficient "
            "(perfect collinearity, VIF is infinite)"
        )
    fitted = design @ coef
    rss = float(np.sum((target - fitted) ** 2))
    tss = float(np.sum((target - target.mean()) ** 2))
    if rss <= tss * np.finfo(float).eps:
        raise ValueError(
            f"column {j} is an exact linear combination of the others "
            "(VIF is infinite)"
        )
    return tss / rss


def write_dataset_csv(dataset: Dataset, path) -> None:
    """Debug dump of one replicate: columns x_main, x1, ..., eps, y."""
    p = dataset.x.shape[1]
    header = [predictor_name(j) for j in range(p)] + ["eps", "y"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(dataset.x.shape[0]):
            row = [repr(float(v)) for v in dataset.x[i]]
            row.append(repr(float(dataset.eps[i])))
            row.append(repr(float(dataset.y[i])))
            writer.writerow(row)
