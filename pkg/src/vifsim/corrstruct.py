"""Correlation matrices hitting exact variance-inflation targets.

Two structures are supported:

* ``PAIRWISE_MAIN``: only the first two predictors (``x_main`` and ``x1``)
  are correlated.  Inverting VIF = 1/(1 - r^2) gives r = sqrt(1 - 1/VIF).
* ``EQUICORRELATED``: every off-diagonal entry shares a single value r.
  Regressing one predictor on the remaining p - 1 yields
  R2 = (p - 1) r^2 / (1 + (p - 2) r), so r is the positive root of
  (p - 1) r^2 - R2 (p - 2) r - R2 = 0.  The negative root produces an
  invalid correlation whenever R2 > 0.

All functions are pure and safe to call concurrently.  Tolerances quoted
below are absolute unless stated otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Structure",
    "CorrelationSpec",
    "CholeskyError",
    "DEFAULT_VIF_GRID",
    "r_from_vif_pairwise",
    "r_from_vif_equicorrelated",
    "r_for_spec",
    "vif_from_r",
    "build_correlation_matrix",
    "cholesky_lower",
]


class Structure(enum.Enum):
    """Which off-diagonal pattern the correlation matrix follows."""

    PAIRWISE_MAIN = "pairwise"
    EQUICORRELATED = "equi"


#: Canonical VIF grid: 1.0-5.0 by 0.1, 5.2-9.8 by 0.2, 10-20 by 1, 25-50 by 5.
DEFAULT_VIF_GRID: tuple[float, ...] = tuple(
    [round(1.0 + 0.1 * i, 1) for i in range(41)]
    + [round(5.2 + 0.2 * i, 1) for i in range(24)]
    + [float(v) for v in range(10, 21)]
    + [float(v) for v in range(25, 51, 5)]
)


class CholeskyError(ValueError):
    """Factorization failed; ``pivot`` is the 0-based index of the bad pivot."""

    def __init__(self, pivot: int):
        self.pivot = pivot
        super().__init__(f"matrix is not positive definite (pivot {pivot})")


@dataclass(frozen=True)
class CorrelationSpec:
    """Target collinearity level for a set of p predictors.

    ``target_vif`` is the variance inflation factor the tracked predictor
    should attain; ``p`` counts predictors (the intercept is excluded).
    """

    structure: Structure
    target_vif: float
    p: int

    def __post_init__(self) -> None:
        if self.target_vif < 1.0:
            raise ValueError(f"target_vif must be >= 1, got {self.target_vif}")
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")


def r_from_vif_pairwise(target_vif: float) -> float:
    """Correlation between the two linked predictors for a pairwise target.

    Solves 1/(1 - r^2) = VIF for r in [0, 1); round-trips through
    ``vif_from_r`` within 1e-12.
    """
    if target_vif < 1.0:
        raise ValueError(f"target_vif must be >= 1, got {target_vif}")
    return math.sqrt(1.0 - 1.0 / target_vif)


def r_from_vif_equicorrelated(target_vif: float, p: int) -> float:
    """Common off-diagonal r so one predictor's VIF equals the target.

    Positive quadratic root of R2 = (p - 1) r^2 / (1 + (p - 2) r) with
    R2 = 1 - 1/VIF; substituting back recovers R2 within 1e-10.
    """
    if target_vif < 1.0:
        raise ValueError(f"target_vif must be >= 1, got {target_vif}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    r2 = 1.0 - 1.0 / target_vif
    disc = r2 * r2 * (p - 2) ** 2 + 4.0 * r2 * (p - 1)
    return (r2 * (p - 2) + math.sqrt(disc)) / (2.0 * (p - 1))


def r_for_spec(spec: CorrelationSpec) -> float:
    """Off-diagonal value realizing ``spec.target_vif`` under its structure."""
    if spec.structure is Structure.PAIRWISE_MAIN:
        return r_from_vif_pairwise(spec.target_vif)
    return r_from_vif_equicorrelated(spec.target_vif, spec.p)


def vif_from_r(r: float, spec: CorrelationSpec) -> float:
    """VIF of the tracked predictor implied by off-diagonal value ``r``.

    Pairwise: 1/(1 - r^2).  Equicorrelated: 1/(1 - (p-1) r^2 / (1 + (p-2) r)).
    """
    if spec.structure is Structure.PAIRWISE_MAIN:
        if not -1.0 < r < 1.0:
            raise ValueError(f"pairwise r must be in (-1, 1), got {r}")
        return 1.0 / (1.0 - r * r)
    p = spec.p
    if not -1.0 / (p - 1) < r < 1.0:
        raise ValueError(
            f"equicorrelated r must be in (-1/{p - 1}, 1) for a positive "
            f"definite matrix, got {r}"
        )
    r2 = (p - 1) * r * r / (1.0 + (p - 2) * r)
    return 1.0 / (1.0 - r2)


def build_correlation_matrix(spec: CorrelationSpec) -> np.ndarray:
    """p x p correlation matrix whose tracked-predictor VIF is exact.

    Unit diagonal, symmetric, positive definite; the realized VIF (via
    ``vif_from_r`` on the off-diagonal) matches ``spec.target_vif`` within
    1e-9.
    """
    r = r_for_spec(spec)
    if spec.structure is Structure.PAIRWISE_MAIN:
        m = np.eye(spec.p)
        m[0, 1] = m[1, 0] = r
    else:
        m = np.full((spec.p, spec.p), r)
        np.fill_diagonal(m, 1.0)
    return m


def cholesky_lower(m: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L @ L.T == m within 1e-12 (max-abs entrywise).

    ``m`` must be symmetric with unit diagonal.  A non-positive-definite
    input raises :class:`CholeskyError` naming the failing pivot.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.allclose(np.diag(m), 1.0, atol=1e-12):
        raise ValueError("correlation matrix must have a unit diagonal")
    if not np.allclose(m, m.T, atol=1e-12):
        raise ValueError("correlation matrix must be symmetric")
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise CholeskyError(_failing_pivot(m)) from None


def _failing_pivot(m: np.ndarray) -> int:
    # Smallest leading minor that is not positive definite.
    for k in range(1, m.shape[0] + 1):
        try:
            np.linalg.cholesky(m[:k, :k])
        except np.linalg.LinAlgError:
            return k - 1
    return m.shape[0] - 1
