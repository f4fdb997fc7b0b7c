"""Ordinary least squares with intercept and per-replicate inference.

The solver runs an orthogonal-triangular (QR) decomposition of the
intercept-augmented design via LAPACK ``dgels``; normal equations are
avoided because squaring the condition number is unnecessary at high
collinearity.  Standard errors come from the triangular factor:
se_j^2 = sigma_hat^2 * [(X'X)^-1]_jj with sigma_hat^2 = RSS / (n - k - 1),
and confidence intervals use the two-sided Student-t critical value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats
from scipy.linalg import lapack, solve_triangular

__all__ = [
    "FitSummary",
    "SingularFitError",
    "t_critical",
    "fit_ols",
]

CI_LEVEL = 0.975  # two-sided 95%


class SingularFitError(ValueError):
    """The augmented design is rank deficient."""


@dataclass(frozen=True)
class FitSummary:
    """Inference summary for the tracked coefficient of one replicate."""

    beta_hat: float
    se: float
    ci_low: float
    ci_high: float
    df: int
    sigma_hat: float
    all_coefficients: np.ndarray  # intercept first, then predictors


@lru_cache(maxsize=None)
def t_critical(df: int, level: float = CI_LEVEL) -> float:
    """Student-t quantile at probability ``level`` with ``df`` degrees of
    freedom; converges to the normal quantile as df grows."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    return float(stats.t.ppf(level, df))


@lru_cache(maxsize=None)
def _gels_lwork(m: int, ncols: int) -> int:
    lwork, info = lapack.dgels_lwork(m, ncols, 1)
    if info != 0:
        raise RuntimeError(f"dgels workspace query failed (info={info})")
    return int(lwork)


def fit_ols(x: np.ndarray, y: np.ndarray, tracked_index: int = 0) -> FitSummary:
    """Fit y on an intercept plus the columns of ``x`` and summarize the
    coefficient at ``tracked_index`` (position among the predictors).

    Raises :class:`SingularFitError` on rank deficiency and ``ValueError``
    when there are no residual degrees of freedom.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n, k = x.shape
    if y.shape != (n,):
        raise ValueError(f"y has shape {y.shape}, expected ({n},)")
    if not 0 <= tracked_index < k:
        raise ValueError(f"tracked_index {tracked_index} out of range for k = {k}")
    ncols = k + 1
    if n <= ncols:
        raise ValueError(
            f"n = {n} leaves no residual degrees of freedom for {k} predictors"
        )

    design = np.empty((n, ncols), order="F")
    design[:, 0] = 1.0
    design[:, 1:] = x
    qr, sol, info = lapack.dgels(
        design, y, lwork=_gels_lwork(n, ncols), overwrite_a=True
    )
    if info < 0:
        raise RuntimeError(f"dgels failed (info={info})")
    rdiag = np.abs(np.diag(qr[:ncols, :ncols]))
    if info > 0 or rdiag.min() <= rdiag.max() * n * np.finfo(float).eps:
        raise SingularFitError(
            "design matrix is rank deficient (collinear columns)"
        )

    coefficients = sol[:ncols].copy()
    rss = float(sol[ncols:] @ sol[ncols:])
    df = n - ncols
    sigma_hat = np.sqrt(rss / df)

    # [(X'X)^-1]_jj from the triangular factor: row sums of squares of R^-1.
    r_inv = solve_triangular(qr[:ncols, :ncols], np.eye(ncols), lower=False)
    xtx_inv_diag = np.einsum("ij,ij->i", r_inv, r_inv)

    j = tracked_index + 1  # skip the intercept column
    beta_hat = float(coefficients[j])
    se = float(sigma_hat * np.sqrt(xtx_inv_diag[j]))
    half = t_critical(df) * se
    return FitSummary(
        beta_hat=beta_hat,
        se=se,
        ci_low=beta_hat - half,
        ci_high=beta_hat + half,
        df=df,
        sigma_hat=float(sigma_hat),
        all_coefficients=coefficients,
    )
