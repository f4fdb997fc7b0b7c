"""Closed-form cross-checks for the simulation.

These population-moment approximations act as independent sanity rails,
not as result substitutes: they use the normal critical value 1.95996 and
ignore degrees-of-freedom corrections, so finite-sample simulations are
expected to agree only within the documented tolerances (3% on the mean
standard error at moderate N, wider at N in the low hundreds).
"""

from __future__ import annotations

import math

__all__ = [
    "Z_CRIT",
    "analytic_se",
    "analytic_mae",
    "analytic_pa",
    "analytic_power",
    "ovb_bias_equicorrelated",
]

#: Two-sided 95% normal critical value used by all oracles.
Z_CRIT = 1.95996


def _phi(x: float) -> float:
    """Standard normal CDF."""
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def analytic_se(n: int, vif: float, sigma_eps: float) -> float:
    """Population approximation of the tracked coefficient's standard
    error: sigma_eps * sqrt(vif / n)."""
    if n <= 0:
        raise ValueError(f"n must be > 0, got {n}")
    return sigma_eps * math.sqrt(vif / n)


def analytic_mae(n: int, vif: float, sigma_eps: float) -> float:
    """Mean absolute deviation of a centered normal with the analytic SE:
    analytic_se * sqrt(2 / pi)."""
    return analytic_se(n, vif, sigma_eps) * math.sqrt(2.0 / math.pi)


def analytic_pa(n: int, vif: float, sigma_eps: float, c: float) -> float:
    """Probability the 95% CI falls inside a +/- c band around the truth.

    With s the analytic SE and h = Z_CRIT * s the half-width: 0 when
    h >= c (containment impossible), else 2 Phi((c - h) / s) - 1.
    """
    s = analytic_se(n, vif, sigma_eps)
    h = Z_CRIT * s
    if h >= c:
        return 0.0
    return 2.0 * _phi((c - h) / s) - 1.0

def analytic_power(n: int, vif: float, sigma_eps: float, beta: float) -> float:
    """Normal approximation of the probability the 95% CI excludes 0."""
    s = analytic_se(n, vif, sigma_eps)
    z = abs(beta) / s
    return _phi(z - Z_CRIT) + _phi(-z - Z_CRIT)


def ovb_bias_equicorrelated(
    r: float, beta_omitted: float, k_included: int
) -> float:
    """Expected shift of every included coefficient when one predictor of
    an equicorrelated block is dropped: beta_omitted * r / (1 + (k - 1) r).

    The factor is the population regression coefficient of the omitted
    predictor on each of the ``k_included`` retained ones.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must be in [0, 1), got {r}")
    if k_included < 1:
        raise ValueError(f"k_included must be >= 1, got {k_included}")
    return beta_omitted * r / (1.0 + (k_included - 1) * r)
