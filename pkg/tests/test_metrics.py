"""Tests for outcome aggregation and precision-margin calibration."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vifsim.corrstruct import CorrelationSpec, Structure
from vifsim.datagen import Scenario
from vifsim.metrics import (
    DEFAULT_C_POWVAL,
    CalibrationError,
    calibrate_c_powval,
    covers,
    has_precision_assurance,
    has_traditional_power,
    summarize,
)
from vifsim.ols import FitSummary
from vifsim.runner import fit_replicates, run_scenario


def make_fit(beta_hat, half_width, df=100):
    se = half_width / 1.984
    return FitSummary(
        beta_hat=beta_hat,
        se=se,
        ci_low=beta_hat - half_width,
        ci_high=beta_hat + half_width,
        df=df,
        sigma_hat=1.0,
        all_coefficients=np.array([0.0, beta_hat]),
    )


class TestIndicators:
    def test_covers_inside(self):
        assert covers(make_fit(2.0, 0.1), 2.0)

    def test_covers_outside(self):
        fit = make_fit(2.155, 0.145)  # CI [2.01, 2.30]
        assert not covers(fit, 2.0)

    def test_covers_closed_boundary(self):
        fit = make_fit(2.1, 0.1)  # ci_low == 2.0
        assert covers(fit, 2.0)

    def test_pa_contained(self):
        fit = make_fit(1.975, 0.125)  # CI [1.85, 2.10] in [1.811, 2.189]
        assert has_precision_assurance(fit, 2.0, 0.189)

    def test_pa_not_contained(self):
        fit = make_fit(1.85, 0.15)  # CI [1.70, 2.00]
        assert not has_precision_assurance(fit, 2.0, 0.189)

    def test_pa_impossible_when_wider_than_band(self):
        # Width 0.40 > 2 * 0.189 regardless of centering.
        for center in (1.9, 2.0, 2.1):
            assert not has_precision_assurance(make_fit(center, 0.20), 2.0, 0.189)

    def test_power_excludes_zero(self):
        assert has_traditional_power(make_fit(1.0, 0.5))

    def test_power_includes_zero(self):
        assert not has_traditional_power(make_fit(0.1, 0.2))

    def test_power_sign_agnostic(self):
        assert has_traditional_power(make_fit(-1.2, 0.8))


class TestSummarize:
    def test_single_perfect_fit(self):
        summary = summarize([make_fit(2.0, 0.1)], 2.0, 0.189)
        assert summary.coverage == 1.0
        assert summary.pa == 1.0
        assert summary.power == 1.0
        assert summary.bias == 0.0
        assert summary.mae == 0.0
        assert summary.ci_width == pytest.approx(0.2)

    def test_proportion_mcse_formula(self):
        fits = [make_fit(2.0, 0.1)] * 3 + [make_fit(5.0, 0.1)]
        summary = summarize(fits, 2.0, 0.189)
        assert summary.coverage == 0.75
        assert summary.coverage_mcse == pytest.approx(
            np.sqrt(0.75 * 0.25 / 4), abs=1e-15
        )

    def test_mean_mcse_formula(self):
        fits = [make_fit(b, 0.1) for b in (1.9, 2.0, 2.1, 2.2)]
        summary = summarize(fits, 2.0, 0.189)
        errors = np.array([-0.1, 0.0, 0.1, 0.2])
        assert summary.bias == pytest.approx(errors.mean())
        assert summary.bias_mcse == pytest.approx(errors.std(ddof=1) / 2.0)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            summarize([], 2.0, 0.189)

    def test_bad_margin_rejected(self):
        with pytest.raises(ValueError, match="c_powval"):
            summarize([make_fit(2.0, 0.1)], 2.0, 0.0)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=-5, max_value=5),
                st.floats(min_value=1e-3, max_value=2.0),
            ),
            min_size=1,
            max_size=40,
        )
    )
    def test_mae_dominates_bias_and_proportions_in_range(self, params):
        fits = [make_fit(b, w) for b, w in params]
        summary = summarize(fits, 1.0, 0.189)
        assert summary.mae >= abs(summary.bias) - 1e-12
        for q in (summary.coverage, summary.pa, summary.power):
            assert 0.0 <= q <= 1.0

    def test_pa_zero_when_all_widths_exceed_band(self):
        fits = [make_fit(2.0 + 0.01 * i, 0.25) for i in range(20)]
        summary = summarize(fits, 2.0, 0.189)
        assert summary.pa == 0.0

    def test_bias_shrinks_with_more_replicates(self):
        # Finite-sample bias at a small sample is Monte Carlo noise, so a
        # larger replicate count must not sit further from zero than the
        # smaller count by more than the combined uncertainty.
        spec = CorrelationSpec(Structure.PAIRWISE_MAIN, 50.0, 6)
        small = run_scenario(Scenario(n=100, spec=spec, n_sims=1000))
        large = run_scenario(Scenario(n=100, spec=spec, n_sims=10000))
        combined = np.hypot(small.bias_mcse, large.bias_mcse)
        assert (
            abs(large.bias) < abs(small.bias)
            or abs(abs(large.bias) - abs(small.bias)) < 2 * combined
        )


class TestCalibrateCPowval:
    def baseline_fits(self, n_sims=400):
        s = Scenario(
            n=1000,
            spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 1.0, 6),
            n_sims=n_sims,
        )
        return fit_replicates(s), s.beta_main

    def test_hits_target_within_tolerance(self):
        fits, beta = self.baseline_fits()
        c = calibrate_c_powval(fits, beta, target_pa=0.80, tol=0.0025)
        achieved = np.mean([
            has_precision_assurance(f, beta, c) for f in fits
        ])
        assert abs(achieved - 0.80) <= 0.0025

    def test_huge_margin_gives_full_pa(self):
        fits, beta = self.baseline_fits(n_sims=50)
        big = max(
            max(beta - f.ci_low, f.ci_high - beta) for f in fits
        ) + 1.0
        assert all(has_precision_assurance(f, beta, big) for f in fits)

    def test_margin_below_smallest_halfwidth_gives_zero_pa(self):
        fits, beta = self.baseline_fits(n_sims=50)
        tiny = min(f.ci_high - f.ci_low for f in fits) / 2.0 * 0.5
        assert not any(has_precision_assurance(f, beta, tiny) for f in fits)

    def test_unreachable_target_reports_bracket(self):
        fits = [make_fit(2.0, 0.1), make_fit(2.0, 0.2)]  # PA steps: 0, .5, 1
        with pytest.raises(CalibrationError, match="bracketed") as excinfo:
            calibrate_c_powval(fits, 2.0, target_pa=0.75, tol=0.01)
        c_lo, pa_lo, c_hi, pa_hi = excinfo.value.bracket
        assert pa_lo < 0.75 < pa_hi
        assert c_lo <= c_hi

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            calibrate_c_powval([], 2.0)
        with pytest.raises(ValueError):
            calibrate_c_powval([make_fit(2.0, 0.1)], 2.0, target_pa=1.5)


def test_default_margin_value():
    assert DEFAULT_C_POWVAL == 0.189
