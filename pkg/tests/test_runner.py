"""Tests for grid enumeration, deterministic execution, and sweeps."""

import dataclasses

import numpy as np
import pytest

from vifsim.corrstruct import CorrelationSpec, Structure
from vifsim.datagen import Scenario, TWENTY_VAR_BETAS
from vifsim.runner import (
    DEFAULT_N_GRID,
    EFFECT_SIZE_SWEEP,
    GridConfig,
    GridExecutionError,
    REPLICATION_SWEEP_N_SIMS,
    ScenarioError,
    enumerate_scenarios,
    preset_configs,
    run_calibration,
    run_grid,
    run_scenario,
    sweep_effect_sizes,
)

from reference_tables import TWENTY_VAR_REFERENCE


def small_config(**kw):
    defaults = dict(
        n_grid=(100, 200),
        vif_grid=(1.0, 5.0),
        n_sims=50,
    )
    defaults.update(kw)
    return GridConfig(**defaults)


class TestEnumerateScenarios:
    def test_default_count_is_grid_product(self):
        config = GridConfig()
        scenarios = enumerate_scenarios(config)
        assert len(scenarios) == len(config.vif_grid) * len(DEFAULT_N_GRID)

    def test_single_cell(self):
        config = GridConfig(n_grid=(500,), vif_grid=(2.0,))
        scenarios = enumerate_scenarios(config)
        assert len(scenarios) == 1
        assert scenarios[0].n == 500
        assert scenarios[0].spec.target_vif == 2.0

    def test_sweep_multiplies_count(self):
        config = small_config(beta_main_sweep=(0.0, 1.0, 2.0))
        assert len(enumerate_scenarios(config)) == 2 * 2 * 3

    def test_ordering_n_then_vif_then_beta(self):
        config = small_config(beta_main_sweep=(2.0, 0.0))
        keys = [
            (s.n, s.spec.target_vif, s.beta_main)
            for s in enumerate_scenarios(config)
        ]
        assert keys == sorted(keys)

    def test_invalid_cells_reported_with_indices(self):
        config = small_config(n_grid=(5, 100))
        with pytest.raises(ValueError, match="index 0"):
            enumerate_scenarios(config)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            enumerate_scenarios(small_config(vif_grid=()))

    def test_twenty_var_preset_coefficients(self):
        config = GridConfig(structure=Structure.EQUICORRELATED, p=20)
        assert config.resolved_betas() == TWENTY_VAR_REFERENCE
        assert TWENTY_VAR_BETAS == TWENTY_VAR_REFERENCE

    def test_unknown_p_needs_explicit_betas(self):
        with pytest.raises(ValueError, match="preset"):
            enumerate_scenarios(small_config(p=4))


class TestRunScenario:
    def test_replicate_failure_carries_sim_index(self, monkeypatch):
        import vifsim.runner as runner_mod

        real = runner_mod.fit_ols

        def flaky(x, y, tracked):
            if flaky.count == 3:
                raise RuntimeError("synthetic failure")
            flaky.count += 1
            return real(x, y, tracked)

        flaky.count = 0
        monkeypatch.setattr(runner_mod, "fit_ols", flaky)
        s = Scenario(
            n=100, spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 1.0, 6), n_sims=10
        )
        with pytest.raises(ScenarioError, match="replicate 3") as excinfo:
            run_scenario(s)
        assert excinfo.value.sim_index == 3

    def test_thread_count_does_not_change_results(self):
        s = Scenario(
            n=300, spec=CorrelationSpec(Structure.EQUICORRELATED, 10.0, 6), n_sims=64
        )
        assert run_scenario(s, threads=1) == run_scenario(s, threads=4)

    def test_omission_drops_columns_before_fitting(self):
        s = Scenario(
            n=5000,
            spec=CorrelationSpec(Structure.EQUICORRELATED, 2.0, 6),
            n_sims=100,
            omit=frozenset({4}),
        )
        result = run_scenario(s)
        # Omitting a correlated, truly relevant predictor biases the
        # tracked coefficient upward.
        assert result.bias > 0.3
        assert result.omit == (4,)

    def test_descriptor_fields(self):
        s = Scenario(
            n=200, spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 2.0, 6), n_sims=20
        )
        result = run_scenario(s)
        assert (result.n, result.vif, result.p) == (200, 2.0, 6)
        assert result.structure is Structure.PAIRWISE_MAIN
        assert result.beta_main == 2.0
        assert result.cohens_d == pytest.approx(2.0 / s.sigma_eps)
        assert result.n_sims == 20

    def test_monotonic_se_in_vif_and_n(self):
        cells = {}
        for n in (100, 1000):
            for vif in (1.0, 5.0, 25.0):
                s = Scenario(
                    n=n,
                    spec=CorrelationSpec(Structure.PAIRWISE_MAIN, vif, 6),
                    n_sims=300,
                )
                cells[(n, vif)] = run_scenario(s)
        for n in (100, 1000):
            ses = [cells[(n, v)] for v in (1.0, 5.0, 25.0)]
            for a, b in zip(ses, ses[1:]):
                assert b.se >= a.se - 2 * np.hypot(a.se_mcse, b.se_mcse)
        for vif in (1.0, 5.0, 25.0):
            hi, lo = cells[(100, vif)], cells[(1000, vif)]
            assert lo.se <= hi.se + 2 * np.hypot(hi.se_mcse, lo.se_mcse)


class TestSweepEffectSizes:
    def test_matches_independent_full_reruns(self):
        spec = CorrelationSpec(Structure.PAIRWISE_MAIN, 5.0, 6)
        base = Scenario(n=400, spec=spec, n_sims=200)
        swept = sweep_effect_sizes(base, (0.0, 0.7, 2.0))
        for result in swept:
            betas = list(base.betas)
            betas[0] = result.beta_main
            rerun = run_scenario(
                dataclasses.replace(base, betas=tuple(betas))
            )
            for field in (
                "coverage", "bias", "mae", "pa", "power", "ci_width", "se",
            ):
                assert getattr(result, field) == pytest.approx(
                    getattr(rerun, field), abs=1e-9
                ), field

    def test_only_power_depends_on_effect_size(self):
        spec = CorrelationSpec(Structure.PAIRWISE_MAIN, 5.0, 6)
        base = Scenario(n=400, spec=spec, n_sims=200)
        swept = sweep_effect_sizes(base, (0.0, 1.0, 2.0))
        ref = swept[0]
        for other in swept[1:]:
            for field in ("coverage", "bias", "mae", "pa", "ci_width", "se"):
                assert getattr(other, field) == pytest.approx(
                    getattr(ref, field), abs=1e-9
                )
        assert swept[0].power < swept[-1].power

    def test_null_effect_power_is_type_one_rate(self):
        spec = CorrelationSpec(Structure.PAIRWISE_MAIN, 1.0, 6)
        base = Scenario(n=1000, spec=spec, n_sims=1000)
        null_result = sweep_effect_sizes(base, (0.0,))[0]
        assert null_result.power == pytest.approx(0.05, abs=0.02)

    def test_effect_size_grid_constant(self):
        assert EFFECT_SIZE_SWEEP[0] == 0.0
        assert EFFECT_SIZE_SWEEP[-1] == 2.0
        assert len(EFFECT_SIZE_SWEEP) == 21


class TestRunGrid:
    def test_results_in_enumeration_order(self):
        config = small_config()
        results, manifest = run_grid(config)
        keys = [(r.n, r.vif) for r in results]
        assert keys == [(100, 1.0), (100, 5.0), (200, 1.0), (200, 5.0)]
        assert manifest.config["n_sims"] == 50

    def test_rerun_is_identical(self):
        config = small_config()
        a, _ = run_grid(config)
        b, _ = run_grid(config)
        assert a == b

    def test_threads_do_not_change_output(self):
        config = small_config()
        a, _ = run_grid(config, threads=1)
        b, _ = run_grid(config, threads=8)
        assert a == b

    def test_sweep_grid_matches_per_scenario_runs(self):
        config = small_config(beta_main_sweep=(0.0, 2.0))
        results, _ = run_grid(config)
        assert [r.beta_main for r in results] == [0.0, 2.0] * 4
        single, _ = run_grid(small_config(beta_main_sweep=(2.0,)))
        for swept, plain in zip(results[1::2], single):
            assert swept.coverage == pytest.approx(plain.coverage, abs=1e-9)
            assert swept.power == pytest.approx(plain.power, abs=1e-9)

    def test_manifest_reproducibility_fields(self):
        config = small_config()
        _, manifest = run_grid(config)
        assert manifest.generator["algorithm"] == "philox4x64-ziggurat"
        assert manifest.generator["numpy"] == np.__version__
        assert len(manifest.config_hash) == 64
        assert len(manifest.scenario_seeds) == 4
        assert manifest.scenario_seeds[0]["seed_low"] == 0
        assert manifest.scenario_seeds[0]["seed_high"] == 49

    def test_failures_collected_per_scenario(self, monkeypatch):
        import vifsim.runner as runner_mod

        real = runner_mod.fit_ols

        def poisoned(x, y, tracked):
            poisoned.calls += 1
            if poisoned.calls == 61:  # inside the second scenario
                raise RuntimeError("synthetic failure")
            return real(x, y, tracked)

        poisoned.calls = 0
        monkeypatch.setattr(runner_mod, "fit_ols", poisoned)
        with pytest.raises(GridExecutionError) as excinfo:
            run_grid(small_config())
        assert len(excinfo.value.failures) == 1
        assert excinfo.value.failures[0][0] == 1

    def test_misspecification_kills_pa(self):
        config = small_config(
            n_grid=(2000,),
            vif_grid=(1.1, 10.0),
            structure=Structure.EQUICORRELATED,
            omit=frozenset({4}),
            n_sims=200,
        )
        results, _ = run_grid(config)
        assert all(r.pa == 0.0 for r in results)


class TestCalibration:
    def test_default_baseline_matches_published_margin(self):
        c, achieved = run_calibration()
        assert c == pytest.approx(0.189, abs=0.010)
        assert achieved == pytest.approx(0.80, abs=0.0025)

    def test_rejects_collinear_baseline(self):
        s = Scenario(
            n=1000, spec=CorrelationSpec(Structure.PAIRWISE_MAIN, 2.0, 6)
        )
        with pytest.raises(ValueError, match="VIF = 1"):
            run_calibration(s)


class TestPresets:
    def test_known_names(self):
        for name in ("fig1", "fig2", "fig4", "fig5", "s1", "s3", "s5", "s11"):
            labeled = preset_configs(name)
            assert labeled

    def test_main_grid_presets_share_config(self):
        assert preset_configs("fig1")[0][1] == preset_configs("fig5")[0][1]

    def test_effect_size_preset(self):
        _, config = preset_configs("fig4")[0]
        assert config.beta_main_sweep == EFFECT_SIZE_SWEEP
        assert config.n_grid == (100, 1000, 10000)

    def test_replication_preset_varies_n_sims(self):
        labeled = preset_configs("s1")
        assert [c.n_sims for _, c in labeled] == list(REPLICATION_SWEEP_N_SIMS)
        assert all(c.n_grid == (100,) for _, c in labeled)

    def test_misspecification_preset(self):
        _, config = preset_configs("s11")[0]
        assert config.omit == frozenset({4})
        assert config.structure is Structure.EQUICORRELATED

    def test_twenty_predictor_preset(self):
        _, config = preset_configs("s5")[0]
        assert config.p == 20
        assert config.resolved_betas() == TWENTY_VAR_REFERENCE

    def test_unknown_preset_rejected(self):
        with pytest.raises(ValueError, match="unknown preset"):
            preset_configs("fig99")
