"""Monte Carlo engine quantifying how collinearity (targeted via VIF) and
sample size jointly affect OLS inference."""

__version__ = "0.1.0"

from .corrstruct import (  # noqa: F401
    DEFAULT_VIF_GRID,
    CholeskyError,
    CorrelationSpec,
    Structure,
    build_correlation_matrix,
    cholesky_lower,
    r_from_vif_equicorrelated,
    r_from_vif_pairwise,
    vif_from_r,
)
from .datagen import (  # noqa: F401
    DEFAULT_BETAS,
    DEFAULT_SIGMA_EPS,
    TWENTY_VAR_BETAS,
    Dataset,
    Scenario,
    StreamLabel,
    empirical_vif,
    generate_dataset,
    standard_normal_stream,
)
from .metrics import (  # noqa: F401
    DEFAULT_C_POWVAL,
    CalibrationError,
    MetricSummary,
    ScenarioResult,
    calibrate_c_powval,
    covers,
    has_precision_assurance,
    has_traditional_power,
    summarize,
)
from .ols import FitSummary, SingularFitError, fit_ols, t_critical  # noqa: F401
from .oracles import (  # noqa: F401
    analytic_mae,
    analytic_pa,
    analytic_power,
    analytic_se,
    ovb_bias_equicorrelated,
)
from .runner import (  # noqa: F401
    DEFAULT_N_GRID,
    EFFECT_SIZE_SWEEP,
    GridConfig,
    GridExecutionError,
    RunManifest,
    ScenarioError,
    enumerate_scenarios,
    fit_replicates,
    preset_configs,
    run_calibration,
    run_grid,
    run_scenario,
    sweep_effect_sizes,
)
