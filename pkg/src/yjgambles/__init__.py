"""Repeated gambles under Yeo-Johnson wealth dynamics.

Library + CLI for simulating expected-utility-maximizing agents facing
repeated safe/risky choices, calibrating informative gamble parameters,
quantifying decision convergence, and inferring risk preferences from
observed choices.
"""

__version__ = "0.1.0"

from .transform import (
    isoelastic,
    yj_derivative,
    yj_forward,
    yj_inverse,
    yj_reexpress,
)
from .dynamics import (
    GambleEnv,
    Trajectory,
    apply_increment,
    realized_growth_rate,
    sample_risky_payoff,
    sample_safe_payoff,
)
from .agent import (
    AgentSpec,
    Choice,
    QuadratureRule,
    decide,
    gauss_hermite_rule,
    prefers_safe,
    risky_expected_utility_change,
    safe_utility_change,
    utility_pdf,
)
from .calibration import (
    CalibrationError,
    CalibrationResult,
    calibrate,
    indifference_lambda,
    zero_growth_mu,
)
from .convergence import (
    ConvergenceCurve,
    disagreement_probability,
    lambda_T_curve,
    taylor_ratio,
    worked_example_threshold,
)
from .simulation import (
    DecisionRecord,
    EnsembleResult,
    EtaEstimate,
    ExperimentConfig,
    cdfs_cross,
    count_crossing_pairs,
    empirical_cdf,
    infer_eta,
    run_decision_log,
    run_decision_logs,
    run_ensemble,
)

__all__ = [
    "__version__",
    # transform
    "yj_forward", "yj_inverse", "yj_derivative", "yj_reexpress", "isoelastic",
    # dynamics
    "GambleEnv", "Trajectory", "apply_increment",
    "sample_safe_payoff", "sample_risky_payoff", "realized_growth_rate",
    # agent
    "AgentSpec", "Choice", "QuadratureRule", "gauss_hermite_rule",
    "safe_utility_change", "risky_expected_utility_change", "utility_pdf",
    "prefers_safe", "decide",
    # calibration
    "CalibrationError", "CalibrationResult",
    "zero_growth_mu", "indifference_lambda", "calibrate",
    # convergence
    "ConvergenceCurve", "lambda_T_curve", "taylor_ratio",
    "disagreement_probability", "worked_example_threshold",
    # simulation
    "ExperimentConfig", "DecisionRecord", "EnsembleResult", "EtaEstimate",
    "run_ensemble", "run_decision_log", "run_decision_logs",
    "empirical_cdf", "cdfs_cross", "count_crossing_pairs", "infer_eta",
]
