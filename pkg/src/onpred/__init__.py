"""Learning-augmented online algorithms with prediction-specific
consistency/robustness guarantees, brute-force Pareto oracles, and
reproducible experiment harnesses."""

from .core import ABS_TOL, MetricsPair, Objective, dominates, empirical_ratio, pareto_front
from .dsr import (
    DsrConfig,
    dsr_cost,
    dsr_metrics,
    dsr_opt,
    kd_decision,
    pdsr_decision,
    pdsr_theoretical_metrics,
)
from .linprog import LinearProgram, LpSolution, LpStatus, solve_linear_system, solve_lp
from .oms import (
    OmsConfig,
    Provenance,
    ThresholdPolicy,
    elyaniv_threshold,
    eps_consistency,
    eps_pst_theoretical_metrics,
    eps_pst_threshold,
    oms_metrics,
    oms_reward,
    pst_theoretical_metrics,
    pst_threshold,
    run_ota,
    sun_threshold,
)
from .rsr import (
    RentBuyDistribution,
    RsrTargets,
    equalizing_distribution,
    gamma_nu,
    gamma_xi,
    karlin_distribution,
    kr_distribution,
    lp_min_consistency,
    lp_min_robustness,
    meta_rsr,
    operation_a,
    operation_b,
    prsr,
    prsr_targets,
    rsr_expected_cost,
    rsr_metrics,
    rsr_ratio,
    sample_purchase_day,
)
from .scheduling import (
    JobPairActual,
    JobPairPrediction,
    round_robin_cost,
    sched_opt,
    two_stage_cost,
    two_stage_metrics,
)

__version__ = "0.1.0"

__all__ = [
    "ABS_TOL",
    "DsrConfig",
    "JobPairActual",
    "JobPairPrediction",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "MetricsPair",
    "Objective",
    "OmsConfig",
    "Provenance",
    "RentBuyDistribution",
    "RsrTargets",
    "ThresholdPolicy",
    "dominates",
    "dsr_cost",
    "dsr_metrics",
    "dsr_opt",
    "elyaniv_threshold",
    "empirical_ratio",
    "eps_consistency",
    "eps_pst_theoretical_metrics",
    "eps_pst_threshold",
    "equalizing_distribution",
    "gamma_nu",
    "gamma_xi",
    "karlin_distribution",
    "kd_decision",
    "kr_distribution",
    "lp_min_consistency",
    "lp_min_robustness",
    "meta_rsr",
    "oms_metrics",
    "oms_reward",
    "operation_a",
    "operation_b",
    "pareto_front",
    "pdsr_decision",
    "pdsr_theoretical_metrics",
    "prsr",
    "prsr_targets",
    "pst_theoretical_metrics",
    "pst_threshold",
    "round_robin_cost",
    "rsr_expected_cost",
    "rsr_metrics",
    "rsr_ratio",
    "run_ota",
    "sample_purchase_day",
    "sched_opt",
    "solve_linear_system",
    "solve_lp",
    "sun_threshold",
    "two_stage_cost",
    "two_stage_metrics",
]
