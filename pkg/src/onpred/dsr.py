"""Deterministic ski rental: cost model, purchase rules, and closed-form
prediction-specific metrics.

Days are positive integers; a decision is the day ``m`` on which skis are
bought (rent costs 1 per day, buying costs ``b``).  The offline optimum for
a season of ``x`` days is ``min(b, x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import MetricsPair


@dataclass(frozen=True)
class DsrConfig:
    """Purchase price ``b`` (rent = 1/day)."""

    b: int

    def __post_init__(self) -> None:
        if not isinstance(self.b, int) or self.b < 2:
            raise ValueError(f"purchase price b must be an integer >= 2, got {self.b!r}")


def _check_day(value: int, name: str) -> None:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie in the open interval (0, 1), got {lam}")


def dsr_cost(m: int, x: int, cfg: DsrConfig) -> float:
    """Cost of buying at the start of day ``m`` on a season of ``x`` days:
    ``x`` when the season ends first, else ``b + m - 1``."""
    _check_day(m, "purchase day m")
    _check_day(x, "season length x")
    return float(x) if m > x else float(cfg.b + m - 1)


def dsr_opt(x: int, cfg: DsrConfig) -> float:
    _check_day(x, "season length x")
    return float(min(cfg.b, x))


def kd_decision(y: int, cfg: DsrConfig, lam: float) -> int:
    """Confidence-weighted rent-or-buy baseline: buy on day ``ceil(lam*b)``
    when the prediction says the season reaches ``b``, else postpone to
    ``ceil(b/lam)``."""
    _check_day(y, "prediction y")
    _check_lambda(lam)
    if y >= cfg.b:
        return math.ceil(lam * cfg.b)
    return math.ceil(cfg.b / lam)


def pdsr_decision(y: int, cfg: DsrConfig, lam: float) -> int:
    """Prediction-specific deterministic rule.

    Short predictions fall back to the classic day-``b`` purchase; a middle
    band of long predictions buys just after the predicted end (day
    ``y + 1``); beyond the band the confidence-weighted day ``ceil(lam*b)``
    stays on the per-prediction Pareto front.  The band's endpoints
    ``b*(lam+1) - 1`` and ``(b-1)/lam`` are compared as exact reals.
    """
    _check_day(y, "prediction y")
    _check_lambda(lam)
    b = cfg.b
    if y < b:
        return b
    if y <= min(b * (lam + 1.0) - 1.0, (b - 1.0) / lam):
        return y + 1
    return math.ceil(lam * b)


def dsr_metrics(m: int, y: int, cfg: DsrConfig) -> MetricsPair:
    """Closed-form prediction-specific consistency and robustness of the
    fixed purchase day ``m`` under prediction ``y``.

    Equals the supremum of ``dsr_cost/dsr_opt`` over all season lengths
    (robustness) and at ``x = y`` (consistency); the brute-force sweep is
    kept in the oracles module as an independent check.
    """
    _check_day(m, "purchase day m")
    _check_day(y, "prediction y")
    b = cfg.b
    if y < b:
        beta = (m - 1 + b) / y if m <= y else 1.0
    else:
        beta = (m - 1 + b) / b if m <= y else y / b
    gamma = (m - 1 + b) / m if m <= b else (m - 1 + b) / b
    return MetricsPair(beta_y=beta, gamma_y=gamma)


def pdsr_theoretical_metrics(y: int, cfg: DsrConfig, lam: float) -> MetricsPair:
    """Three-case closed form for the prediction-specific rule, with the
    ceiling in the third case resolved exactly."""
    _check_day(y, "prediction y")
    _check_lambda(lam)
    b = cfg.b
    if y < b:
        return MetricsPair(beta_y=1.0, gamma_y=2.0 - 1.0 / b)
    if y <= min(b * (lam + 1.0) - 1.0, (b - 1.0) / lam):
        return MetricsPair(beta_y=y / b, gamma_y=1.0 + y / b)
    m = math.ceil(lam * b)
    return MetricsPair(beta_y=(m - 1 + b) / b, gamma_y=(m - 1 + b) / m)
