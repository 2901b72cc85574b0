"""Two-job non-clairvoyant preemptive scheduling on one machine.

Costs are total completion times under continuous-time processing with
exact event arithmetic.  Predictions are canonicalized so the job with the
smaller predicted time is job 1; actual times are permuted alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MetricsPair

#: Equality tolerance for "finished at its predicted processing time".
WORK_TOL = 1e-12


@dataclass(frozen=True)
class JobPairPrediction:
    y1: float
    y2: float

    def __post_init__(self) -> None:
        if self.y1 <= 0 or self.y2 <= 0:
            raise ValueError(f"predicted times must be positive, got ({self.y1}, {self.y2})")


@dataclass(frozen=True)
class JobPairActual:
    x1: float
    x2: float

    def __post_init__(self) -> None:
        if self.x1 <= 0 or self.x2 <= 0:
            raise ValueError(f"actual times must be positive, got ({self.x1}, {self.x2})")


def canonicalize(pred: JobPairPrediction,
                 actual: JobPairActual) -> tuple[JobPairPrediction, JobPairActual]:
    """Sort predictions ascending and permute the actuals to match."""
    if pred.y1 <= pred.y2:
        return pred, actual
    return JobPairPrediction(pred.y2, pred.y1), JobPairActual(actual.x2, actual.x1)


def sched_opt(actual: JobPairActual) -> float:
    """Offline optimum (shortest-first): 2*min + max."""
    return 2.0 * min(actual.x1, actual.x2) + max(actual.x1, actual.x2)


def round_robin_cost(actual: JobPairActual) -> float:
    """Both jobs share the machine at rate 1/2 until the shorter finishes at
    2*min; the longer then runs alone, finishing at min + max."""
    lo = min(actual.x1, actual.x2)
    hi = max(actual.x1, actual.x2)
    return 2.0 * lo + (lo + hi)


def two_stage_cost(actual: JobPairActual, pred: JobPairPrediction, lam: float) -> float:
    """Continuous-time simulation of the two-stage schedule.

    Stage 1 round-robins for a wall-clock budget of ``2*lam*(2*y1+y2)``
    (each job receives ``s = lam*(2*y1+y2)`` of work); stage 2 processes the
    jobs in predicted order.  The moment a job's observed processing time
    contradicts its prediction (it finishes early/late, or runs past the
    predicted amount without finishing), the schedule falls back to round
    robin on whatever remains.  When the stage-1 budget already covers job
    1's predicted work, the schedule is round robin throughout.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    pred, actual = canonicalize(pred, actual)
    y1 = pred.y1
    x1, x2 = actual.x1, actual.x2
    s = lam * (2.0 * pred.y1 + pred.y2)

    if s >= y1 - WORK_TOL:
        return round_robin_cost(actual)

    # Stage 1: any completion here is necessarily a misprediction
    # (x_i <= s < y1 <= y_i), and round robin "forever" from inside stage 1
    # is the plain round-robin schedule.
    if x1 <= s or x2 <= s:
        return round_robin_cost(actual)

    # Stage 2, event 1: job 1 runs alone from wall time 2s with s work done.
    if x1 <= y1 + WORK_TOL:
        # Job 1 finishes (at or before its prediction) at wall time s + x1.
        # Whether or not that exposes a misprediction, only job 2 remains,
        # so the continuation is the same: job 2 runs alone to completion.
        first_completion = s + x1
        second_completion = first_completion + (x2 - s)
        return first_completion + second_completion

    # Job 1 runs past its predicted amount without finishing: misprediction
    # detected at wall time s + y1 with remaining works (x1 - y1, x2 - s);
    # round robin finishes them off.
    t0 = s + y1
    w_lo = min(x1 - y1, x2 - s)
    w_hi = max(x1 - y1, x2 - s)
    first_completion = t0 + 2.0 * w_lo
    second_completion = first_completion + (w_hi - w_lo)
    return first_completion + second_completion


def two_stage_metrics(pred: JobPairPrediction, lam: float) -> MetricsPair:
    """Closed-form prediction-specific metrics of the two-stage schedule:
    ``beta = 1 + min(y1/(2y1+y2), lam)`` and
    ``gamma = 1 + max(1/3, y1/(y1 + 2*lam*(2y1+y2)))``."""
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    pred, _ = canonicalize(pred, JobPairActual(1.0, 1.0))
    y1, y2 = pred.y1, pred.y2
    denom = 2.0 * y1 + y2
    beta = 1.0 + min(y1 / denom, lam)
    gamma = 1.0 + max(1.0 / 3.0, y1 / (y1 + 2.0 * lam * denom))
    return MetricsPair(beta_y=beta, gamma_y=gamma)
