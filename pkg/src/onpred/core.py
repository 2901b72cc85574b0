"""Shared metric types, Pareto dominance, and empirical-ratio accounting.

Every competitive ratio handled here is in cost-minimization orientation
(values >= 1).  Reward-maximization problems (one-max search) invert their
ratios before crossing this module's boundary, so a single dominance
predicate serves all problem modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

#: Absolute tolerance for floating-point "equal"; dominance strictness uses
#: the same tolerance.
ABS_TOL = 1e-9


class Objective(Enum):
    """Ratio orientation: ALG/OPT for cost problems, OPT/ALG for rewards."""

    COST_MINIMIZATION = "cost"
    REWARD_MAXIMIZATION = "reward"


@dataclass(frozen=True)
class MetricsPair:
    """A point on the (consistency, robustness) trade-off plane.

    ``beta_y`` is the prediction-specific consistency (worst-case ratio over
    instances agreeing with the prediction), ``gamma_y`` the
    prediction-specific robustness (worst-case ratio over all instances).
    Both are >= 1; ``gamma_y >= beta_y`` holds whenever the two sup sets
    nest, which is asserted per problem module rather than here.
    """

    beta_y: float
    gamma_y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta_y) and math.isfinite(self.gamma_y)):
            raise ValueError(f"metrics must be finite, got ({self.beta_y}, {self.gamma_y})")
        # 1e-6 slack absorbs LP/linear-solve round-off on exact-1 optima.
        if self.beta_y < 1.0 - 1e-6 or self.gamma_y < 1.0 - 1e-6:
            raise ValueError(f"metrics must be >= 1, got ({self.beta_y}, {self.gamma_y})")


def dominates(a: MetricsPair, b: MetricsPair, tol: float = ABS_TOL) -> bool:
    """True iff ``a`` is at least as good as ``b`` in both coordinates and
    strictly better in at least one, using absolute tolerance ``tol``."""
    leq_beta = a.beta_y <= b.beta_y + tol
    leq_gamma = a.gamma_y <= b.gamma_y + tol
    lt_beta = a.beta_y < b.beta_y - tol
    lt_gamma = a.gamma_y < b.gamma_y - tol
    return leq_beta and leq_gamma and (lt_beta or lt_gamma)


def pareto_front(points: Sequence[MetricsPair], tol: float = ABS_TOL) -> list[MetricsPair]:
    """Non-dominated subset of ``points``, sorted by ``beta_y`` ascending.

    Ties on ``beta_y`` (within ``tol``) keep only the minimal ``gamma_y``.
    Raises ``ValueError`` on empty input.
    """
    pts = list(points)
    if not pts:
        raise ValueError("pareto_front requires a non-empty list of points")
    kept = [p for p in pts if not any(dominates(q, p, tol) for q in pts)]
    kept.sort(key=lambda p: (p.beta_y, p.gamma_y))
    front: list[MetricsPair] = []
    for p in kept:
        if front and abs(p.beta_y - front[-1].beta_y) <= tol:
            continue  # same beta within tolerance; earlier point has the smaller gamma
        front.append(p)
    return front


def empirical_ratio(alg_totals: float, opt_totals: float, objective: Objective) -> float:
    """Cumulative ALG total divided by cumulative OPT total.

    For reward maximization this is the fraction of the hindsight optimum
    recovered (<= 1 when ALG never beats OPT); for cost minimization it is an
    empirical competitive ratio (>= 1 when ALG never beats OPT).  The
    ``objective`` argument documents the orientation at the call site.
    """
    if not isinstance(objective, Objective):
        raise TypeError(f"objective must be an Objective, got {objective!r}")
    if not opt_totals > 0:
        raise ValueError(f"opt_totals must be positive, got {opt_totals}")
    if alg_totals < 0:
        raise ValueError(f"alg_totals must be non-negative, got {alg_totals}")
    return alg_totals / opt_totals


def metrics_from_iter(pairs: Iterable[tuple[float, float]]) -> list[MetricsPair]:
    """Convenience constructor used by oracles and the CLI."""
    return [MetricsPair(beta_y=b, gamma_y=g) for b, g in pairs]
