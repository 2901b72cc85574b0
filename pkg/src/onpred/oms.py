"""One-max search: threshold policies, reward model, and prediction-specific
metrics including the error-tolerant consistency variant.

Prices live in [L, U] with difficulty theta = U/L.  A threshold policy
accepts the first price at or above its threshold ``phi``; if no price
qualifies, the analysis model books the floor ``L`` (the trading harness
instead sells at the last observed price, see ``run_ota``).  Ratios are in
OPT/ALG orientation, so both metrics are >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import MetricsPair

#: Formula thresholds may exceed [L, U] by at most this much before being
#: treated as an error rather than clamped.
CLAMP_TOL = 1e-12


class Provenance(Enum):
    EL_YANIV = "elyaniv"
    SUN = "sun"
    PST = "pst"
    EPS_PST = "eps-pst"
    CUSTOM = "custom"


@dataclass(frozen=True)
class OmsConfig:
    """Price floor ``L`` and ceiling ``U`` (0 < L < U)."""

    L: float
    U: float

    def __post_init__(self) -> None:
        if not (0.0 < self.L < self.U):
            raise ValueError(f"need 0 < L < U, got L={self.L}, U={self.U}")

    @property
    def theta(self) -> float:
        return self.U / self.L

    @property
    def sqrt_lu(self) -> float:
        return math.sqrt(self.L * self.U)


@dataclass(frozen=True)
class ThresholdPolicy:
    """An acceptance threshold with the parameters that produced it."""

    phi: float
    provenance: Provenance
    lam: float | None = None
    eps: float | None = None
    switch_point: float | None = None
    eps_exceeds_guarantee: bool = False


def _clamp_phi(value: float, cfg: OmsConfig) -> float:
    clamped = min(max(value, cfg.L), cfg.U)
    if abs(clamped - value) > CLAMP_TOL:
        raise ValueError(f"threshold formula produced {value:.12g} outside [{cfg.L}, {cfg.U}]")
    return clamped


def _check_prediction(y: float, cfg: OmsConfig) -> None:
    if not (cfg.L - CLAMP_TOL <= y <= cfg.U + CLAMP_TOL):
        raise ValueError(f"prediction {y} outside [{cfg.L}, {cfg.U}]")


def oms_reward(phi: float, x_max: float, cfg: OmsConfig) -> float:
    """Reward of threshold ``phi`` when the stream's maximum is ``x_max``:
    the threshold itself when it is met, else the floor ``L``."""
    return phi if phi <= x_max else cfg.L


def oms_metrics(phi: float, y: float, cfg: OmsConfig) -> MetricsPair:
    """Prediction-specific consistency ``y / reward(phi, y)`` and robustness
    ``max(phi/L, U/phi)`` (the sup of x/reward over x in [L, U])."""
    _check_prediction(y, cfg)
    beta = y / oms_reward(phi, y, cfg)
    gamma = max(phi / cfg.L, cfg.U / phi)
    return MetricsPair(beta_y=beta, gamma_y=gamma)


def elyaniv_threshold(cfg: OmsConfig) -> ThresholdPolicy:
    """Classic fixed threshold sqrt(LU), sqrt(theta)-competitive."""
    return ThresholdPolicy(phi=cfg.sqrt_lu, provenance=Provenance.EL_YANIV)


def sun_lower_bound_consistency(cfg: OmsConfig, lam: float) -> float:
    """Consistency level beta of the confidence-weighted baseline.

    Rationalized form ``((1-lam) + sqrt((1-lam)^2 + 4*lam*theta)) / 2`` of
    ``2*lam*theta / (sqrt((1-lam)^2 + 4*lam*theta) - (1-lam))``; the two
    agree for lam > 0 and the former evaluates the lam -> 0 limit (beta = 1)
    exactly.
    """
    one_minus = 1.0 - lam
    return 0.5 * (one_minus + math.sqrt(one_minus * one_minus + 4.0 * lam * cfg.theta))


def sun_threshold(y: float, cfg: OmsConfig, lam: float) -> ThresholdPolicy:
    """Confidence-weighted baseline: thresholds interpolate between
    ``L*beta`` and ``L*gamma`` with ``gamma = theta/beta``."""
    _check_prediction(y, cfg)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    beta = sun_lower_bound_consistency(cfg, lam)
    gamma = cfg.theta / beta
    if y < cfg.L * beta:
        phi = cfg.L * beta
    elif y < cfg.L * gamma:
        phi = lam * cfg.L * gamma + (1.0 - lam) * y / beta
    else:
        phi = cfg.L * gamma
    return ThresholdPolicy(phi=_clamp_phi(phi, cfg), provenance=Provenance.SUN, lam=lam)


def pst_threshold(y: float, cfg: OmsConfig, lam: float) -> ThresholdPolicy:
    """Prediction-specific thresholding.

    Below the switch point ``M = lam*L + (1-lam)*sqrt(LU)`` the robust
    threshold sqrt(LU) is kept; between ``M`` and sqrt(LU) the prediction is
    trusted outright; above sqrt(LU) the threshold is the convex combination
    ``mu*sqrt(LU) + (1-mu)*y`` with ``mu = (1-lam)*sqrt(theta) /
    ((1-lam)*sqrt(theta) + lam)``.
    """
    _check_prediction(y, cfg)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    root = cfg.sqrt_lu
    switch = lam * cfg.L + (1.0 - lam) * root
    if y <= switch:
        phi = root
    elif y <= root:
        phi = y
    else:
        sq_theta = math.sqrt(cfg.theta)
        mu = (1.0 - lam) * sq_theta / ((1.0 - lam) * sq_theta + lam)
        phi = mu * root + (1.0 - mu) * y
    return ThresholdPolicy(phi=_clamp_phi(phi, cfg), provenance=Provenance.PST,
                           lam=lam, switch_point=switch)


def pst_theoretical_metrics(y: float, cfg: OmsConfig, lam: float) -> MetricsPair:
    """Closed-form metrics of ``pst_threshold``; the case boundaries follow
    the construction's line order so formula and construction agree at the
    boundary points too."""
    _check_prediction(y, cfg)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    root = cfg.sqrt_lu
    sq_theta = math.sqrt(cfg.theta)
    switch = lam * cfg.L + (1.0 - lam) * root
    if y <= switch:
        return MetricsPair(beta_y=y / cfg.L, gamma_y=sq_theta)
    if y <= root:
        return MetricsPair(beta_y=1.0, gamma_y=cfg.U / y)
    beta = ((1.0 - lam) * sq_theta * y + lam * y) / ((1.0 - lam) * cfg.U + lam * y)
    gamma = ((1.0 - lam) * cfg.U + lam * y) / ((1.0 - lam) * root + lam * cfg.L)
    return MetricsPair(beta_y=beta, gamma_y=gamma)


def eps_pst_guarantee_bound(cfg: OmsConfig) -> float:
    """Largest error tolerance covered by the optimality guarantee."""
    return (cfg.sqrt_lu - cfg.L) / 4.0


def _eps_switch(cfg: OmsConfig, lam: float, eps: float) -> float:
    return lam * (cfg.L + 3.0 * eps) + (1.0 - lam) * (cfg.sqrt_lu - eps)


def eps_pst_threshold(y: float, cfg: OmsConfig, lam: float, eps: float) -> ThresholdPolicy:
    """Error-tolerant variant of ``pst_threshold``.

    The switch point moves to ``M = lam*(L+3*eps) + (1-lam)*(sqrt(LU)-eps)``
    and a five-case split keeps the accepted threshold at least ``eps``
    below the prediction wherever the prediction is trusted, so prices
    within ``eps`` of an accurate prediction still clear it.
    """
    _check_prediction(y, cfg)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if eps <= 0.0:
        raise ValueError(f"error tolerance eps must be positive, got {eps}")
    exceeded = eps > eps_pst_guarantee_bound(cfg)
    root = cfg.sqrt_lu
    switch = _eps_switch(cfg, lam, eps)
    if y <= switch - 2.0 * eps:
        phi = root
    elif y < switch:
        phi = switch - eps
    elif y <= root + eps:
        phi = y - eps
    elif y < cfg.U - eps:
        mu = ((cfg.U - 2.0 * eps) - cfg.L * cfg.U / (switch - eps)) / ((cfg.U - 2.0 * eps) - root)
        phi = mu * root + (1.0 - mu) * (y - eps)
    else:
        phi = cfg.L * cfg.U / (switch - eps)
    return ThresholdPolicy(phi=_clamp_phi(phi, cfg), provenance=Provenance.EPS_PST,
                           lam=lam, eps=eps, switch_point=switch,
                           eps_exceeds_guarantee=exceeded)


def eps_pst_theoretical_metrics(y: float, cfg: OmsConfig, lam: float,
                                eps: float) -> MetricsPair:
    """Closed-form (eps-consistency, robustness) of ``eps_pst_threshold``,
    with case boundaries matching the construction's line order."""
    _check_prediction(y, cfg)
    if eps <= 0.0:
        raise ValueError(f"error tolerance eps must be positive, got {eps}")
    root = cfg.sqrt_lu
    switch = _eps_switch(cfg, lam, eps)
    if y <= switch - 2.0 * eps:
        return MetricsPair(beta_y=(y + eps) / cfg.L, gamma_y=math.sqrt(cfg.theta))
    if y < switch:
        return MetricsPair(beta_y=(switch - eps) / cfg.L, gamma_y=cfg.U / (switch - eps))
    if y <= root + eps:
        return MetricsPair(beta_y=(y + eps) / (y - eps), gamma_y=cfg.U / (y - eps))
    if y < cfg.U - eps:
        mu = ((cfg.U - 2.0 * eps) - cfg.L * cfg.U / (switch - eps)) / ((cfg.U - 2.0 * eps) - root)
        phi = mu * root + (1.0 - mu) * (y - eps)
        return MetricsPair(beta_y=(y + eps) / phi, gamma_y=phi / cfg.L)
    return MetricsPair(beta_y=(switch - eps) / cfg.L, gamma_y=cfg.U / (switch - eps))


def eps_consistency(phi: float, y: float, eps: float, cfg: OmsConfig) -> float:
    """Worst-case ratio over maxima within ``eps`` of the prediction.

    The ratio x/reward is increasing on each side of the threshold, so the
    sup over the band [max(L, y-eps), min(U, y+eps)] is attained in closed
    form: the floor branch approaches ``phi/L`` from below (strict
    ``phi > x`` books the floor), the accepting branch peaks at the band's
    top.
    """
    _check_prediction(y, cfg)
    if eps <= 0.0:
        raise ValueError(f"error tolerance eps must be positive, got {eps}")
    lo = max(cfg.L, y - eps)
    hi = min(cfg.U, y + eps)
    if phi <= lo:
        return hi / phi
    if phi > hi:
        return hi / cfg.L
    return max(phi / cfg.L, hi / phi)


def run_ota(phi: float, prices: Sequence[float]) -> tuple[float, int | None]:
    """Accept the first price >= phi; with no qualifying price, sell at the
    final price (compulsory final-day sale) and report index ``None``.

    The analysis model books ``L`` on non-acceptance instead; simulation
    harnesses use this function's realistic final-price rule.
    """
    if len(prices) == 0:
        raise ValueError("price sequence must be non-empty")
    for i, price in enumerate(prices):
        if price >= phi:
            return float(price), i
    return float(prices[-1]), None
