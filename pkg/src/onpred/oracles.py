"""Brute-force frontier oracles used as ground truth in tests.

Every scan here re-derives metrics from the cost models (cost/reward
sweeps), never from the closed-form metric formulas, so agreement between
an oracle and its problem module is a genuine two-implementation check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import dsr, oms, rsr
from .core import MetricsPair, dominates, pareto_front

#: Domination margins: LP-derived points inherit the solver tolerance.
CLOSED_FORM_TOL = 1e-9
LP_TOL = 1e-6


@dataclass(frozen=True)
class FrontierScan:
    """All scanned (decision, metrics) points for one prediction, plus the
    Pareto front over their metrics."""

    prediction: object
    points: list[tuple[object, MetricsPair]]
    front: list[MetricsPair]

    def to_json_obj(self) -> dict:
        return {
            "prediction": self.prediction,
            "points": [
                {"decision": d, "beta_y": p.beta_y, "gamma_y": p.gamma_y}
                for d, p in self.points
            ],
            "front": [{"beta_y": p.beta_y, "gamma_y": p.gamma_y} for p in self.front],
        }


def verify_nondominated(point: MetricsPair, scan: FrontierScan, tol: float) -> bool:
    """True iff no scan point beats ``point`` by more than ``tol``."""
    return not any(dominates(q, point, tol) for _, q in scan.points)


# ---------------------------------------------------------------- DSR


def dsr_gamma_scan(cfg: dsr.DsrConfig, m_max: int) -> np.ndarray:
    """Brute-force sup of cost/opt over x in [1, m+b] for every purchase day
    m in [1, m_max]; index i holds the value for m = i + 1.

    The ratio is non-increasing past max(m, b), so the finite sweep is the
    true supremum; the scan asserts that tail monotonicity.
    """
    b = cfg.b
    xs = np.arange(1, m_max + b + 1)
    opts = np.minimum(b, xs).astype(float)
    out = np.empty(m_max)
    for m in range(1, m_max + 1):
        costs = np.where(xs < m, xs, float(b + m - 1))
        ratios = costs / opts
        hi = m + b
        out[m - 1] = ratios[:hi].max()
        tail_peak = ratios[max(m, b) - 1 :].max()
        if tail_peak > out[m - 1] + 1e-15:
            raise AssertionError("cost/opt ratio increased past the sweep bound")
    return out


def dsr_brute_metrics(m: int, y: int, cfg: dsr.DsrConfig,
                      gamma_scan: np.ndarray | None = None) -> MetricsPair:
    """Metrics for purchase day ``m`` from cost evaluations only."""
    beta = dsr.dsr_cost(m, y, cfg) / dsr.dsr_opt(y, cfg)
    if gamma_scan is not None:
        gamma = float(gamma_scan[m - 1])
    else:
        gamma = float(dsr_gamma_scan(cfg, m)[m - 1])
    return MetricsPair(beta_y=beta, gamma_y=gamma)


def dsr_frontier(y: int, cfg: dsr.DsrConfig) -> FrontierScan:
    """Enumerate purchase days m in [1, y+b+1] and take the Pareto front."""
    m_max = y + cfg.b + 1
    gammas = dsr_gamma_scan(cfg, m_max)
    points = [
        (m, dsr_brute_metrics(m, y, cfg, gamma_scan=gammas)) for m in range(1, m_max + 1)
    ]
    return FrontierScan(prediction=y, points=points,
                        front=pareto_front([p for _, p in points]))


# ---------------------------------------------------------------- RSR


def rsr_frontier(y: int, cfg: dsr.DsrConfig, gamma_grid: Sequence[float]) -> FrontierScan:
    """One LP-route point per robustness budget in ``gamma_grid``."""
    g_min = rsr.gamma_xi(cfg)
    if any(g < g_min - 1e-9 for g in gamma_grid):
        raise ValueError(f"every robustness budget must be >= {g_min:.9f}")
    points: list[tuple[object, MetricsPair]] = []
    for gamma_bar in gamma_grid:
        pi, metrics = rsr.meta_rsr(y, cfg, gamma_bar)
        points.append((float(gamma_bar), metrics))
    return FrontierScan(prediction=y, points=points,
                        front=pareto_front([p for _, p in points], tol=LP_TOL))


# ---------------------------------------------------------------- OMS


def oms_scan_arrays(y: float, cfg: oms.OmsConfig, grid_size: int,
                    eps: float | None = None,
                    extra_candidates: Sequence[float] = ()) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thresholds (grid plus analytic candidates) with sweep-based metrics.

    Consistency evaluates the reward model at the prediction (or, with
    ``eps``, the band's sup via the branch endpoints); robustness evaluates
    the reward model at the adversarial candidates just below the threshold
    and at the ceiling.
    """
    L, U = cfg.L, cfg.U
    candidates = [cfg.sqrt_lu, float(y)]
    candidates.append(oms.pst_threshold(y, cfg, 0.5).phi)
    candidates.append(oms.sun_threshold(y, cfg, 0.5).phi)
    candidates.extend(float(c) for c in extra_candidates)
    phis = np.unique(np.concatenate([np.linspace(L, U, grid_size), np.array(candidates)]))
    rewards_at_y = np.where(phis <= y, phis, L)
    if eps is None:
        betas = y / rewards_at_y
    else:
        lo = max(L, y - eps)
        hi = min(U, y + eps)
        betas = np.where(
            phis <= lo, hi / phis, np.where(phis > hi, hi / L, np.maximum(phis / L, hi / phis))
        )
    just_below = np.maximum(phis - 1e-9, L)
    floor_side = just_below / np.where(just_below < phis, L, phis)
    ceiling_side = U / np.where(phis <= U, phis, L)
    gammas = np.maximum(floor_side, ceiling_side)
    return phis, betas, gammas


def oms_nondominated_on_grid(point: MetricsPair, y: float, cfg: oms.OmsConfig,
                             grid_size: int, tol: float,
                             eps: float | None = None,
                             extra_candidates: Sequence[float] = ()) -> bool:
    """Vectorized non-domination check against the threshold scan."""
    _, betas, gammas = oms_scan_arrays(y, cfg, grid_size, eps, extra_candidates)
    beats = (
        (betas <= point.beta_y + tol)
        & (gammas <= point.gamma_y + tol)
        & ((betas < point.beta_y - tol) | (gammas < point.gamma_y - tol))
    )
    return not bool(np.any(beats))


def oms_frontier(y: float, cfg: oms.OmsConfig, grid_size: int,
                 eps: float | None = None,
                 extra_candidates: Sequence[float] = ()) -> FrontierScan:
    """Threshold scan over [L, U] (grid plus analytic candidates) with its
    Pareto front; pass ``eps`` for the error-tolerant consistency."""
    phis, betas, gammas = oms_scan_arrays(y, cfg, grid_size, eps, extra_candidates)
    points = [
        (float(phi), MetricsPair(beta_y=float(b), gamma_y=float(g)))
        for phi, b, g in zip(phis, betas, gammas)
    ]
    return FrontierScan(prediction=float(y), points=points,
                        front=pareto_front([p for _, p in points]))
