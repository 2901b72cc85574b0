"""Synthetic ski rental experiment: uniform season lengths with predictions
that are exact with probability ``p`` and Gaussian-perturbed otherwise."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from ..dsr import DsrConfig, dsr_cost, dsr_opt, kd_decision, pdsr_decision
from ..rsr import (
    RentBuyDistribution,
    karlin_distribution,
    kr_distribution,
    prsr,
    sample_purchase_day,
)
from .sampling import algorithm_stream, standard_normal, substream

#: A purchase rule maps (prediction, per-trial stream) to a purchase day.
DayRule = Callable[[int, np.random.Generator], int]


@dataclass(frozen=True)
class SyntheticSkiConfig:
    p: float
    seed: int
    b: int = 100
    x_max_multiplier: int = 10
    sigma: float = 500.0
    trials: int = 10000

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"accuracy p must lie in [0, 1], got {self.p}")
        if self.b < 2 or self.x_max_multiplier < 1 or self.trials < 1:
            raise ValueError("b, x_max_multiplier and trials must be positive (b >= 2)")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")


@dataclass(frozen=True)
class AlgorithmSummary:
    mean_ratio: float
    std_error: float
    trials: int


def gen_synthetic_ski(cfg: SyntheticSkiConfig) -> list[tuple[int, int]]:
    """(season length, prediction) pairs, deterministic under the seed.

    Per trial the stream is consumed as: one uniform for the season length
    ``x`` (uniform integer on [1, x_max_multiplier*b]), one uniform for the
    accuracy coin, and, on an inaccurate draw, two more uniforms for the
    Box-Muller Gaussian in ``y = max(1, floor(x + sigma*z + 0.5))``.
    """
    x_max = cfg.x_max_multiplier * cfg.b
    out: list[tuple[int, int]] = []
    for trial in range(cfg.trials):
        gen = substream(cfg.seed, trial)
        x = 1 + int(gen.random() * x_max)
        x = min(x, x_max)
        if gen.random() < cfg.p:
            y = x
        else:
            z = standard_normal(gen)
            y = max(1, int(math.floor(x + cfg.sigma * z + 0.5)))
        out.append((x, y))
    return out


def run_ski_experiment(
    instances: list[tuple[int, int]],
    algorithms: Mapping[str, DayRule],
    cfg: SyntheticSkiConfig,
) -> dict[str, AlgorithmSummary]:
    """Mean empirical competitive ratio per algorithm over the instances.

    Randomized rules draw one purchase day per trial from a per-(trial,
    algorithm) stream, so adding or reordering algorithms never changes
    another algorithm's draws.
    """
    ski = DsrConfig(cfg.b)
    ratios = {name: np.empty(len(instances)) for name in algorithms}
    for trial, (x, y) in enumerate(instances):
        for name, rule in algorithms.items():
            day = rule(y, algorithm_stream(cfg.seed, trial, name))
            ratios[name][trial] = dsr_cost(day, x, ski) / dsr_opt(x, ski)
    return {
        name: AlgorithmSummary(
            mean_ratio=float(vals.mean()),
            std_error=float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0,
            trials=len(vals),
        )
        for name, vals in ratios.items()
    }


# -------------------------------------------------- purchase-rule builders


def classic_rule(cfg: DsrConfig) -> DayRule:
    return lambda y, gen: cfg.b


def kd_rule(cfg: DsrConfig, lam: float) -> DayRule:
    return lambda y, gen: kd_decision(y, cfg, lam)


def pdsr_rule(cfg: DsrConfig, lam: float) -> DayRule:
    return lambda y, gen: pdsr_decision(y, cfg, lam)


def karlin_rule(cfg: DsrConfig) -> DayRule:
    dist = karlin_distribution(cfg)
    return lambda y, gen: sample_purchase_day(dist, gen)


def kr_rule(cfg: DsrConfig, lam: float) -> DayRule:
    cache: dict[bool, RentBuyDistribution] = {}

    def rule(y: int, gen: np.random.Generator) -> int:
        long_side = y >= cfg.b
        if long_side not in cache:
            cache[long_side] = kr_distribution(y, cfg, lam)
        return sample_purchase_day(cache[long_side], gen)

    return rule


def prsr_rule(cfg: DsrConfig, gamma_bar: float) -> DayRule:
    cache: dict[int, RentBuyDistribution] = {}

    def rule(y: int, gen: np.random.Generator) -> int:
        if y not in cache:
            cache[y] = prsr(y, cfg, gamma_bar)
        return sample_purchase_day(cache[y], gen)

    return rule


def standard_algorithm_suite(cfg: DsrConfig, lam: float,
                             gamma_bar: float, kr_lam: float) -> dict[str, DayRule]:
    """The six rules compared in the synthetic study."""
    return {
        "classic": classic_rule(cfg),
        "kd": kd_rule(cfg, lam),
        "pdsr": pdsr_rule(cfg, lam),
        "karlin": karlin_rule(cfg),
        "kr": kr_rule(cfg, kr_lam),
        "prsr": prsr_rule(cfg, gamma_bar),
    }
