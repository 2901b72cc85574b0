"""Dynamic power management over idle intervals.

A multi-state controller is decomposed into one rent-or-buy subproblem per
consecutive state pair (k, k+1) with break-even price
``(wake[k+1] - wake[k]) / (rate[k] - rate[k+1])``.  Each stage samples a
purchase day ``d`` from its policy and descends at the absolute time
``(d - 1) * (break_even / price)`` from the start of the interval (clamped
monotone so states are entered in order); the stage subproblems all see the
same horizon, the full idle duration, in their own day units.  When the
break-even prices increase with depth, total energy (rate-weighted state
occupancy plus the wake cost of the deepest state reached) is exactly the
rate-weighted sum of the per-stage rent-or-buy costs plus the deepest
rate's baseline; with two states (rates 1 and 0, wake cost ``b``) the cost
equals discrete rent-or-buy exactly: ``x`` when ``d > x``, else
``b + d - 1``.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from ..dsr import DsrConfig
from ..rsr import (
    RentBuyDistribution,
    karlin_distribution,
    kr_distribution,
    prsr,
    sample_purchase_day,
)
from .sampling import standard_normal, substream

#: A stage policy maps a break-even price to a purchase-day distribution
#: plus the integer price it was built for (used to rescale days into time
#: units when the break-even is not integral).
StagePolicy = Callable[[float], tuple[RentBuyDistribution, int]]


@dataclass(frozen=True)
class IdleTrace:
    intervals: list[float]

    def __post_init__(self) -> None:
        if not self.intervals:
            raise ValueError("idle trace is empty")
        if any((not np.isfinite(v)) or v <= 0.0 for v in self.intervals):
            raise ValueError("idle intervals must be finite and positive")


@dataclass(frozen=True)
class PowerStateTable:
    """States sorted active-first: strictly decreasing power rate, strictly
    increasing wake cost, wake cost 0 in the active state."""

    states: list[tuple[float, float]]

    def __post_init__(self) -> None:
        if len(self.states) < 2:
            raise ValueError("need at least two power states")
        if self.states[0][1] != 0.0:
            raise ValueError("the active state must have wake cost 0")
        for (r0, w0), (r1, w1) in zip(self.states, self.states[1:]):
            if not (r1 < r0 and w1 > w0):
                raise ValueError(
                    "deeper states need strictly lower rates and higher wake costs")
        if any(r < 0.0 or w < 0.0 for r, w in self.states):
            raise ValueError("rates and wake costs must be non-negative")

    def break_even_prices(self) -> list[float]:
        return [
            (w1 - w0) / (r0 - r1)
            for (r0, w0), (r1, w1) in zip(self.states, self.states[1:])
        ]


def load_idle_intervals(path: str | Path, scale: float = 1.0) -> IdleTrace:
    """Newline-separated positive decimals, multiplied by ``scale``."""
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    values: list[float] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: not a number: {text!r}") from exc
        if value <= 0.0:
            raise ValueError(f"{path}:{lineno}: idle interval must be positive, got {value}")
        values.append(value * scale)
    return IdleTrace(intervals=values)


def load_power_states(path: str | Path) -> PowerStateTable:
    """JSON array of ``{"rate": float, "wake_cost": float}`` objects."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, list):
        raise ValueError(f"{path}: expected a JSON array of states")
    try:
        states = [(float(item["rate"]), float(item["wake_cost"])) for item in raw]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"{path}: each state needs 'rate' and 'wake_cost'") from exc
    return PowerStateTable(states=states)


def dpm_offline_opt(interval: float, table: PowerStateTable) -> float:
    """Lower envelope: best single state for the whole interval."""
    if interval < 0.0:
        raise ValueError(f"interval must be non-negative, got {interval}")
    return min(rate * interval + wake for rate, wake in table.states)


def dpm_run(interval: float, table: PowerStateTable, policy: StagePolicy,
            gen: np.random.Generator) -> float:
    """Energy of one controlled interval.

    Stage switch times are sampled up front (one purchase day per stage,
    in stage order) and clamped monotone; a switch landing at or beyond the
    interval end never happens, so no deeper wake cost is paid for it.
    """
    if interval <= 0.0:
        raise ValueError(f"interval must be positive, got {interval}")
    switch_times: list[float] = []
    prev = 0.0
    for break_even in table.break_even_prices():
        dist, price = policy(break_even)
        day = sample_purchase_day(dist, gen)
        tau = max((day - 1) * (break_even / price), prev)
        switch_times.append(tau)
        prev = tau
    boundaries = [0.0, *switch_times, float("inf")]
    energy = 0.0
    deepest = 0
    for k, (rate, _) in enumerate(table.states):
        start = min(boundaries[k], interval)
        end = min(boundaries[k + 1], interval)
        energy += rate * max(0.0, end - start)
        if boundaries[k] < interval:
            deepest = k
    energy += table.states[deepest][1]
    return energy


# -------------------------------------------------- stage-policy builders


def _stage_price(break_even: float) -> int:
    return max(2, round(break_even))


def _stage_prediction(predicted_interval: float, break_even: float, price: int) -> int:
    """Predicted horizon in the stage's day units (scaled when the
    break-even is not integral)."""
    return max(1, round(predicted_interval * price / break_even))


def karlin_policy() -> StagePolicy:
    cache: dict[int, RentBuyDistribution] = {}

    def policy(break_even: float) -> tuple[RentBuyDistribution, int]:
        price = _stage_price(break_even)
        if price not in cache:
            cache[price] = karlin_distribution(DsrConfig(price))
        return cache[price], price

    return policy


def prsr_policy(predicted_interval: float, gamma_bar: float) -> StagePolicy:
    cache: dict[tuple[int, int], RentBuyDistribution] = {}

    def policy(break_even: float) -> tuple[RentBuyDistribution, int]:
        price = _stage_price(break_even)
        y = _stage_prediction(predicted_interval, break_even, price)
        key = (price, y)
        if key not in cache:
            cache[key] = prsr(y, DsrConfig(price), gamma_bar)
        return cache[key], price

    return policy


def kr_policy(predicted_interval: float, lam: float) -> StagePolicy:
    cache: dict[tuple[int, bool], RentBuyDistribution] = {}

    def policy(break_even: float) -> tuple[RentBuyDistribution, int]:
        price = _stage_price(break_even)
        y = _stage_prediction(predicted_interval, break_even, price)
        key = (price, y >= price)
        if key not in cache:
            cache[key] = kr_distribution(y, DsrConfig(price), lam)
        return cache[key], price

    return policy


def blind_trust_policy(predicted_interval: float) -> StagePolicy:
    """Descend immediately wherever the predicted idle time covers the
    stage's break-even price; otherwise never descend."""
    never_day = 1 << 40  # switch time far beyond any realistic idle interval

    def policy(break_even: float) -> tuple[RentBuyDistribution, int]:
        price = _stage_price(break_even)
        day = 1 if predicted_interval >= break_even else never_day
        return RentBuyDistribution.from_masses({day: 1.0}), price

    return policy


def fixed_distribution_policy(dist: RentBuyDistribution, price: int) -> StagePolicy:
    """For harness tests: one distribution regardless of the stage."""
    return lambda break_even: (dist, price)


PolicyFactory = Callable[[float], StagePolicy]


def run_dpm_experiment(
    trace: IdleTrace,
    table: PowerStateTable,
    policy_factories: Mapping[str, PolicyFactory],
    seed: int,
    noise_sigma: float = 0.0,
    samples_per_interval: int = 1,
) -> dict[str, float]:
    """Mean empirical ratio (energy / offline optimum) per policy.

    Each factory receives the predicted interval: the true (scaled) idle
    duration perturbed by additive Gaussian noise of scale ``noise_sigma``
    (noise is applied to the scaled interval).  Sampling streams are keyed
    by (interval index, repeat, CRC-32 of the policy name) so results do not
    depend on policy ordering.
    """
    names = list(policy_factories)
    totals = {name: 0.0 for name in names}
    count = 0
    for idx, interval in enumerate(trace.intervals):
        opt = dpm_offline_opt(interval, table)
        for rep in range(samples_per_interval):
            pred_gen = substream(seed, idx, rep)
            noise = noise_sigma * standard_normal(pred_gen) if noise_sigma > 0.0 else 0.0
            predicted = max(1e-9, interval + noise)
            for name in names:
                policy = policy_factories[name](predicted)
                gen = substream(seed, idx, rep, zlib.crc32(name.encode("utf-8")))
                totals[name] += dpm_run(interval, table, policy, gen) / opt
            count += 1
    return {name: totals[name] / count for name in names}
