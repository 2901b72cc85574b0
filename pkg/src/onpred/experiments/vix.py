"""Monthly one-max-search trading over a daily close-price series.

Each calendar month is one trading round: the agent holds one unit and must
sell on exactly one day of the month.  Predictions for a round interpolate
between the previous month's realized maximum (error level 1) and the
current month's actual maximum (error level 0).  The first month in the
file only seeds predictions and is not traded.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Callable, Mapping

from ..core import Objective, empirical_ratio
from ..oms import OmsConfig, ThresholdPolicy, run_ota

#: A trading algorithm maps a (clamped) predicted maximum to a policy.
PolicyRule = Callable[[float], ThresholdPolicy]


@dataclass(frozen=True)
class VixRound:
    month_id: str
    daily_closes: list[float]

    def __post_init__(self) -> None:
        if not 1 <= len(self.daily_closes) <= 31:
            raise ValueError(f"round {self.month_id} has {len(self.daily_closes)} closes")
        if any(c <= 0.0 for c in self.daily_closes):
            raise ValueError(f"round {self.month_id} contains non-positive closes")

    @property
    def maximum(self) -> float:
        return max(self.daily_closes)


def load_vix_csv(path: str | Path) -> tuple[list[VixRound], float, float]:
    """Parse a ``date,close`` CSV (ISO dates) into monthly rounds plus the
    global price floor and ceiling."""
    months: dict[str, list[float]] = {}
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["date", "close"]:
            raise ValueError(f"{path}: expected header 'date,close', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: malformed row {row}")
            try:
                day = date.fromisoformat(row[0].strip())
                close = float(row[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed row {row}") from exc
            if close <= 0.0:
                raise ValueError(f"{path}:{lineno}: close must be positive, got {close}")
            months.setdefault(f"{day.year:04d}-{day.month:02d}", []).append(close)
    if not months:
        raise ValueError(f"{path}: no data rows")
    rounds = [VixRound(month_id=m, daily_closes=months[m]) for m in sorted(months)]
    closes = [c for r in rounds for c in r.daily_closes]
    return rounds, min(closes), max(closes)


def make_prediction(prev_round_max: float, true_round_max: float, error_level: float) -> float:
    """Interpolate between the naive previous-month prediction (level 1)
    and the perfect current-month maximum (level 0)."""
    if not 0.0 <= error_level <= 1.0:
        raise ValueError(f"error_level must lie in [0, 1], got {error_level}")
    return error_level * prev_round_max + (1.0 - error_level) * true_round_max


def run_vix(
    rounds: list[VixRound],
    algorithms: Mapping[str, PolicyRule],
    error_level: float,
    cfg: OmsConfig,
) -> dict[str, list[float]]:
    """Cumulative empirical ratios per algorithm after each traded round.

    Round 0 is the prediction seed; trading starts with round 1.  Selling
    uses the realistic compulsory final-day sale (last close when the
    threshold is never met); the offline optimum is the round maximum.
    Predictions are clamped to [L, U] before thresholding.
    """
    if len(rounds) < 2:
        raise ValueError("need at least two monthly rounds (the first only seeds predictions)")
    alg_totals = {name: 0.0 for name in algorithms}
    opt_total = 0.0
    out: dict[str, list[float]] = {name: [] for name in algorithms}
    for prev, current in zip(rounds, rounds[1:]):
        prediction = make_prediction(prev.maximum, current.maximum, error_level)
        prediction = min(max(prediction, cfg.L), cfg.U)
        opt_total += current.maximum
        for name, rule in algorithms.items():
            policy = rule(prediction)
            sold_at, _ = run_ota(policy.phi, current.daily_closes)
            alg_totals[name] += sold_at
            out[name].append(
                empirical_ratio(alg_totals[name], opt_total, Objective.REWARD_MAXIMIZATION))
    return out
