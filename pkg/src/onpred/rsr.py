"""Randomized ski rental: expected-cost model, equalizing distributions,
the two mass-reallocation operations, the explicit prediction-specific rule,
baselines, and the LP route to the same per-prediction frontier points.

A randomized strategy is a probability distribution over purchase days.
``R(pi, x)`` denotes its expected cost ratio against ``min(b, x)`` on a
season of ``x`` days; prediction-specific consistency is ``R(pi, y)`` and
robustness is ``sup_x R(pi, x)``.  The sup is exact over the finite sweep
``x in [1, max(support) v b]`` because past that point the expected cost is
constant and the offline optimum is saturated at ``b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .core import MetricsPair
from .dsr import DsrConfig
from .linprog import (
    LinearProgram,
    LpStatus,
    solve_linear_system,
    solve_lp,
)

#: Negative masses above this magnitude indicate real infeasibility rather
#: than solver noise and are rejected.
NEGATIVE_MASS_TOL = 1e-12


@dataclass(frozen=True)
class RentBuyDistribution:
    """Probability distribution over purchase days (finite support).

    Masses are clamped at ``-1e-12`` (tiny solver noise goes to zero, then
    the vector is renormalized); anything more negative raises.  Serializes
    to a JSON array of ``{"day": int, "prob": float}`` sorted by day.
    """

    probs: Mapping[int, float]

    @staticmethod
    def from_masses(masses: Mapping[int, float]) -> "RentBuyDistribution":
        cleaned: dict[int, float] = {}
        for day, mass in masses.items():
            day = int(day)
            if day < 1:
                raise ValueError(f"purchase days must be >= 1, got {day}")
            if mass < -NEGATIVE_MASS_TOL:
                raise ValueError(f"negative probability mass {mass:g} on day {day}")
            if mass > 1e-14:  # drop solver dust along with clamped negatives
                cleaned[day] = float(mass)
        total = sum(cleaned.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probability masses sum to {total:.12f}, expected 1")
        if abs(total - 1.0) > 0.0:
            cleaned = {d: m / total for d, m in cleaned.items()}
        return RentBuyDistribution(probs=cleaned)

    def days(self) -> list[int]:
        return sorted(self.probs)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        days = np.array(self.days(), dtype=int)
        masses = np.array([self.probs[d] for d in days], dtype=float)
        return days, masses

    def max_day(self) -> int:
        return max(self.probs)

    def to_json_array(self) -> list[dict]:
        return [{"day": int(d), "prob": float(self.probs[d])} for d in self.days()]

    @staticmethod
    def from_json_array(items: Iterable[Mapping]) -> "RentBuyDistribution":
        return RentBuyDistribution.from_masses({int(it["day"]): float(it["prob"]) for it in items})


@dataclass(frozen=True)
class RsrTargets:
    """Derived robustness quantities for a budget ``gamma_bar``.

    ``n`` is the smallest support size whose equalizing distribution meets
    the budget, ``gamma_prime`` that distribution's exact robustness,
    ``gamma_nu`` the robustness of the 1-consistent equalizing distribution
    for the given prediction (predictions below ``b`` only), and
    ``gamma_xi`` the optimal classic ratio ``e_b/(e_b - 1)``.
    """

    gamma_bar: float
    e_b: float
    n: int
    gamma_prime: float
    gamma_xi: float
    gamma_nu: float | None = None

    def __post_init__(self) -> None:
        if self.gamma_prime < self.gamma_xi - 1e-9:
            raise ValueError("adjusted robustness fell below the classic optimum")


def _day_costs(days: np.ndarray, x: int, b: int) -> np.ndarray:
    """Realized cost per purchase day for a season of ``x`` days."""
    return np.where(days > x, float(x), b - 1.0 + days)


def rsr_expected_cost(pi: RentBuyDistribution, x: int, cfg: DsrConfig) -> float:
    if not isinstance(x, int) or x < 1:
        raise ValueError(f"season length x must be a positive integer, got {x!r}")
    days, masses = pi.arrays()
    return float(masses @ _day_costs(days, x, cfg.b))


def rsr_ratio(pi: RentBuyDistribution, x: int, cfg: DsrConfig) -> float:
    return rsr_expected_cost(pi, x, cfg) / min(cfg.b, x)


def _ratio_sweep(pi: RentBuyDistribution, cfg: DsrConfig, x_max: int) -> np.ndarray:
    """Vector of R(pi, x) for x = 1..x_max (index 0 is x=1)."""
    days, masses = pi.arrays()
    buy_cost = masses * (cfg.b - 1.0 + days)
    cum_buy = np.concatenate(([0.0], np.cumsum(buy_cost)))
    cum_mass = np.concatenate(([0.0], np.cumsum(masses)))
    xs = np.arange(1, x_max + 1)
    idx = np.searchsorted(days, xs, side="right")
    alg = cum_buy[idx] + xs * (1.0 - cum_mass[idx])
    return alg / np.minimum(cfg.b, xs)


def rsr_metrics(pi: RentBuyDistribution, y: int, cfg: DsrConfig) -> MetricsPair:
    """Measured consistency R(pi, y) and robustness max_x R(pi, x)."""
    if not isinstance(y, int) or y < 1:
        raise ValueError(f"prediction y must be a positive integer, got {y!r}")
    sweep_to = max(cfg.b, pi.max_day())
    gamma = float(np.max(_ratio_sweep(pi, cfg, sweep_to)))
    return MetricsPair(beta_y=rsr_ratio(pi, y, cfg), gamma_y=gamma)


def equalizing_distribution(m: int, n: int, cfg: DsrConfig) -> RentBuyDistribution:
    """Distribution supported on [m, n] whose expected cost ratio is the
    same for every season length in [m, n].

    The head mass and the geometric tail are
    ``pi_m = (1 + ((m+b-1)/m) * ((b/(b-1))^(n-m) - 1))^-1`` and
    ``pi_i = pi_m * ((m+b-1)/(m(b-1))) * (b/(b-1))^(i-m-1)`` for m < i <= n.
    """
    b = cfg.b
    if not (1 <= m <= n <= b):
        raise ValueError(f"need 1 <= m <= n <= b, got m={m}, n={n}, b={b}")
    r = b / (b - 1.0)
    head = 1.0 / (1.0 + ((m + b - 1.0) / m) * (r ** (n - m) - 1.0))
    masses = {m: head}
    scale = head * (m + b - 1.0) / (m * (b - 1.0))
    for i in range(m + 1, n + 1):
        masses[i] = scale * r ** (i - m - 1)
    return RentBuyDistribution.from_masses(masses)


def karlin_distribution(cfg: DsrConfig) -> RentBuyDistribution:
    """The classic optimal randomized strategy: equalizing over [1, b]."""
    return equalizing_distribution(1, cfg.b, cfg)


def gamma_xi(cfg: DsrConfig) -> float:
    """Optimal classic competitive ratio e_b/(e_b - 1), e_b = (1+1/(b-1))^b."""
    e_b = (1.0 + 1.0 / (cfg.b - 1.0)) ** cfg.b
    return e_b / (e_b - 1.0)


def gamma_nu(y: int, cfg: DsrConfig) -> float:
    """Robustness of the 1-consistent equalizing distribution on [y+1, b]."""
    if y >= cfg.b:
        raise ValueError(f"gamma_nu is defined for predictions below b, got y={y}")
    pi = equalizing_distribution(y + 1, cfg.b, cfg)
    return rsr_metrics(pi, y, cfg).gamma_y


def kr_distribution(y: int, cfg: DsrConfig, lam: float) -> RentBuyDistribution:
    """Confidence-weighted geometric baseline.

    Support is [1, m] with ``m = ceil(b/lam)`` for short predictions and
    ``floor(lam*b)`` otherwise; masses follow
    ``pi_i = ((b-1)/b)^(m-i) / (b * (1 - (1 - 1/b)^m))``.
    """
    b = cfg.b
    if not isinstance(y, int) or y < 1:
        raise ValueError(f"prediction y must be a positive integer, got {y!r}")
    if not (1.0 / b < lam < 1.0):
        raise ValueError(f"lambda must lie in (1/b, 1), got {lam}")
    m = math.ceil(b / lam) if y < b else math.floor(lam * b)
    days = np.arange(1, m + 1)
    masses = ((b - 1.0) / b) ** (m - days) / (b * (1.0 - (1.0 - 1.0 / b) ** m))
    return RentBuyDistribution.from_masses(dict(zip(days.tolist(), masses.tolist())))


def operation_a(pi_init: RentBuyDistribution, y: int, cfg: DsrConfig) -> RentBuyDistribution:
    """Consistency boosting for predictions of at least ``b`` days.

    Starting from an equalizing distribution on [1, n], mass is moved from
    the top of the support to day ``y + 1`` for as long as the ratio at
    ``x = y + 1`` stays below the initial robustness; the final transfer is
    split exactly by a 2x2 linear solve so that ratio lands on the initial
    robustness.  Shifting below day ``y + 1 - b`` cannot improve consistency
    and stops the process; walking the support down to a single day (only
    possible when ``y == b``) yields the two-point distribution
    ``{1: 1/b, b+1: (b-1)/b}``.
    """
    b = cfg.b
    if y < b:
        raise ValueError(f"operation_a requires y >= b, got y={y}, b={b}")
    gamma = rsr_metrics(pi_init, y, cfg).gamma_y
    probs = dict(pi_init.probs)
    target = y + 1
    r = max(probs)
    while True:
        if r == 1:
            return RentBuyDistribution.from_masses({1: 1.0 / b, b + 1: (b - 1.0) / b})
        if r <= target - b:
            return RentBuyDistribution.from_masses(probs)
        moved = probs.pop(r)
        probs[target] = probs.get(target, 0.0) + moved
        if rsr_ratio(RentBuyDistribution.from_masses(probs), target, cfg) < gamma:
            r -= 1
            continue
        # Maximum shiftable amount: split the moved mass between day r and
        # day y+1 so the ratio at x = y+1 equals the initial robustness.
        head = {d: m for d, m in probs.items() if d < r}
        remaining = 1.0 - sum(head.values())
        head_cost = sum(m * (b - 1.0 + d) for d, m in head.items())
        cost_r = b - 1.0 + r
        cost_t = b - 1.0 + target
        matrix = [[1.0, 1.0], [cost_r, cost_t]]
        rhs = [remaining, gamma * min(b, target) - head_cost]
        split = solve_linear_system(np.array(matrix), np.array(rhs))
        head[r] = float(split[0])
        head[target] = float(split[1])
        return RentBuyDistribution.from_masses(head)


def _equalized_system(support: list[int], equal_at: list[int], cfg: DsrConfig,
                      gamma: float | None) -> np.ndarray:
    """Solve for masses on ``support`` with R(pi, x) equalized on
    ``equal_at`` and total mass 1.

    With ``gamma`` given, the common ratio is pinned; otherwise it is an
    extra unknown appended to the solution vector.
    """
    b = cfg.b
    days = np.array(support, dtype=float)
    n_pi = len(support)
    solve_gamma = gamma is None
    size = n_pi + (1 if solve_gamma else 0)
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)
    matrix[0, :n_pi] = 1.0
    rhs[0] = 1.0
    for row, x in enumerate(equal_at, start=1):
        costs = np.where(days > x, float(x), b - 1.0 + days)
        matrix[row, :n_pi] = costs
        opt = float(min(b, x))
        if solve_gamma:
            matrix[row, n_pi] = -opt
        else:
            rhs[row] = gamma * opt
    return solve_linear_system(matrix, rhs)


def operation_b(pi_init: RentBuyDistribution, gamma: float, y: int,
                cfg: DsrConfig) -> RentBuyDistribution:
    """Robustness seeking for predictions below ``b``.

    Starting from the 1-consistent equalizing distribution on [y+1, b], the
    support is widened to {1..r} on the left, one day at a time, until the
    distribution equalized over {1..r, y+1..b} is at least as robust as the
    requested ``gamma``; the final solve pins the ratio to exactly ``gamma``
    on {1..r-1, y+1..b} and lets day ``r`` absorb the slack.
    """
    b = cfg.b
    if y >= b:
        raise ValueError(f"operation_b requires y < b, got y={y}, b={b}")
    g_lo = gamma_xi(cfg)
    g_hi = rsr_metrics(pi_init, y, cfg).gamma_y
    if gamma < g_lo - 1e-9:
        raise ValueError(f"requested robustness {gamma:.9f} is below the classic optimum {g_lo:.9f}")
    if gamma > g_hi + 1e-9:
        raise ValueError(f"requested robustness {gamma:.9f} exceeds gamma_nu={g_hi:.9f}; clamp first")
    tail = list(range(y + 1, b + 1))
    r = 1
    while True:
        support = list(range(1, r + 1)) + tail
        solution = _equalized_system(support, support, cfg, gamma=None)
        gamma_r = float(solution[-1])
        if gamma_r <= gamma + 1e-12 or r == y:
            break
        r += 1
    support = list(range(1, r + 1)) + tail
    equal_at = list(range(1, r)) + tail
    masses = _equalized_system(support, equal_at, cfg, gamma=gamma)
    return RentBuyDistribution.from_masses(dict(zip(support, masses.tolist())))


def prsr_targets(y: int, cfg: DsrConfig, gamma_bar: float) -> RsrTargets:
    """Support size and adjusted robustness used by the explicit rule."""
    b = cfg.b
    g_xi = gamma_xi(cfg)
    if not (g_xi - 1e-12 <= gamma_bar < b - 2):
        raise ValueError(
            f"gamma_bar must lie in [e_b/(e_b-1), b-2) = [{g_xi:.9f}, {b - 2}), got {gamma_bar}")
    r = b / (b - 1.0)
    n = math.ceil(math.log1p(1.0 / (gamma_bar - 1.0)) / math.log(r))
    n = min(max(n, 1), b)
    gamma_prime = 1.0 + 1.0 / (r ** n - 1.0)
    e_b = r ** b
    g_nu = gamma_nu(y, cfg) if y < b else None
    return RsrTargets(gamma_bar=gamma_bar, e_b=e_b, n=n, gamma_prime=gamma_prime,
                      gamma_xi=g_xi, gamma_nu=g_nu)


def prsr(y: int, cfg: DsrConfig, gamma_bar: float) -> RentBuyDistribution:
    """Explicit prediction-specific randomized rule.

    Picks the smallest equalizing support meeting the robustness budget,
    then boosts consistency (predictions >= b) or seeks robustness up to
    ``min(gamma_nu, gamma')`` (predictions < b).
    """
    if not isinstance(y, int) or y < 1:
        raise ValueError(f"prediction y must be a positive integer, got {y!r}")
    targets = prsr_targets(y, cfg, gamma_bar)
    if y >= cfg.b:
        return operation_a(equalizing_distribution(1, targets.n, cfg), y, cfg)
    base = equalizing_distribution(y + 1, cfg.b, cfg)
    gamma = min(targets.gamma_nu, targets.gamma_prime)
    return operation_b(base, gamma, y, cfg)


def _lp_support(y: int, cfg: DsrConfig) -> list[int]:
    days = list(range(1, cfg.b + 1))
    if y >= cfg.b:
        days.append(y + 1)
    return days


def _ratio_row(days: list[int], x: int, cfg: DsrConfig) -> np.ndarray:
    arr = np.array(days, dtype=float)
    return np.where(arr > x, float(x), cfg.b - 1.0 + arr)


def lp_min_consistency(y: int, cfg: DsrConfig,
                       gamma_bar: float) -> tuple[float, RentBuyDistribution]:
    """First-stage LP: the best consistency of any ``gamma_bar``-robust
    distribution supported on [b] plus the day after the prediction."""
    days = _lp_support(y, cfg)
    n = len(days)
    ineq_rows, bounds = [], []
    for x in days:
        ineq_rows.append(np.concatenate([_ratio_row(days, x, cfg), [0.0]]))
        bounds.append(gamma_bar * min(cfg.b, x))
    ineq_rows.append(np.concatenate([_ratio_row(days, y, cfg), [-float(min(cfg.b, y))]]))
    bounds.append(0.0)
    lp = LinearProgram(
        objective=np.concatenate([np.zeros(n), [1.0]]),
        ineq_rows=np.array(ineq_rows),
        ineq_bounds=np.array(bounds),
        eq_rows=np.array([np.concatenate([np.ones(n), [0.0]])]),
        eq_values=np.array([1.0]),
    )
    sol = solve_lp(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise ValueError(f"consistency LP is {sol.status.value} (gamma_bar={gamma_bar})")
    pi = RentBuyDistribution.from_masses(dict(zip(days, sol.values[:n].tolist())))
    return float(sol.values[n]), pi


def lp_min_robustness(y: int, cfg: DsrConfig,
                      beta_star: float) -> tuple[float, RentBuyDistribution]:
    """Second-stage LP: the best robustness at consistency ``beta_star``."""
    days = _lp_support(y, cfg)
    n = len(days)
    ineq_rows, bounds = [], []
    for x in days:
        ineq_rows.append(np.concatenate([_ratio_row(days, x, cfg), [-float(min(cfg.b, x))]]))
        bounds.append(0.0)
    ineq_rows.append(np.concatenate([_ratio_row(days, y, cfg), [0.0]]))
    bounds.append(beta_star * min(cfg.b, y))
    lp = LinearProgram(
        objective=np.concatenate([np.zeros(n), [1.0]]),
        ineq_rows=np.array(ineq_rows),
        ineq_bounds=np.array(bounds),
        eq_rows=np.array([np.concatenate([np.ones(n), [0.0]])]),
        eq_values=np.array([1.0]),
    )
    sol = solve_lp(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise ValueError(f"robustness LP is {sol.status.value} (beta_star={beta_star})")
    pi = RentBuyDistribution.from_masses(dict(zip(days, sol.values[:n].tolist())))
    return float(sol.values[n]), pi


def meta_rsr(y: int, cfg: DsrConfig,
             gamma_bar: float) -> tuple[RentBuyDistribution, MetricsPair]:
    """LP meta-route: minimize consistency at the robustness budget, then
    minimize robustness at that consistency.  Returns the final
    distribution with its measured metrics."""
    beta_star, _ = lp_min_consistency(y, cfg, gamma_bar)
    # A hair of slack keeps stage two feasible at the solver tolerance.
    _, pi = lp_min_robustness(y, cfg, beta_star + 1e-9)
    return pi, rsr_metrics(pi, y, cfg)


def sample_purchase_day(pi: RentBuyDistribution, rng: int | np.random.Generator) -> int:
    """Inverse-CDF sample over the sorted support; deterministic per seed."""
    gen = np.random.Generator(np.random.PCG64(rng)) if isinstance(rng, int) else rng
    days, masses = pi.arrays()
    cdf = np.cumsum(masses)
    idx = int(np.searchsorted(cdf, gen.random(), side="right"))
    return int(days[min(idx, len(days) - 1)])
