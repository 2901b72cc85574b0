"""Dense two-phase simplex and linear-system solves for small problems.

The solver is self-contained on purpose: every program it sees here has at
most a few hundred variables and constraints, and Bland's rule keeps the
pivot sequence finite without any of the machinery a production solver
needs.  Feasibility is certified at 1e-8; pivots below 1e-9 are treated as
zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

FEASIBILITY_TOL = 1e-8
PIVOT_TOL = 1e-9

_MAX_ITERATIONS_FACTOR = 5000


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_matrix(rows, n_cols: int) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.size == 0:
        return np.zeros((0, n_cols))
    if arr.ndim != 2 or arr.shape[1] != n_cols:
        raise ValueError(f"constraint matrix must have {n_cols} columns, got shape {arr.shape}")
    return arr


@dataclass
class LinearProgram:
    """minimize objective @ z  s.t.  ineq_rows @ z <= ineq_bounds,
    eq_rows @ z == eq_values,  var_lower <= z <= var_upper."""

    objective: np.ndarray
    ineq_rows: np.ndarray
    ineq_bounds: np.ndarray
    eq_rows: np.ndarray
    eq_values: np.ndarray
    var_lower: np.ndarray | None = None
    var_upper: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float)
        n = self.objective.size
        self.ineq_rows = _as_matrix(self.ineq_rows, n)
        self.ineq_bounds = np.asarray(self.ineq_bounds, dtype=float).reshape(-1)
        self.eq_rows = _as_matrix(self.eq_rows, n)
        self.eq_values = np.asarray(self.eq_values, dtype=float).reshape(-1)
        if self.ineq_rows.shape[0] != self.ineq_bounds.size:
            raise ValueError("inequality rows and bounds disagree in length")
        if self.eq_rows.shape[0] != self.eq_values.size:
            raise ValueError("equality rows and values disagree in length")
        if self.var_lower is None:
            self.var_lower = np.zeros(n)
        else:
            self.var_lower = np.asarray(self.var_lower, dtype=float).reshape(-1)
            if self.var_lower.size != n:
                raise ValueError("var_lower has wrong length")
        if self.var_upper is not None:
            self.var_upper = np.asarray(self.var_upper, dtype=float).reshape(-1)
            if self.var_upper.size != n:
                raise ValueError("var_upper has wrong length")
        for name, arr in (
            ("objective", self.objective),
            ("ineq_rows", self.ineq_rows),
            ("ineq_bounds", self.ineq_bounds),
            ("eq_rows", self.eq_rows),
            ("eq_values", self.eq_values),
            ("var_lower", self.var_lower),
        ):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def n_vars(self) -> int:
        return self.objective.size


@dataclass
class LpSolution:
    values: np.ndarray | None
    objective_value: float
    status: LpStatus


def _bland_iterate(tableau: np.ndarray, basis: list[int], allowed: np.ndarray) -> LpStatus:
    """Run simplex pivots on a canonical tableau in place.

    ``tableau`` has constraint rows followed by a reduced-cost row;
    the last column is the right-hand side.  ``allowed`` masks columns
    eligible to enter the basis.  Bland's rule: smallest eligible entering
    index, ties in the ratio test broken by smallest basis index.
    """
    m = tableau.shape[0] - 1
    max_iter = _MAX_ITERATIONS_FACTOR * max(m, 8)
    for _ in range(max_iter):
        costs = tableau[-1, :-1]
        candidates = np.flatnonzero((costs < -PIVOT_TOL) & allowed)
        if candidates.size == 0:
            return LpStatus.OPTIMAL
        col = int(candidates[0])
        column = tableau[:m, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return LpStatus.UNBOUNDED
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        tie_rows = rows[ratios <= best + PIVOT_TOL]
        row = int(min(tie_rows, key=lambda i: basis[i]))
        _pivot(tableau, basis, row, col)
    raise RuntimeError("simplex failed to converge (iteration cap hit)")


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0
    basis[row] = col


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Two-phase dense simplex.  Optimal solutions are re-checked against
    every constraint at 1e-8 before being returned."""
    n = lp.n_vars
    lb = lp.var_lower
    # Shift to t = z - lb >= 0; fold finite upper bounds in as extra rows.
    a_rows = [lp.ineq_rows]
    a_bounds = [lp.ineq_bounds - lp.ineq_rows @ lb if lp.ineq_rows.size else lp.ineq_bounds]
    if lp.var_upper is not None:
        finite = np.isfinite(lp.var_upper)
        if np.any(lp.var_upper[finite] < lb[finite] - FEASIBILITY_TOL):
            return LpSolution(None, float("nan"), LpStatus.INFEASIBLE)
        if np.any(finite):
            idx = np.flatnonzero(finite)
            bound_rows = np.zeros((idx.size, n))
            bound_rows[np.arange(idx.size), idx] = 1.0
            a_rows.append(bound_rows)
            a_bounds.append(lp.var_upper[idx] - lb[idx])
    A = np.vstack([r for r in a_rows if r.size]) if any(r.size for r in a_rows) else np.zeros((0, n))
    u = np.concatenate([b for b in a_bounds if b.size]) if any(b.size for b in a_bounds) else np.zeros(0)
    E = lp.eq_rows
    v = lp.eq_values - (E @ lb if E.size else np.zeros(E.shape[0]))

    m_ineq, m_eq = A.shape[0], E.shape[0]
    m = m_ineq + m_eq
    if m == 0:
        # Only bound constraints: optimum sits at the lower bound of every
        # variable with positive cost; unbounded if any cost is negative.
        if np.any(lp.objective < -PIVOT_TOL) and lp.var_upper is None:
            return LpSolution(None, float("nan"), LpStatus.UNBOUNDED)
        x = lb.copy()
        return LpSolution(x, float(lp.objective @ x), LpStatus.OPTIMAL)

    n_slack = m_ineq
    rows = np.zeros((m, n + n_slack))
    rhs = np.zeros(m)
    rows[:m_ineq, :n] = A
    rows[:m_ineq, n : n + n_slack] = np.eye(m_ineq)
    rhs[:m_ineq] = u
    if m_eq:
        rows[m_ineq:, :n] = E
        rhs[m_ineq:] = v

    negative = rhs < 0
    rows[negative] *= -1.0
    rhs[negative] *= -1.0

    # Slack is a valid basis column only for non-negated inequality rows;
    # everything else gets an artificial.
    needs_artificial = np.ones(m, dtype=bool)
    needs_artificial[:m_ineq] = negative[:m_ineq]
    art_rows = np.flatnonzero(needs_artificial)
    n_art = art_rows.size
    total = n + n_slack + n_art

    tableau = np.zeros((m + 1, total + 1))
    tableau[:m, : n + n_slack] = rows
    tableau[:m, -1] = rhs
    basis: list[int] = [0] * m
    for i in range(m_ineq):
        if not needs_artificial[i]:
            basis[i] = n + i
    for k, i in enumerate(art_rows):
        col = n + n_slack + k
        tableau[i, col] = 1.0
        basis[i] = col

    # Phase 1: minimize the sum of artificials.
    if n_art:
        tableau[-1, n + n_slack : total] = 1.0
        for i in art_rows:
            tableau[-1] -= tableau[i]
        allowed = np.ones(total, dtype=bool)
        status = _bland_iterate(tableau, basis, allowed)
        if status is not LpStatus.OPTIMAL:
            raise RuntimeError("phase-1 objective is bounded by construction")
        if -tableau[-1, -1] > FEASIBILITY_TOL:
            return LpSolution(None, float("nan"), LpStatus.INFEASIBLE)
        # Drive remaining artificials out of the basis; rows that cannot
        # pivot are redundant and dropped.
        drop: list[int] = []
        for i in range(m):
            if basis[i] >= n + n_slack:
                pivots = np.flatnonzero(np.abs(tableau[i, : n + n_slack]) > PIVOT_TOL)
                if pivots.size:
                    _pivot(tableau, basis, i, int(pivots[0]))
                else:
                    drop.append(i)
        if drop:
            keep = [i for i in range(m) if i not in drop]
            tableau = np.vstack([tableau[keep], tableau[-1:]])
            basis = [basis[i] for i in keep]
            m = len(keep)

    # Phase 2 with the true objective; artificial columns locked out.
    allowed = np.zeros(tableau.shape[1] - 1, dtype=bool)
    allowed[: n + n_slack] = True
    tableau[-1, :] = 0.0
    tableau[-1, :n] = lp.objective
    for i in range(m):
        if tableau[-1, basis[i]] != 0.0:
            tableau[-1] -= tableau[-1, basis[i]] * tableau[i]
    status = _bland_iterate(tableau, basis, allowed)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(None, float("nan"), LpStatus.UNBOUNDED)

    t = np.zeros(tableau.shape[1] - 1)
    for i in range(m):
        t[basis[i]] = tableau[i, -1]
    x = lb + t[:n]
    _check_feasible(lp, x)
    return LpSolution(x, float(lp.objective @ x), LpStatus.OPTIMAL)


def _check_feasible(lp: LinearProgram, x: np.ndarray) -> None:
    if lp.ineq_rows.size:
        worst = float(np.max(lp.ineq_rows @ x - lp.ineq_bounds))
        if worst > FEASIBILITY_TOL:
            raise ArithmeticError(f"simplex returned an infeasible point (ineq excess {worst:g})")
    if lp.eq_rows.size:
        worst = float(np.max(np.abs(lp.eq_rows @ x - lp.eq_values)))
        if worst > FEASIBILITY_TOL:
            raise ArithmeticError(f"simplex returned an infeasible point (eq residual {worst:g})")
    if np.any(x < lp.var_lower - FEASIBILITY_TOL):
        raise ArithmeticError("simplex returned a point below a lower bound")
    if lp.var_upper is not None and np.any(x > lp.var_upper + FEASIBILITY_TOL):
        raise ArithmeticError("simplex returned a point above an upper bound")


def solve_linear_system(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a dense square system with a scaled infinity-norm residual check
    (<= 1e-9 relative to max(1, ||rhs||_inf))."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float).reshape(-1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] != b.size:
        raise ValueError("matrix and right-hand side disagree in size")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("system contains non-finite entries")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"singular matrix: {exc}") from exc
    residual = float(np.max(np.abs(a @ x - b))) if b.size else 0.0
    scale = max(1.0, float(np.max(np.abs(b))) if b.size else 0.0)
    if residual > 1e-9 * scale:
        raise ArithmeticError(f"linear solve residual {residual:g} exceeds tolerance (scale {scale:g})")
    return x
