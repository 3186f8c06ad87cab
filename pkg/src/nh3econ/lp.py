"""Dense two-phase simplex solver for small linear programs.

Problems are stated in the standard form

    minimize    c . x
    subject to  A_ub . x <= b_ub
                A_eq . x == b_eq
                x >= 0

The instances this toolkit produces are tiny (a handful of variables and
rows), so the implementation favours robustness and determinism over
speed: dense double-precision tableau, Bland's rule for both the entering
and the leaving variable (ties broken by lowest index), which guarantees
termination and makes the pivot sequence identical across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InputError, SolverError

DEFAULT_TOL = 1e-9
MAX_PIVOTS = 10_000


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_matrix(a, rows_name: str, n: int) -> np.ndarray:
    if a is None:
        return np.zeros((0, n))
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[1] != n:
        raise InputError(f"{rows_name} must be a 2-d array with {n} columns")
    return a


def _as_vector(b, name: str, m: int) -> np.ndarray:
    if b is None:
        return np.zeros(0)
    b = np.asarray(b, dtype=float).reshape(-1)
    if b.shape[0] != m:
        raise InputError(f"{name} length {b.shape[0]} does not match {m} rows")
    return b


@dataclass(frozen=True)
class LinearProgram:
    """Immutable container for one standard-form minimization problem."""

    c: np.ndarray
    a_ub: np.ndarray = None
    b_ub: np.ndarray = None
    a_eq: np.ndarray = None
    b_eq: np.ndarray = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        if c.size == 0:
            raise InputError("objective must have at least one coefficient")
        n = c.shape[0]
        a_ub = _as_matrix(self.a_ub, "a_ub", n)
        b_ub = _as_vector(self.b_ub, "b_ub", a_ub.shape[0])
        a_eq = _as_matrix(self.a_eq, "a_eq", n)
        b_eq = _as_vector(self.b_eq, "b_eq", a_eq.shape[0])
        for name, arr in (("c", c), ("a_ub", a_ub), ("b_ub", b_ub),
                          ("a_eq", a_eq), ("b_eq", b_eq)):
            if arr.size and not np.all(np.isfinite(arr)):
                raise InputError(f"{name} contains non-finite entries")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)

    @property
    def n(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray = None
    objective: float = float("nan")
    residual: float = float("nan")
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    pivot_col = tableau[:, col].copy()
    pivot_col[row] = 0.0
    tableau -= np.outer(pivot_col, tableau[row])
    basis[row] = col


def _run_simplex(tableau: np.ndarray, basis: np.ndarray, n_cols: int,
                 tol: float, max_iter: int, start_iter: int) -> tuple[int, bool]:
    """Iterate Bland pivots on a tableau whose last row holds reduced costs.

    Returns (iterations used, bounded). Row operations keep the last row's
    final entry equal to the negated objective value.
    """
    m = tableau.shape[0] - 1
    iterations = start_iter
    while True:
        if iterations >= max_iter:
            raise SolverError(f"pivot limit {max_iter} exceeded (cycling guard)")
        reduced = tableau[-1, :n_cols]
        entering = -1
        for j in range(n_cols):  # Bland: lowest eligible index enters
            if reduced[j] < -tol and j not in basis:
                entering = j
                break
        if entering < 0:
            return iterations, True
        col = tableau[:m, entering]
        rhs = tableau[:m, -1]
        best_ratio = np.inf
        leaving = -1
        for i in range(m):
            if col[i] > tol:
                ratio = rhs[i] / col[i]
                # lowest ratio; ties broken by lowest basic variable index
                if ratio < best_ratio - tol or (
                    abs(ratio - best_ratio) <= tol
                    and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return iterations, False
        _pivot(tableau, basis, leaving, entering)
        iterations += 1


def solve(lp: LinearProgram, tol: float = DEFAULT_TOL,
          max_iter: int = MAX_PIVOTS) -> LpSolution:
    """Solve a linear program with the two-phase simplex method.

    Deterministic for identical inputs. Raises SolverError if the pivot
    guard trips; returns statuses INFEASIBLE/UNBOUNDED instead of raising
    for well-posed but unsolvable programs.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    n = lp.n
    m_ub = lp.a_ub.shape[0]
    m_eq = lp.a_eq.shape[0]
    m = m_ub + m_eq

    if m == 0:
        # only x >= 0 constrains the problem
        if np.all(lp.c >= -tol):
            x = np.zeros(n)
            return LpSolution(LpStatus.OPTIMAL, x, 0.0, 0.0, 0)
        return LpSolution(LpStatus.UNBOUNDED)

    # Equality rows with slack columns for the inequalities.
    a = np.zeros((m, n + m_ub))
    b = np.zeros(m)
    a[:m_ub, :n] = lp.a_ub
    a[:m_ub, n:n + m_ub] = np.eye(m_ub)
    b[:m_ub] = lp.b_ub
    a[m_ub:, :n] = lp.a_eq
    b[m_ub:] = lp.b_eq

    # Normalize to b >= 0 (flips slack signs for the affected rows).
    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0

    n_slack = n + m_ub
    # A slack column can seed the basis when its row kept b >= 0.
    basis = np.full(m, -1, dtype=int)
    needs_artificial = []
    for i in range(m):
        if i < m_ub and not neg[i]:
            basis[i] = n + i
        else:
            needs_artificial.append(i)

    n_art = len(needs_artificial)
    n_total = n_slack + n_art
    tableau = np.zeros((m + 1, n_total + 1))
    tableau[:m, :n_slack] = a
    tableau[:m, -1] = b
    for k, i in enumerate(needs_artificial):
        tableau[i, n_slack + k] = 1.0
        basis[i] = n_slack + k

    iterations = 0
    if n_art:
        # Phase 1: minimize the sum of artificials. Entering candidates are
        # restricted to structural and slack columns so that an artificial
        # never re-enters the basis once it has left.
        tableau[-1, :] = 0.0
        for i in needs_artificial:
            tableau[-1, :] -= tableau[i, :]
        iterations, _ = _run_simplex(tableau, basis, n_slack, tol, max_iter, 0)
        phase1_obj = -tableau[-1, -1]
        if phase1_obj > tol * max(1.0, float(np.abs(b).max(initial=1.0))):
            return LpSolution(LpStatus.INFEASIBLE, iterations=iterations)
        # Drive leftover zero-valued artificials out of the basis.
        keep_rows = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= n_slack:
                row = tableau[i, :n_slack]
                candidates = np.nonzero(np.abs(row) > tol)[0]
                if candidates.size:
                    _pivot(tableau, basis, i, int(candidates[0]))
                else:
                    keep_rows[i] = False  # redundant constraint
        if not np.all(keep_rows):
            tableau = np.vstack([tableau[:m][keep_rows], tableau[-1:]])
            basis = basis[keep_rows]
            m = int(keep_rows.sum())

    # Phase 2 objective row: reduced costs of the original objective.
    tableau = np.hstack([tableau[:, :n_slack], tableau[:, -1:]])
    tableau[-1, :] = 0.0
    tableau[-1, :n] = lp.c
    for i in range(m):
        if tableau[-1, basis[i]] != 0.0:
            tableau[-1, :] -= tableau[-1, basis[i]] * tableau[i, :]

    iterations, bounded = _run_simplex(tableau, basis, n_slack, tol,
                                       max_iter, iterations)
    if not bounded:
        return LpSolution(LpStatus.UNBOUNDED, iterations=iterations)

    x_full = np.zeros(n_slack)
    x_full[basis[:m]] = tableau[:m, -1]
    x = x_full[:n]
    objective = float(lp.c @ x)
    residual = _max_violation(lp, x)
    return LpSolution(LpStatus.OPTIMAL, x, objective, residual, iterations)


def _max_violation(lp: LinearProgram, x: np.ndarray) -> float:
    """Largest constraint violation of x, including negativity of x."""
    worst = float(max(0.0, -x.min(initial=0.0)))
    if lp.a_ub.shape[0]:
        worst = max(worst, float(np.max(lp.a_ub @ x - lp.b_ub, initial=0.0)))
    if lp.a_eq.shape[0]:
        worst = max(worst, float(np.max(np.abs(lp.a_eq @ x - lp.b_eq), initial=0.0)))
    return worst
