"""Density-vector solvers for A q = 0.

Three routes, each useful for a different design intent:

* ``solve_mpi``: q = (I - A+ A) xi projects any seed vector onto the
  nullspace.  Every solution has this form, so the projector also acts as a
  universal fixed-point check.  An all-ones seed spreads edge lengths evenly
  and preserves symmetry of symmetric inputs.
* ``solve_rref``: the reduced row echelon form identifies the independent
  (non-pivot) columns; the user fixes those dual edge lengths directly via
  zeta and the dependent part follows as q_r = -B zeta.
* ``solve_lp``: minimize lambda . q subject to A q = 0 and q >= 1, for
  strictly positive solutions (compression-only or tension-only systems).
  Solved in nullspace coordinates, where the equality constraints hold by
  construction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .equilibrium import RANK_TOL, EquilibriumSystem
from .errors import DimensionMismatch, Infeasible, ZeroDof, ZeroSolutionWarning

#: Entries below this fraction of the current column maximum are treated as
#: zero during pivot selection.
PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class SolverParams:
    """User vectors, one per method: xi (projector seed), zeta (independent
    edge lengths), lam (positive objective weights)."""

    xi: np.ndarray | None = None
    zeta: np.ndarray | None = None
    lam: np.ndarray | None = None


def pseudoinverse(A: np.ndarray, rcond: float = RANK_TOL) -> np.ndarray:
    """Moore-Penrose inverse via SVD with a relative singular-value cutoff."""
    A = np.asarray(A, dtype=float)
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((A.shape[1], A.shape[0]))
    inv = np.where(s > rcond * s[0], 1.0 / np.where(s == 0, 1.0, s), 0.0)
    return (Vt.T * inv) @ U.T


def nullspace_basis(A: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the right nullspace (columns), via SVD."""
    A = np.asarray(A, dtype=float)
    _, s, Vt = np.linalg.svd(A)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > rank_tol * s[0]))
    return Vt[rank:].T


def rref(A: np.ndarray, pivot_tol: float = PIVOT_TOL) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form by Gauss-Jordan with partial pivoting.

    Returns ``(R, pivots)``.  In each column the candidate with the largest
    absolute value is chosen (first index on ties); a column whose remaining
    candidates all fall below ``pivot_tol`` times the column's current
    maximum magnitude contributes no pivot and stays free.
    """
    R = np.array(A, dtype=float)
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        scale = float(np.abs(R[:, col]).max(initial=0.0))
        cand = np.abs(R[row:, col])
        best = int(np.argmax(cand))
        if cand[best] <= pivot_tol * scale or cand[best] == 0.0:
            continue
        pr = row + best
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        R[row] /= R[row, col]
        others = [r for r in range(m) if r != row]
        R[others] -= np.outer(R[others, col], R[row])
        R[:, col] = 0.0
        R[row, col] = 1.0
        pivots.append(col)
        row += 1
    return R, pivots


def _require_dof(sys: EquilibriumSystem) -> None:
    if sys.dof == 0:
        raise ZeroDof(
            "the equilibrium matrix has full column rank; the reciprocal "
            "diagram collapses into a single point"
        )


def _warn_if_zero(q: np.ndarray, ref_scale: float) -> np.ndarray:
    if float(np.abs(q).max(initial=0.0)) <= 1e-12 * max(1.0, ref_scale):
        warnings.warn(
            "solver produced the all-zero density vector", ZeroSolutionWarning
        )
    return q


def solve_mpi(sys: EquilibriumSystem, xi: np.ndarray | None = None) -> np.ndarray:
    """q = (I - A+ A) xi; xi defaults to all ones."""
    _require_dof(sys)
    f = sys.A.shape[1]
    xi = np.ones(f) if xi is None else np.asarray(xi, dtype=float)
    if xi.shape != (f,):
        raise DimensionMismatch(f"xi must have length {f}, got {xi.shape}")
    Aplus = pseudoinverse(np.asarray(sys.A))
    q = xi - Aplus @ (sys.A @ xi)
    return _warn_if_zero(q, float(np.abs(xi).max(initial=0.0)))


def solve_rref(sys: EquilibriumSystem, zeta: np.ndarray | None = None) -> np.ndarray:
    """Fix the independent edge lengths to zeta; dependent ones follow.

    After reordering columns so the pivots lead, the reduced system reads
    (I | B) q = 0, so the pivot part is q_r = -B zeta.  The result is
    returned in original column order.
    """
    _require_dof(sys)
    zeta = np.ones(sys.dof) if zeta is None else np.asarray(zeta, dtype=float)
    if zeta.shape != (sys.dof,):
        raise DimensionMismatch(
            f"zeta must have length dof = {sys.dof}, got {zeta.shape}"
        )
    R, pivots = rref(np.asarray(sys.A))
    free = [c for c in range(sys.A.shape[1]) if c not in set(pivots)]
    if len(free) != sys.dof:
        raise DimensionMismatch(
            f"pivot count {len(pivots)} disagrees with rank {sys.rank}; "
            "the rank is numerically borderline, adjust the tolerance"
        )
    q = np.zeros(sys.A.shape[1])
    q[free] = zeta
    B = R[: len(pivots)][:, free]
    q[pivots] = -B @ zeta
    return _warn_if_zero(q, float(np.abs(zeta).max(initial=0.0)))


def solve_lp(sys: EquilibriumSystem, lam: np.ndarray | None = None) -> np.ndarray:
    """Minimize lam . q subject to A q = 0 and q >= 1 componentwise.

    lam must be strictly positive (defaults to all ones, minimizing the total
    edge length of the reciprocal diagram).  Raises ``Infeasible`` when the
    nullspace contains no such positive vector.
    """
    _require_dof(sys)
    f = sys.A.shape[1]
    lam = np.ones(f) if lam is None else np.asarray(lam, dtype=float)
    if lam.shape != (f,):
        raise DimensionMismatch(f"lambda must have length {f}, got {lam.shape}")
    if not (lam > 0).all():
        raise DimensionMismatch("lambda must be strictly positive componentwise")
    N = nullspace_basis(np.asarray(sys.A))
    # q = N t; the equalities hold identically, leaving N t >= 1.
    res = linprog(
        c=lam @ N,
        A_ub=-N,
        b_ub=-np.ones(f),
        bounds=[(None, None)] * N.shape[1],
        method="highs",
    )
    if res.status == 2:
        raise Infeasible(
            "no density vector with every dual edge length >= 1 exists for "
            "this complex"
        )
    if not res.success:
        raise Infeasible(f"linear program failed: {res.message}")
    return N @ res.x


def run_solver(
    sys: EquilibriumSystem, method: str, params: SolverParams | None = None
) -> np.ndarray:
    """Dispatch by method name ('mpi', 'rref' or 'lp')."""
    params = params or SolverParams()
    if method == "mpi":
        return solve_mpi(sys, params.xi)
    if method == "rref":
        return solve_rref(sys, params.zeta)
    if method == "lp":
        return solve_lp(sys, params.lam)
    raise ValueError(f"unknown method {method!r}; expected mpi, rref or lp")
