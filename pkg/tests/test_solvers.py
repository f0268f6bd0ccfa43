import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from polystatics import (
    DimensionMismatch,
    Infeasible,
    ZeroDof,
    ZeroSolutionWarning,
    assemble,
    pseudoinverse,
    rref,
    run_solver,
    solve_lp,
    solve_mpi,
    solve_rref,
)
from polystatics.solvers import SolverParams
from polystatics import fixtures

from conftest import svd_nullspace

RESIDUAL_TOL = 1e-8


def residual(sys, q):
    return np.abs(sys.A @ q).max() / max(1.0, np.abs(q).max())


# -- pseudoinverse -----------------------------------------------------------


def test_pseudoinverse_identity():
    assert np.allclose(pseudoinverse(np.eye(4)), np.eye(4))


def test_pseudoinverse_zero_matrix():
    M = pseudoinverse(np.zeros((3, 5)))
    assert M.shape == (5, 3)
    assert np.all(M == 0.0)


def test_pseudoinverse_penrose_identities(tetra):
    A = np.asarray(assemble(tetra).A)
    M = pseudoinverse(A)
    scale = np.abs(A).max()
    assert np.abs(A @ M @ A - A).max() <= 1e-9 * scale
    assert np.abs(M @ A @ M - M).max() <= 1e-9 * max(1.0, np.abs(M).max())
    # SVD-based library implementation as an independent oracle
    assert np.allclose(M, np.linalg.pinv(A), atol=1e-10)


# -- rref --------------------------------------------------------------------


def test_rref_identity():
    R, pivots = rref(np.eye(5))
    assert np.allclose(R, np.eye(5))
    assert pivots == [0, 1, 2, 3, 4]


def test_rref_tetra_has_five_pivots(tetra):
    sys = assemble(tetra)
    R, pivots = rref(np.asarray(sys.A))
    assert len(pivots) == 5
    # reduced form: each pivot column is a unit vector
    for row, col in enumerate(pivots):
        expect = np.zeros(R.shape[0])
        expect[row] = 1.0
        assert np.allclose(R[:, col], expect)


@pytest.mark.parametrize("seed,m,n,k", [(0, 8, 6, 3), (1, 5, 9, 4), (2, 7, 7, 7), (3, 6, 4, 1)])
def test_rref_rank_matches_svd_oracle(seed, m, n, k):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(m, k)) @ rng.normal(size=(k, n))
    _, pivots = rref(A)
    oracle = np.linalg.matrix_rank(A, tol=1e-10 * np.linalg.svd(A, compute_uv=False)[0])
    assert len(pivots) == oracle == k


def test_rref_zero_rows_sorted_to_bottom(tetra):
    sys = assemble(tetra)
    R, pivots = rref(np.asarray(sys.A))
    r = len(pivots)
    assert np.allclose(R[r:], 0.0, atol=1e-12)


# -- solve_mpi ---------------------------------------------------------------


def test_mpi_uniform_seed_gives_uniform_solution(tetra):
    sys = assemble(tetra)
    q = solve_mpi(sys)  # xi defaults to ones
    assert np.allclose(q, q[0])
    assert q[0] > 0
    # oracle: orthogonal projection onto the SVD nullspace basis
    N = svd_nullspace(sys.A)
    assert np.allclose(q, N @ (N.T @ np.ones(6)), atol=1e-10)
    assert residual(sys, q) <= RESIDUAL_TOL


def test_mpi_fixes_nullspace_vectors(tetra):
    sys = assemble(tetra)
    N = svd_nullspace(sys.A)
    xi = N[:, 0] * 3.7
    q = solve_mpi(sys, xi)
    assert np.abs(q - xi).max() <= 1e-9 * np.abs(xi).max()


def test_mpi_rowspace_seed_warns_zero(tetra):
    sys = assemble(tetra)
    xi = np.asarray(sys.A).T @ np.arange(1.0, 13.0)  # row-space vector
    with pytest.warns(ZeroSolutionWarning):
        q = solve_mpi(sys, xi)
    assert np.abs(q).max() <= 1e-9 * np.abs(xi).max()


def test_mpi_zero_dof_raises():
    sys = assemble(fixtures.glued_boxes(stress_cell=0))
    with pytest.raises(ZeroDof):
        solve_mpi(sys)


def test_mpi_preserves_symmetry(tetra):
    # the regular fixture has uniform edges; an all-ones seed must keep them
    sys = assemble(tetra)
    q = solve_mpi(sys, np.ones(6))
    assert np.ptp(q) <= 1e-12


# -- solve_rref --------------------------------------------------------------


def test_rref_solution_scales_the_unit_solution(tetra):
    sys = assemble(tetra)
    q1 = solve_rref(sys, np.array([1.0]))
    q2 = solve_rref(sys, np.array([2.0]))
    assert np.allclose(q2, 2.0 * q1)
    # oracle: the one-dimensional nullspace from the SVD, rescaled
    N = svd_nullspace(sys.A)[:, 0]
    ref = N / N[sys.independent_faces[0]]
    assert np.allclose(q1, ref, atol=1e-9)


def test_rref_zero_zeta_warns(tetra):
    sys = assemble(tetra)
    with pytest.warns(ZeroSolutionWarning):
        q = solve_rref(sys, np.zeros(1))
    assert np.all(q == 0)


def test_rref_wrong_length_raises(tetra):
    sys = assemble(tetra)
    with pytest.raises(DimensionMismatch):
        solve_rref(sys, np.ones(3))


def test_rref_sets_independent_entries_exactly():
    sys = assemble(fixtures.box_grid(5, 5, 1))
    assert sys.dof == 8
    zeta = np.arange(1.0, 9.0)
    q = solve_rref(sys, zeta)
    assert np.allclose(q[list(sys.independent_faces)], zeta)
    assert residual(sys, q) <= RESIDUAL_TOL


@given(st.floats(-50, 50).filter(lambda c: abs(c) > 1e-6))
def test_rref_homogeneity(c):
    sys = assemble(fixtures.box_grid(2, 2, 1))
    zeta = np.array([1.0, -0.5])
    assert np.allclose(solve_rref(sys, c * zeta), c * solve_rref(sys, zeta))


def test_rref_output_lies_in_nullspace_oracle(corpus):
    for name, cx in corpus:
        sys = assemble(cx)
        zeta = 1.0 + 0.1 * np.arange(sys.dof)
        q = solve_rref(sys, zeta)
        N = svd_nullspace(sys.A)
        off = q - N @ (N.T @ q)
        assert np.linalg.norm(off) <= 1e-8 * np.linalg.norm(q), name


# -- solve_lp ----------------------------------------------------------------


def test_lp_tetra_all_ones(tetra):
    sys = assemble(tetra)
    q = solve_lp(sys)
    assert np.abs(q - 1.0).max() <= 1e-8


def test_lp_oracle_one_dimensional(tetra):
    # dof = 1: q = t * qhat with qhat > 0, so the optimum is
    # t* = max_i 1/qhat_i and the objective lam . qhat * t*.
    sys = assemble(tetra)
    lam = np.array([1.0, 2.0, 3.0, 1.0, 2.0, 3.0])
    q = solve_lp(sys, lam)
    qhat = svd_nullspace(sys.A)[:, 0]
    qhat = qhat if qhat[0] > 0 else -qhat
    t_star = np.max(1.0 / qhat)
    assert np.isclose(lam @ q, (lam @ qhat) * t_star, rtol=1e-9)


def test_lp_feasible_corpus_q_at_least_one(corpus):
    for name, cx in corpus:
        sys = assemble(cx)
        try:
            q = solve_lp(sys)
        except Infeasible:
            continue
        assert (q >= 1.0 - 1e-9).all(), name
        assert residual(sys, q) <= RESIDUAL_TOL, name
        # cross-check feasibility with the full-variable formulation
        full = linprog(
            np.ones(sys.A.shape[1]),
            A_eq=np.asarray(sys.A),
            b_eq=np.zeros(sys.A.shape[0]),
            bounds=[(1, None)] * sys.A.shape[1],
            method="highs",
        )
        assert full.status == 0, name


def test_lp_infeasible_case():
    # re-rooting the stress cell at an interior cell makes the unique
    # nullspace direction mixed-sign, so q >= 1 cannot hold
    cx = fixtures.tetra_fixture(stress_cell=0)
    sys = assemble(cx)
    N = svd_nullspace(sys.A)
    assert N.shape[1] == 1
    v = N[:, 0]
    assert (v > 1e-9).any() and (v < -1e-9).any()  # mixed signs
    with pytest.raises(Infeasible):
        solve_lp(sys)
    # oracle: the full-variable LP agrees it is infeasible
    full = linprog(
        np.ones(sys.A.shape[1]),
        A_eq=np.asarray(sys.A),
        b_eq=np.zeros(sys.A.shape[0]),
        bounds=[(1, None)] * sys.A.shape[1],
        method="highs",
    )
    assert full.status == 2


def test_lp_rejects_nonpositive_lambda(tetra):
    sys = assemble(tetra)
    with pytest.raises(DimensionMismatch):
        solve_lp(sys, np.array([1.0, 1.0, -1.0, 1.0, 1.0, 1.0]))


def test_lp_minimizes_total_edge_length(tetra):
    # with lam = 1 the objective is the total dual edge length (unit normals)
    sys = assemble(tetra)
    q = solve_lp(sys)
    lengths = np.abs(q) * np.linalg.norm(sys.face_normals, axis=1)
    assert np.isclose(lengths.sum(), 6.0, atol=1e-7)


# -- cross-solver contracts ---------------------------------------------------


def test_all_solvers_satisfy_residual_invariant(corpus):
    for name, cx in corpus:
        sys = assemble(cx)
        outputs = [solve_mpi(sys), solve_rref(sys, np.ones(sys.dof))]
        try:
            outputs.append(solve_lp(sys))
        except Infeasible:
            pass
        for q in outputs:
            assert residual(sys, q) <= RESIDUAL_TOL, name


def test_mpi_projector_is_fixed_point_for_all_solvers(corpus):
    for name, cx in corpus:
        sys = assemble(cx)
        candidates = [solve_mpi(sys), solve_rref(sys, np.ones(sys.dof))]
        try:
            candidates.append(solve_lp(sys))
        except Infeasible:
            pass
        for q in candidates:
            back = solve_mpi(sys, q)
            assert np.abs(back - q).max() <= 1e-9 * max(1.0, np.abs(q).max()), name


def test_run_solver_dispatch(tetra):
    sys = assemble(tetra)
    q1 = run_solver(sys, "mpi", SolverParams(xi=np.ones(6)))
    q2 = run_solver(sys, "rref", SolverParams(zeta=np.ones(1)))
    q3 = run_solver(sys, "lp", SolverParams())
    for q in (q1, q2, q3):
        assert residual(sys, q) <= RESIDUAL_TOL
    with pytest.raises(ValueError):
        run_solver(sys, "magic", SolverParams())
