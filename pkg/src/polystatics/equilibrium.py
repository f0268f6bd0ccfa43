"""Assembly and rank analysis of the equilibrium matrix.

Around every equation edge of the working complex, the scaled normals of its
incident active faces must sum to zero in each coordinate.  Stacking the
three coordinate blocks gives the equilibrium matrix

    A = [ C_ef * N_x ]
        [ C_ef * N_y ]      (3 e'  x  f')
        [ C_ef * N_z ]

where N_* are diagonal matrices of unit-normal coordinates.  Solutions of
A q = 0 are exactly the force-density vectors for which a reciprocal diagram
exists; dim null(A) = f' - rank(A) is the number of independent dual edges a
designer may set freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import CellComplex
from .errors import EmptySystem
from .topology import IncidenceSet

#: Relative singular-value threshold used for rank decisions by default.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class AnalysisReport:
    """Rank/nullity summary, with the singular spectrum for auditing.

    ``sv_above``/``sv_below`` bracket the rank cutoff: the smallest singular
    value counted into the rank and the largest one discarded, both relative
    to the largest singular value.  A narrow gap flags a borderline rank.
    """

    rank: int
    dof: int
    independent_faces: tuple[int, ...]
    independent_face_ids: tuple[int, ...]
    singular_values: tuple[float, ...]
    sv_above: float
    sv_below: float
    zero_only: bool

    def lines(self) -> list[str]:
        out = [
            f"rank {self.rank}, dof {self.dof}",
            f"independent face columns: {list(self.independent_faces)}",
            f"independent face ids:     {list(self.independent_face_ids)}",
            f"singular-value gap: kept >= {self.sv_above:.3e}, "
            f"dropped <= {self.sv_below:.3e} (relative)",
        ]
        if self.zero_only:
            out.append(
                "warning: dof = 0, the only solution is q = 0 and the "
                "reciprocal diagram collapses into a single point"
            )
        return out


@dataclass(frozen=True)
class EquilibriumSystem:
    """The assembled system plus eagerly computed analysis results."""

    A: np.ndarray
    face_normals: np.ndarray  # (f', 3) unit normals of active faces
    face_ids: tuple[int, ...]  # active face ids, one per column
    row_edges: tuple[int, ...]  # equation edge ids, one per block row
    cell_ids: tuple[int, ...]  # active cell ids (dual vertex order)
    rank: int
    dof: int
    independent_faces: tuple[int, ...]  # non-pivot column indices
    singular_values: np.ndarray

    @property
    def N_x(self) -> np.ndarray:
        return np.diag(self.face_normals[:, 0])

    @property
    def N_y(self) -> np.ndarray:
        return np.diag(self.face_normals[:, 1])

    @property
    def N_z(self) -> np.ndarray:
        return np.diag(self.face_normals[:, 2])

    @property
    def independent_face_ids(self) -> tuple[int, ...]:
        return tuple(self.face_ids[c] for c in self.independent_faces)

    def residual(self, q: np.ndarray) -> float:
        """Scaled equilibrium residual ||A q||_inf / max(1, ||q||_inf)."""
        q = np.asarray(q, dtype=float)
        return float(np.abs(self.A @ q).max(initial=0.0)) / max(
            1.0, float(np.abs(q).max(initial=0.0))
        )


def assemble(
    cx: CellComplex, inc: IncidenceSet | None = None, rank_tol: float = RANK_TOL
) -> EquilibriumSystem:
    """Build the equilibrium matrix and analyze it.

    Raises ``EmptySystem`` when no equation edges remain after excluding the
    stress cell's edges (every edge of the complex lies on the stress cell).
    """
    cx.require_valid()
    if inc is None:
        inc = IncidenceSet.from_complex(cx)
    if not cx.equation_edges:
        raise EmptySystem(
            "every edge lies on the excluded stress cell; no equilibrium "
            "equations remain"
        )
    normals = np.array([cx.faces[fi].normal for fi in cx.active_faces])
    A = np.vstack(
        [inc.C_ef * normals[:, 0], inc.C_ef * normals[:, 1], inc.C_ef * normals[:, 2]]
    )
    A.flags.writeable = False
    sv = np.linalg.svd(A, compute_uv=False)
    rank = _rank_from_spectrum(sv, rank_tol)
    from .solvers import rref  # deferred: solvers imports this module's types

    _, pivots = rref(np.asarray(A), pivot_tol=rank_tol)
    independent = tuple(c for c in range(A.shape[1]) if c not in set(pivots))
    return EquilibriumSystem(
        A=A,
        face_normals=normals,
        face_ids=tuple(cx.active_faces),
        row_edges=tuple(cx.equation_edges),
        cell_ids=tuple(cx.active_cells),
        rank=rank,
        dof=A.shape[1] - rank,
        independent_faces=independent,
        singular_values=sv,
    )


def _rank_from_spectrum(sv: np.ndarray, rank_tol: float) -> int:
    if sv.size == 0 or sv[0] <= 0.0:
        return 0
    return int(np.sum(sv > rank_tol * sv[0]))


def analyze(sys: EquilibriumSystem, rank_tol: float = RANK_TOL) -> AnalysisReport:
    """Rank, nullity and independent-edge report at the given tolerance.

    The pivot-based independent set is recomputed only when ``rank_tol``
    differs from the eagerly cached analysis.
    """
    sv = sys.singular_values
    rank = _rank_from_spectrum(sv, rank_tol)
    if rank == sys.rank:
        independent = sys.independent_faces
    else:
        from .solvers import rref

        _, pivots = rref(np.asarray(sys.A), pivot_tol=rank_tol)
        independent = tuple(
            c for c in range(sys.A.shape[1]) if c not in set(pivots)
        )
    dof = sys.A.shape[1] - rank
    rel = sv / sv[0] if sv.size and sv[0] > 0 else sv
    sv_above = float(rel[rank - 1]) if rank > 0 else 0.0
    sv_below = float(rel[rank]) if rank < len(rel) else 0.0
    return AnalysisReport(
        rank=rank,
        dof=dof,
        independent_faces=independent,
        independent_face_ids=tuple(sys.face_ids[c] for c in independent),
        singular_values=tuple(float(s) for s in sv),
        sv_above=sv_above,
        sv_below=sv_below,
        zero_only=(dof == 0),
    )
