"""Reciprocal polyhedral diagrams for 3D graphic statics.

Pipeline: parse a polyhedral cell complex, build its signed incidence
matrices, assemble the equilibrium matrix A, solve A q = 0 by projection,
row reduction or linear programming, construct the reciprocal diagram from
q, classify member forces, and verify reciprocity.
"""

__version__ = "0.1.0"

from .complex import (
    CellComplex,
    Face,
    Cell,
    ValidationReport,
    complex_to_document,
    parse_complex,
    validate,
)
from .dual import (
    DualDiagram,
    ReciprocityReport,
    build_dual_algebraic,
    build_dual_graphsearch,
    classify_members,
    edge_vectors,
    verify_reciprocity,
)
from .equilibrium import AnalysisReport, EquilibriumSystem, analyze, assemble
from .errors import (
    DanglingFace,
    DimensionMismatch,
    DisconnectedComplex,
    EmptySystem,
    InconsistentOrientation,
    Infeasible,
    MalformedDocument,
    NonPlanarFace,
    OpenCell,
    PolystaticsError,
    RoleMismatch,
    ZeroDof,
    ZeroSolution,
    ZeroSolutionWarning,
)
from .solvers import (
    SolverParams,
    nullspace_basis,
    pseudoinverse,
    rref,
    run_solver,
    solve_lp,
    solve_mpi,
    solve_rref,
)
from .topology import (
    IncidenceSet,
    construction_signs,
    edge_face_matrix,
    edge_vertex_matrix,
    face_cell_matrix,
    propagate_cell_orientations,
)

__all__ = [
    "AnalysisReport",
    "Cell",
    "CellComplex",
    "DanglingFace",
    "DimensionMismatch",
    "DisconnectedComplex",
    "DualDiagram",
    "EmptySystem",
    "EquilibriumSystem",
    "Face",
    "IncidenceSet",
    "InconsistentOrientation",
    "Infeasible",
    "MalformedDocument",
    "NonPlanarFace",
    "OpenCell",
    "PolystaticsError",
    "ReciprocityReport",
    "RoleMismatch",
    "SolverParams",
    "ValidationReport",
    "ZeroDof",
    "ZeroSolution",
    "ZeroSolutionWarning",
    "analyze",
    "assemble",
    "build_dual_algebraic",
    "build_dual_graphsearch",
    "classify_members",
    "complex_to_document",
    "construction_signs",
    "edge_face_matrix",
    "edge_vectors",
    "edge_vertex_matrix",
    "face_cell_matrix",
    "nullspace_basis",
    "parse_complex",
    "propagate_cell_orientations",
    "pseudoinverse",
    "rref",
    "run_solver",
    "solve_lp",
    "solve_mpi",
    "solve_rref",
    "validate",
    "verify_reciprocity",
]
