"""HTTP service exposing one loaded complex for interactive manipulation.

Endpoints (all JSON):

* ``GET  /api/complex``   primal geometry, role, stress cell, working sets
* ``GET  /api/analysis``  rank, dof, independent faces, singular spectrum
* ``POST /api/solve``     SolveRequest -> dual geometry, labels, residuals
* ``GET  /``              the viewer bundle, when one is available

The loaded complex and its equilibrium system are immutable shared state;
every solve is a pure function of the request, so identical requests yield
identical responses.  Solver failures map to HTTP 422 with a machine
readable ``error`` code; malformed requests map to 400/422.
"""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import Any

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel, Field

from . import dual as dual_mod
from .complex import CellComplex, complex_to_document
from .equilibrium import EquilibriumSystem, analyze, assemble
from .errors import PolystaticsError, RoleMismatch, ZeroSolutionWarning
from .solvers import SolverParams, run_solver
from .topology import IncidenceSet

#: Residuals above the strict tolerance but below this bound mark the
#: response "degraded"; anything worse is "failed".
DEGRADED_TOL = 1e-5


class SolveRequest(BaseModel):
    method: str = Field(pattern="^(mpi|rref|lp)$")
    xi: list[float] | None = None
    zeta: list[float] | None = None
    lam: list[float] | None = Field(default=None, alias="lambda")
    anchor_cell: int | None = None
    anchor_point: tuple[float, float, float] = (0.0, 0.0, 0.0)

    model_config = {"populate_by_name": True}


def _arr(x: list[float] | None) -> np.ndarray | None:
    return None if x is None else np.asarray(x, dtype=float)


def dual_to_payload(diagram: dual_mod.DualDiagram) -> dict[str, Any]:
    return {
        "vertices": diagram.vertices.tolist(),
        "cell_ids": list(diagram.cell_ids),
        "edges": [list(e) for e in diagram.edges],
        "edge_vectors": diagram.edge_vectors.tolist(),
        "faces": [
            {
                "primal_edge": f.primal_edge,
                "fan_faces": list(f.fan_faces),
                "vertex_cycle": list(f.vertex_cycle),
            }
            for f in diagram.faces
        ],
        "anchor_cell": diagram.anchor_cell,
        "anchor_point": diagram.anchor_point.tolist(),
    }


def solve_payload(
    cx: CellComplex,
    inc: IncidenceSet,
    sys: EquilibriumSystem,
    req: SolveRequest,
) -> dict[str, Any]:
    """Run a solver and build the full response document."""
    params = SolverParams(xi=_arr(req.xi), zeta=_arr(req.zeta), lam=_arr(req.lam))
    with warnings.catch_warnings():
        warnings.simplefilter("error", ZeroSolutionWarning)
        q = run_solver(sys, req.method, params)
    diagram = dual_mod.build_dual_algebraic(
        cx, inc, q, anchor_cell=req.anchor_cell, anchor_point=req.anchor_point
    )
    try:
        labels = dual_mod.classify_members(cx, inc, diagram, q)
        attribution = "dual_members"
    except RoleMismatch:
        # Form-diagram primal: the same rule labels the primal's members
        # through its force diagram; seed orientations at the stress cell.
        force_view = CellComplex(
            vertices=np.array(cx.vertices),
            faces=cx.faces,
            cells=cx.cells,
            role="force",
            stress_cell=cx.stress_cell,
            stress_direction=cx.stress_direction,
        )
        labels = dual_mod.classify_members(force_view, inc, diagram, q)
        attribution = "primal_members_via_force_diagram"
    report = dual_mod.verify_reciprocity(cx, diagram)
    residual = sys.residual(q)
    strict = report.ok and residual <= report.tol
    if strict:
        status = "ok"
    elif (
        residual <= DEGRADED_TOL
        and report.closure_residual <= DEGRADED_TOL
        and report.parallel_angle <= DEGRADED_TOL
        and report.perpendicular_dot <= DEGRADED_TOL
        and report.counts_match
    ):
        status = "degraded"
    else:
        status = "failed"
    ana = analyze(sys)
    return {
        "method": req.method,
        "q": q.tolist(),
        "dof": ana.dof,
        "independent_faces": list(ana.independent_faces),
        "independent_face_ids": list(ana.independent_face_ids),
        "dual": dual_to_payload(diagram),
        "member_forces": list(labels),
        "labels_apply_to": attribution,
        "residuals": {
            "equilibrium": residual,
            "closure": report.closure_residual,
            "parallel_angle": report.parallel_angle,
            "perpendicular_dot": report.perpendicular_dot,
        },
        "reciprocity": {
            "ok": report.ok,
            "lines": report.lines(),
        },
        "status": status,
    }


def create_app(cx: CellComplex, static_dir: str | Path | None = None) -> FastAPI:
    """Build the service around one immutable complex."""
    cx.require_valid()
    inc = IncidenceSet.from_complex(cx)
    sys = assemble(cx, inc)
    app = FastAPI(title="polystatics", docs_url=None, redoc_url=None)
    static = Path(static_dir) if static_dir else None

    @app.exception_handler(PolystaticsError)
    async def _domain_error(_: Request, exc: PolystaticsError):
        return JSONResponse(
            status_code=422, content={"error": exc.code, "detail": str(exc)}
        )

    @app.exception_handler(ZeroSolutionWarning)
    async def _zero_warning(_: Request, exc: ZeroSolutionWarning):
        return JSONResponse(
            status_code=422, content={"error": "ZeroSolution", "detail": str(exc)}
        )

    @app.get("/api/complex")
    def get_complex() -> dict[str, Any]:
        doc = complex_to_document(cx)
        v, e, f, c = cx.counts
        sv, se, sf, sc = cx.system_counts
        doc["edges"] = cx.edges.tolist()
        doc["face_normals"] = [f_.normal.tolist() for f_ in cx.faces]
        doc["active"] = {
            "excluded_cell": cx.excluded_cell,
            "exterior_cell": cx.exterior_cell,
            "face_ids": list(cx.active_faces),
            "cell_ids": list(cx.active_cells),
            "equation_edge_ids": list(cx.equation_edges),
        }
        doc["counts"] = {
            "full": {"v": v, "e": e, "f": f, "c": c},
            "working": {"v": sv, "e": se, "f": sf, "c": sc},
        }
        return doc

    @app.get("/api/analysis")
    def get_analysis() -> dict[str, Any]:
        ana = analyze(sys)
        sv, se, sf, sc = cx.system_counts
        return {
            "counts": {"v": sv, "e": se, "f": sf, "c": sc},
            "rank": ana.rank,
            "dof": ana.dof,
            "independent_faces": list(ana.independent_faces),
            "independent_face_ids": list(ana.independent_face_ids),
            "singular_values": list(ana.singular_values),
            "sv_above": ana.sv_above,
            "sv_below": ana.sv_below,
            "collapses_to_point": ana.zero_only,
        }

    @app.post("/api/solve")
    def post_solve(req: SolveRequest) -> dict[str, Any]:
        return solve_payload(cx, inc, sys, req)

    if static and (static / "index.html").exists():
        from fastapi.staticfiles import StaticFiles

        @app.get("/")
        def index():
            return FileResponse(static / "index.html")

        app.mount("/static", StaticFiles(directory=static), name="static")
    else:

        @app.get("/")
        def index_placeholder():
            return JSONResponse(
                {
                    "detail": "viewer bundle not built; run `npm run build` in "
                    "frontend/ and restart, or use the /api endpoints"
                }
            )

    return app
