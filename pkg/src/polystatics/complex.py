"""Immutable data model of a polyhedral cell complex.

A complex is a set of vertices, planar faces given as vertex loops, and cells
given as unsigned face-index sets.  Every face must be shared by exactly two
cells, so the list of cells always includes the unbounded exterior cell.  The
complex carries a *role*:

``form``
    The diagram is the geometry of a structure.  One cell is designated the
    stress cell; its faces and edges are removed from the working sets, and
    the edges incident to its vertices act as applied loads and reactions.

``force``
    The diagram is a group of closed force polyhedra.  The designated stress
    cell (usually the exterior) seeds the cell orientations used to classify
    members; the exterior cell's faces and edges are excluded from the
    equilibrium equations.

Input documents are JSON objects::

    {
      "role":        "form" | "force",
      "vertices":    [[x, y, z], ...],
      "faces":       [[v0, v1, v2, ...], ...],
      "cells":       [[f0, f1, ...], ...],
      "stress_cell": int,
      "direction":   "inward" | "outward"
    }

Face normals are derived with Newell's method and sign-canonicalized (first
non-negligible component positive) so that all incidence matrices are
reproducible for a given document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import (
    DanglingFace,
    MalformedDocument,
    NonPlanarFace,
    OpenCell,
)
from .geometry import canonical_unit_normal, newell_normal, plane_deviation

ROLES = ("form", "force")
DIRECTIONS = ("inward", "outward")

#: Faces whose max deviation from their plane exceeds this fraction of the
#: bounding-box diagonal are rejected at parse time.
PLANARITY_TOL = 1e-6


@dataclass(frozen=True)
class Face:
    """A planar face: an ordered vertex loop plus its canonical unit normal.

    ``loop_sign`` is +1 when the canonical normal matches the right-hand-rule
    normal of the stored loop, -1 when it was flipped during canonicalization.
    """

    loop: tuple[int, ...]
    normal: np.ndarray
    loop_sign: int

    def oriented_loop(self) -> tuple[int, ...]:
        """Vertex loop ordered by the right-hand rule around ``normal``."""
        return self.loop if self.loop_sign > 0 else tuple(reversed(self.loop))


@dataclass(frozen=True)
class Cell:
    """A cell as the set of its bounding faces (orientation lives elsewhere)."""

    faces: tuple[int, ...]

    @property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"[{'ok' if c.passed else 'FAIL'}] {c.name}")
            out.extend(f"       {d}" for d in c.details)
        return out


def _loop_edges(loop: Iterable[int]) -> list[tuple[int, int]]:
    loop = list(loop)
    out = []
    for i, a in enumerate(loop):
        b = loop[(i + 1) % len(loop)]
        out.append((min(a, b), max(a, b)))
    return out


def _derive_edges(faces: tuple[Face, ...]) -> np.ndarray:
    """Deduplicated union of consecutive vertex pairs over all face loops.

    Edges are canonically oriented tail < head and sorted lexicographically,
    so the edge numbering only depends on the set of loops.
    """
    es: set[tuple[int, int]] = set()
    for face in faces:
        es.update(_loop_edges(face.loop))
    return np.array(sorted(es), dtype=int).reshape(-1, 2)


def _face_cell_map(
    n_faces: int, cells: tuple[Cell, ...]
) -> tuple[tuple[int, ...], ...]:
    m: list[list[int]] = [[] for _ in range(n_faces)]
    for ci, cell in enumerate(cells):
        for fi in cell.faces:
            m[fi].append(ci)
    return tuple(tuple(x) for x in m)


def _orient_cell_boundary(
    vertices: np.ndarray, faces: tuple[Face, ...], cell_faces: Iterable[int], ci: int
) -> tuple[dict[int, int], float]:
    """Coherently orient one cell's boundary surface.

    Returns ``(signs, volume)`` where ``signs[face] = +1`` iff the face's
    canonical normal points away from the enclosed region, and ``volume`` is
    the enclosed volume.  Raises ``OpenCell`` when the face set is not a
    closed, connected, orientable surface.
    """
    members = sorted(cell_faces)
    edge_use: dict[tuple[int, int], list[int]] = {}
    trav: dict[tuple[int, tuple[int, int]], int] = {}
    for fi in members:
        loop = faces[fi].loop
        for i, a in enumerate(loop):
            b = loop[(i + 1) % len(loop)]
            e = (min(a, b), max(a, b))
            edge_use.setdefault(e, []).append(fi)
            trav[(fi, e)] = 1 if a < b else -1
    for e, fs in edge_use.items():
        if len(fs) != 2:
            raise OpenCell(ci, f"edge {e} bounds {len(fs)} of its faces, expected 2")

    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {f: [] for f in members}
    for e, (f1, f2) in edge_use.items():
        adj[f1].append((f2, e))
        adj[f2].append((f1, e))

    # Coherent orientation: adjacent faces traverse their shared edge in
    # opposite directions.
    eps = {members[0]: 1}
    stack = [members[0]]
    while stack:
        f = stack.pop()
        for g, e in adj[f]:
            want = -eps[f] * trav[(f, e)] * trav[(g, e)]
            if g in eps:
                if eps[g] != want:
                    raise OpenCell(ci, "boundary surface is not orientable")
            else:
                eps[g] = want
                stack.append(g)
    if len(eps) != len(members):
        raise OpenCell(ci, "boundary surface is disconnected")

    volume = 0.0
    for fi, e in eps.items():
        loop = faces[fi].loop
        pts = vertices[list(loop)]
        m = newell_normal(pts)  # loop-orientation normal, |m| = 2*area
        volume += e * float(m @ pts.mean(axis=0)) / 6.0
    flip = 1 if volume > 0 else -1
    signs = {fi: e * flip * faces[fi].loop_sign for fi, e in eps.items()}
    return signs, abs(volume)


class CellComplex:
    """Validated polyhedral cell complex, immutable after construction.

    Alongside the full entity lists it precomputes the *working* subsets used
    by the equilibrium formulation: the excluded cell (the stress cell for a
    form diagram, the detected exterior cell for a force diagram), the active
    faces and cells that survive its removal, and the equation edges, i.e.
    edges that appear in no face of the excluded cell.
    """

    def __init__(
        self,
        vertices: np.ndarray,
        faces: tuple[Face, ...],
        cells: tuple[Cell, ...],
        role: str,
        stress_cell: int,
        stress_direction: str,
        defects: tuple[str, ...] = (),
    ):
        self.vertices = np.array(vertices, dtype=float)
        self.faces = faces
        self.cells = cells
        self.role = role
        self.stress_cell = stress_cell
        self.stress_direction = stress_direction
        self.defects = defects

        self.edges = _derive_edges(faces)
        self._edge_index = {
            (int(t), int(h)): i for i, (t, h) in enumerate(self.edges)
        }
        self.face_cells = _face_cell_map(len(faces), cells)
        self._edge_faces: dict[int, tuple[int, ...]] = {}
        for fi, face in enumerate(faces):
            for e in set(_loop_edges(face.loop)):
                ei = self._edge_index[e]
                self._edge_faces[ei] = self._edge_faces.get(ei, ()) + (fi,)

        self._out: dict[tuple[int, int], int] = {}
        self.cell_volumes = np.zeros(len(cells))
        self.exterior_cell = -1
        self.excluded_cell = -1
        self.active_faces: tuple[int, ...] = ()
        self.active_cells: tuple[int, ...] = ()
        self.equation_edges: tuple[int, ...] = ()
        if not defects:
            self._finalize()
        self.vertices.flags.writeable = False
        self.edges.flags.writeable = False

    def _finalize(self) -> None:
        for ci, cell in enumerate(self.cells):
            signs, volume = _orient_cell_boundary(
                self.vertices, self.faces, cell.faces, ci
            )
            self.cell_volumes[ci] = volume
            for fi, s in signs.items():
                self._out[(fi, ci)] = s
        # The exterior cell's face surface encloses the whole domain, so its
        # measured volume equals the sum of all bounded cells and is maximal.
        self.exterior_cell = int(np.argmax(self.cell_volumes))
        # "Out of the exterior cell" means toward the bounded domain.
        for fi in self.cells[self.exterior_cell].faces:
            self._out[(fi, self.exterior_cell)] *= -1

        self.excluded_cell = (
            self.stress_cell if self.role == "form" else self.exterior_cell
        )
        excluded = self.cells[self.excluded_cell].face_set
        self.active_faces = tuple(
            i for i in range(len(self.faces)) if i not in excluded
        )
        self.active_cells = tuple(
            i for i in range(len(self.cells)) if i != self.excluded_cell
        )
        excluded_edges: set[tuple[int, int]] = set()
        for fi in excluded:
            excluded_edges.update(_loop_edges(self.faces[fi].loop))
        self.equation_edges = tuple(
            self._edge_index[e]
            for e in sorted(self._edge_index)
            if e not in excluded_edges
        )

    def require_valid(self) -> None:
        if self.defects:
            raise MalformedDocument(
                "complex has structural defects: " + "; ".join(self.defects)
            )

    # -- queries ------------------------------------------------------------

    def out_sign(self, face: int, cell: int) -> int:
        """+1 if the face's canonical normal points out of ``cell``."""
        return self._out[(face, cell)]

    def edge_id(self, a: int, b: int) -> int:
        return self._edge_index[(min(a, b), max(a, b))]

    def faces_of_edge(self, edge: int) -> tuple[int, ...]:
        return self._edge_faces[edge]

    @property
    def counts(self) -> tuple[int, int, int, int]:
        """Full stored counts (v, e, f, c), exterior cell included."""
        return (
            len(self.vertices),
            len(self.edges),
            len(self.faces),
            len(self.cells),
        )

    @property
    def system_counts(self) -> tuple[int, int, int, int]:
        """Working counts (v, e', f', c') after excluding the stress cell.

        These are the dimensions the incidence matrices are built on.
        """
        return (
            len(self.vertices),
            len(self.equation_edges),
            len(self.active_faces),
            len(self.active_cells),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return (
            np.array_equal(self.vertices, other.vertices)
            and tuple(f.loop for f in self.faces)
            == tuple(f.loop for f in other.faces)
            and tuple(c.face_set for c in self.cells)
            == tuple(c.face_set for c in other.cells)
            and (self.role, self.stress_cell, self.stress_direction)
            == (other.role, other.stress_cell, other.stress_direction)
        )


def parse_complex(
    document: str | bytes | Mapping[str, Any],
    planarity_tol: float = PLANARITY_TOL,
    check: bool = True,
) -> CellComplex:
    """Parse and validate an input document into a ``CellComplex``.

    With ``check=True`` (the default) the first structural violation raises a
    typed error: ``MalformedDocument``, ``NonPlanarFace``, ``OpenCell`` or
    ``DanglingFace``.  With ``check=False`` planarity, face-sharing and cell
    closure problems are recorded in ``defects`` instead, so that
    :func:`validate` can report them all; such a complex has no working sets.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise MalformedDocument("document must be a JSON object")

    for key in ("role", "vertices", "faces", "cells", "stress_cell", "direction"):
        if key not in document:
            raise MalformedDocument(f"missing required key {key!r}")

    role = document["role"]
    if role not in ROLES:
        raise MalformedDocument(f"role must be one of {ROLES}, got {role!r}")
    direction = document["direction"]
    if direction not in DIRECTIONS:
        raise MalformedDocument(
            f"direction must be one of {DIRECTIONS}, got {direction!r}"
        )

    try:
        vertices = np.array(document["vertices"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedDocument(f"vertices are not numeric triples: {exc}") from exc
    if vertices.ndim != 2 or vertices.shape[1] != 3 or len(vertices) < 3:
        raise MalformedDocument("vertices must be a list of >= 3 [x, y, z] triples")
    if not np.isfinite(vertices).all():
        raise MalformedDocument("vertex coordinates must be finite")

    nv = len(vertices)
    raw_faces = document["faces"]
    if not raw_faces:
        raise MalformedDocument("at least one face is required")
    loops: list[tuple[int, ...]] = []
    for fi, loop in enumerate(raw_faces):
        loop = tuple(int(v) for v in loop)
        if len(loop) < 3:
            raise MalformedDocument(f"face {fi} has fewer than 3 vertices")
        if len(set(loop)) != len(loop):
            raise MalformedDocument(f"face {fi} repeats a vertex in its loop")
        if any(v < 0 or v >= nv for v in loop):
            raise MalformedDocument(f"face {fi} references a vertex out of range")
        loops.append(loop)

    bbox_diag = float(np.linalg.norm(vertices.max(axis=0) - vertices.min(axis=0)))
    if bbox_diag == 0.0:
        raise MalformedDocument("all vertices coincide")

    defects: list[str] = []
    faces: list[Face] = []
    for fi, loop in enumerate(loops):
        pts = vertices[list(loop)]
        try:
            normal, sign = canonical_unit_normal(newell_normal(pts))
        except ValueError as exc:
            raise MalformedDocument(f"face {fi} is degenerate: {exc}") from exc
        normal.flags.writeable = False
        dev = plane_deviation(pts, normal)
        if dev > planarity_tol * bbox_diag:
            if check:
                raise NonPlanarFace(fi, dev / bbox_diag)
            defects.append(f"face {fi} non-planar ({dev / bbox_diag:.2e})")
        faces.append(Face(loop=loop, normal=normal, loop_sign=sign))

    raw_cells = document["cells"]
    if not isinstance(raw_cells, list) or len(raw_cells) < 2:
        raise MalformedDocument("cells must list at least 2 face-index sets")
    cells: list[Cell] = []
    for ci, fs in enumerate(raw_cells):
        fs = [int(f) for f in fs]
        if len(set(fs)) != len(fs):
            raise MalformedDocument(f"cell {ci} lists a face more than once")
        if any(f < 0 or f >= len(faces) for f in fs):
            raise MalformedDocument(f"cell {ci} references a face out of range")
        if len(fs) < 2:
            raise MalformedDocument(f"cell {ci} has fewer than 2 faces")
        cells.append(Cell(faces=tuple(sorted(fs))))

    stress_cell = int(document["stress_cell"])
    if stress_cell < 0 or stress_cell >= len(cells):
        raise MalformedDocument(f"stress_cell {stress_cell} out of range")

    face_cells = _face_cell_map(len(faces), tuple(cells))
    for fi, cs in enumerate(face_cells):
        if len(cs) != 2:
            if check:
                raise DanglingFace(fi, len(cs))
            defects.append(f"face {fi} bounds {len(cs)} cells")

    if not defects:
        for ci, cell in enumerate(cells):
            try:
                _orient_cell_boundary(vertices, tuple(faces), cell.faces, ci)
            except OpenCell as exc:
                if check:
                    raise
                defects.append(str(exc))

    return CellComplex(
        vertices=vertices,
        faces=tuple(faces),
        cells=tuple(cells),
        role=role,
        stress_cell=stress_cell,
        stress_direction=direction,
        defects=tuple(defects),
    )


def complex_to_document(cx: CellComplex) -> dict[str, Any]:
    """Serialize back to the input document schema (see module docstring)."""
    return {
        "role": cx.role,
        "vertices": [[float(c) for c in v] for v in cx.vertices],
        "faces": [list(f.loop) for f in cx.faces],
        "cells": [list(c.faces) for c in cx.cells],
        "stress_cell": cx.stress_cell,
        "direction": cx.stress_direction,
    }


def validate(cx: CellComplex, tol: float = 1e-9) -> ValidationReport:
    """Run every structural check and return a report instead of raising.

    ``tol`` is the planarity threshold relative to the bounding-box diagonal;
    the parser's own (looser) default is :data:`PLANARITY_TOL`.
    """
    checks: list[CheckResult] = []
    bbox_diag = float(
        np.linalg.norm(cx.vertices.max(axis=0) - cx.vertices.min(axis=0))
    )

    bad_planar = []
    for fi, face in enumerate(cx.faces):
        dev = plane_deviation(cx.vertices[list(face.loop)], face.normal)
        if dev > tol * bbox_diag:
            bad_planar.append(f"face {fi}: deviation {dev / bbox_diag:.2e}")
    checks.append(CheckResult("face_planarity", not bad_planar, tuple(bad_planar)))

    bad_shared = [
        f"face {fi} bounds {len(cs)} cells"
        for fi, cs in enumerate(cx.face_cells)
        if len(cs) != 2
    ]
    checks.append(
        CheckResult("faces_bound_two_cells", not bad_shared, tuple(bad_shared))
    )

    bad_cells = []
    for ci, cell in enumerate(cx.cells):
        try:
            _orient_cell_boundary(cx.vertices, cx.faces, cell.faces, ci)
        except OpenCell as exc:
            bad_cells.append(str(exc))
    checks.append(CheckResult("cell_closure", not bad_cells, tuple(bad_cells)))

    bad_edges = [
        f"edge ({t},{h}) not tail<head"
        for t, h in map(tuple, cx.edges.tolist())
        if not t < h
    ]
    checks.append(
        CheckResult("edge_orientation_canonical", not bad_edges, tuple(bad_edges))
    )

    use = {tuple(e): 0 for e in cx.edges.tolist()}
    for face in cx.faces:
        for e in _loop_edges(face.loop):
            use[e] += 1
    lonely = [f"edge {e} lies on {n} face(s)" for e, n in use.items() if n < 2]
    checks.append(
        CheckResult("edges_shared_by_two_faces", not lonely, tuple(lonely))
    )

    return ValidationReport(tuple(checks))
