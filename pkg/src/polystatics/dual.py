"""Construction of the reciprocal diagram and its verification.

Given a density vector q, every active face i of the primal contributes one
dual edge with vector q_i * n_i (n_i the face's unit normal), and every
active cell contributes one dual vertex.  Vertex coordinates come from the
edge-vertex incidence of the dual (which is C_fc of the primal): two
independent constructions are provided and must agree.

* Algebraic: augment C_fc with an anchor row selecting one dual vertex and
  solve the three coordinate systems with the Moore-Penrose inverse; the
  augmented matrix has full column rank so the solution is unique.
* Graph search: walk a breadth-first tree of the cell adjacency from the
  anchor; each tree segment crossing face i displaces by q_i times the
  face's normal as oriented in the cell being entered.

Dual faces correspond to primal equation edges: the fan of active faces
around an edge, ordered by dihedral angle, becomes a closed polygon of dual
edges.  Reciprocity holds when every such polygon closes and every dual edge
is parallel to its primal face normal, equivalently when every primal edge
is perpendicular to its dual face.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .complex import CellComplex
from .equilibrium import EquilibriumSystem
from .errors import DisconnectedComplex, RoleMismatch, ZeroSolution
from .geometry import angle_about_axis
from .solvers import pseudoinverse
from .topology import IncidenceSet, propagate_cell_orientations

#: |q_i| below this fraction of max(1, ||q||_inf) marks a zero-force member.
ZERO_FORCE_TOL = 1e-9


@dataclass(frozen=True)
class DualFace:
    """Closed dual polygon around one primal equation edge.

    ``fan_faces`` are the primal faces around the edge in dihedral order;
    ``vertex_cycle`` the dual vertices (wedge cells) visited between them.
    """

    primal_edge: int
    fan_faces: tuple[int, ...]
    vertex_cycle: tuple[int, ...]


@dataclass(frozen=True)
class DualDiagram:
    """Reciprocal diagram geometry.

    ``vertices[i]`` realizes primal cell ``cell_ids[i]``; ``edges`` hold
    (tail, head, primal face id) as dual-vertex indices, with the head at the
    cell whose assigned direction matches the face normal, so the edge vector
    is exactly ``q * normal``.  The diagram has one face per primal equation
    edge; its formal cell count equals the primal vertex count by duality.
    """

    vertices: np.ndarray
    cell_ids: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    edge_vectors: np.ndarray
    faces: tuple[DualFace, ...]
    q: np.ndarray
    anchor_cell: int
    anchor_point: np.ndarray
    formal_cell_count: int

    @property
    def counts(self) -> tuple[int, int, int, int]:
        """(v+, e+, f+, c+) of the dual."""
        return (
            len(self.vertices),
            len(self.edges),
            len(self.faces),
            self.formal_cell_count,
        )


@dataclass(frozen=True)
class ReciprocityReport:
    """Measured reciprocity defects; all must sit below their tolerances.

    ``closure_residual`` sums the intended edge vectors (q * normal) around
    every dual face; ``segment_deviation`` compares each realized segment,
    read off the built vertices, against its intended vector, so corrupted
    geometry is caught even though realized position differences cancel
    around any cycle.
    """

    closure_residual: float
    segment_deviation: float
    parallel_angle: float
    perpendicular_dot: float
    counts_match: bool
    tol: float
    angle_tol: float

    @property
    def ok(self) -> bool:
        return (
            self.closure_residual <= self.tol
            and self.segment_deviation <= self.tol
            and self.parallel_angle <= self.angle_tol
            and self.perpendicular_dot <= self.angle_tol
            and self.counts_match
        )

    def lines(self) -> list[str]:
        return [
            f"[{'ok' if self.closure_residual <= self.tol else 'FAIL'}] "
            f"dual face closure residual {self.closure_residual:.3e} (tol {self.tol:.1e})",
            f"[{'ok' if self.segment_deviation <= self.tol else 'FAIL'}] "
            f"segment vs q*normal deviation {self.segment_deviation:.3e}",
            f"[{'ok' if self.parallel_angle <= self.angle_tol else 'FAIL'}] "
            f"dual edge / primal normal angle {self.parallel_angle:.3e} rad",
            f"[{'ok' if self.perpendicular_dot <= self.angle_tol else 'FAIL'}] "
            f"primal edge / dual face max |cos| {self.perpendicular_dot:.3e}",
            f"[{'ok' if self.counts_match else 'FAIL'}] duality counts "
            f"(v,e,f,c) <-> (c+,f+,e+,v+)",
        ]


def edge_vectors(
    q: np.ndarray, sys: EquilibriumSystem
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coordinate difference vectors of the dual edges: (N_x q, N_y q, N_z q)."""
    q = np.asarray(q, dtype=float)
    u = sys.face_normals[:, 0] * q
    v = sys.face_normals[:, 1] * q
    w = sys.face_normals[:, 2] * q
    return u, v, w


def _check_nonzero(q: np.ndarray) -> None:
    if float(np.abs(q).max(initial=0.0)) <= 1e-12:
        raise ZeroSolution(
            "q = 0: the reciprocal diagram collapses into a single point"
        )


def _edge_orientation(inc: IncidenceSet) -> list[tuple[int, int]]:
    """Per active face row: (tail cell column, head cell column) from C_fc."""
    pairs = []
    for row in range(inc.C_fc.shape[0]):
        cols = np.nonzero(inc.C_fc[row])[0]
        head = cols[0] if inc.C_fc[row, cols[0]] > 0 else cols[1]
        tail = cols[1] if head == cols[0] else cols[0]
        pairs.append((int(tail), int(head)))
    return pairs


def _dual_faces(
    cx: CellComplex, col_of: dict[int, int]
) -> tuple[DualFace, ...]:
    """Order the face fan around each equation edge by dihedral angle and
    read off the wedge cells in between."""
    faces = []
    active = set(cx.active_faces)
    for ei in cx.equation_edges:
        t, h = map(int, cx.edges[ei])
        axis = cx.vertices[h] - cx.vertices[t]
        mid = 0.5 * (cx.vertices[h] + cx.vertices[t])
        fan = [fi for fi in cx.faces_of_edge(ei) if fi in active]
        centroids = {
            fi: cx.vertices[list(cx.faces[fi].loop)].mean(axis=0) for fi in fan
        }
        ref = centroids[fan[0]] - mid
        fan.sort(key=lambda fi: angle_about_axis(axis, ref, centroids[fi] - mid))
        cells_of = {fi: set(cx.face_cells[fi]) for fi in fan}
        cycle = []
        k = len(fan)
        used: set[int] = set()
        for i in range(k):
            shared = cells_of[fan[i]] & cells_of[fan[(i + 1) % k]]
            if k == 2:
                # a two-face fan shares both cells; take them in turn
                pick = sorted(shared - used) or sorted(shared)
                wedge = pick[0]
                used.add(wedge)
            else:
                (wedge,) = shared
            cycle.append(col_of[wedge])
        faces.append(
            DualFace(
                primal_edge=ei, fan_faces=tuple(fan), vertex_cycle=tuple(cycle)
            )
        )
    return tuple(faces)


def _assemble_diagram(
    cx: CellComplex,
    inc: IncidenceSet,
    q: np.ndarray,
    X: np.ndarray,
    anchor_cell: int,
    anchor_point: np.ndarray,
) -> DualDiagram:
    col_of = {ci: c for c, ci in enumerate(cx.active_cells)}
    normals = np.array([cx.faces[fi].normal for fi in cx.active_faces])
    vectors = normals * q[:, None]
    vectors.flags.writeable = False
    X.flags.writeable = False
    edges = tuple(
        (tail, head, fi)
        for (tail, head), fi in zip(_edge_orientation(inc), cx.active_faces)
    )
    return DualDiagram(
        vertices=X,
        cell_ids=tuple(cx.active_cells),
        edges=edges,
        edge_vectors=vectors,
        faces=_dual_faces(cx, col_of),
        q=np.array(q, dtype=float),
        anchor_cell=anchor_cell,
        anchor_point=np.asarray(anchor_point, dtype=float),
        formal_cell_count=len(cx.vertices),
    )


def _anchor(cx: CellComplex, anchor_cell: int | None) -> int:
    if anchor_cell is None:
        return cx.active_cells[0]
    if anchor_cell not in cx.active_cells:
        raise DisconnectedComplex(
            f"anchor cell {anchor_cell} is not a working cell of the complex"
        )
    return int(anchor_cell)


def build_dual_algebraic(
    cx: CellComplex,
    inc: IncidenceSet,
    q: np.ndarray,
    anchor_cell: int | None = None,
    anchor_point=(0.0, 0.0, 0.0),
) -> DualDiagram:
    """Solve the anchored incidence systems for the dual vertex coordinates.

    A row selecting the anchor cell is stacked on top of C_fc; the augmented
    matrix has linearly independent columns (its normal matrix is positive
    definite), so the pseudoinverse yields the unique dual geometry with the
    anchor vertex at the origin.  The diagram is then translated so the
    anchor lands on ``anchor_point``.
    """
    cx.require_valid()
    q = np.asarray(q, dtype=float)
    _check_nonzero(q)
    anchor = _anchor(cx, anchor_cell)
    col_of = {ci: c for c, ci in enumerate(cx.active_cells)}
    nc = len(cx.active_cells)
    sigma = np.zeros((1, nc))
    sigma[0, col_of[anchor]] = 1.0
    C_sigma = np.vstack([sigma, inc.C_fc])
    _require_connected(cx)
    M = pseudoinverse(C_sigma)
    normals = np.array([cx.faces[fi].normal for fi in cx.active_faces])
    X = np.empty((nc, 3))
    for d in range(3):
        rhs = np.concatenate([[0.0], normals[:, d] * q])
        X[:, d] = M @ rhs
    X += np.asarray(anchor_point, dtype=float)
    return _assemble_diagram(cx, inc, q, X, anchor, np.asarray(anchor_point))


def build_dual_graphsearch(
    cx: CellComplex,
    inc: IncidenceSet,
    q: np.ndarray,
    anchor_cell: int | None = None,
    anchor_point=(0.0, 0.0, 0.0),
) -> DualDiagram:
    """Place dual vertices by walking a breadth-first tree of cell adjacency.

    Crossing from cell a into cell b through face i displaces by q_i times
    the normal of face i as directed in cell b, i.e. C_fc[i, b] * n_i.
    """
    cx.require_valid()
    q = np.asarray(q, dtype=float)
    _check_nonzero(q)
    anchor = _anchor(cx, anchor_cell)
    col_of = {ci: c for c, ci in enumerate(cx.active_cells)}
    row_of = {fi: r for r, fi in enumerate(cx.active_faces)}

    adj: dict[int, list[tuple[int, int]]] = {ci: [] for ci in cx.active_cells}
    for fi in cx.active_faces:
        a, b = cx.face_cells[fi]
        adj[a].append((b, fi))
        adj[b].append((a, fi))

    nc = len(cx.active_cells)
    X = np.full((nc, 3), np.nan)
    X[col_of[anchor]] = np.asarray(anchor_point, dtype=float)
    seen = {anchor}
    queue = deque([anchor])
    while queue:
        c = queue.popleft()
        for d, fi in adj[c]:
            if d in seen:
                continue
            r = row_of[fi]
            step = q[r] * inc.C_fc[r, col_of[d]] * cx.faces[fi].normal
            X[col_of[d]] = X[col_of[c]] + step
            seen.add(d)
            queue.append(d)
    if len(seen) != nc:
        missing = sorted(set(cx.active_cells) - seen)
        raise DisconnectedComplex(
            f"cells {missing} unreachable from anchor {anchor} through "
            "active faces"
        )
    return _assemble_diagram(cx, inc, q, X, anchor, np.asarray(anchor_point))


def _require_connected(cx: CellComplex) -> None:
    adj: dict[int, set[int]] = {ci: set() for ci in cx.active_cells}
    for fi in cx.active_faces:
        a, b = cx.face_cells[fi]
        adj[a].add(b)
        adj[b].add(a)
    seen = {cx.active_cells[0]}
    queue = deque(seen)
    while queue:
        c = queue.popleft()
        for d in adj[c]:
            if d not in seen:
                seen.add(d)
                queue.append(d)
    if len(seen) != len(cx.active_cells):
        missing = sorted(set(cx.active_cells) - seen)
        raise DisconnectedComplex(f"working cells {missing} are isolated")


def classify_members(
    cx: CellComplex,
    inc: IncidenceSet,
    dual: DualDiagram,
    q: np.ndarray,
    gfp: int | None = None,
    direction: str | None = None,
    zero_tol: float = ZERO_FORCE_TOL,
) -> tuple[str, ...]:
    """Label every dual member compressive, tensile or zero.

    For each dual edge, psi is the dot product of its geometric vector
    (toward the head vertex given by C_fc) with the normal of the primal
    face as directed in the head cell, under the orientations propagated
    from the global force polyhedron.  psi > 0 marks a compressive member
    and psi < 0 a tensile one: the member's force at the head node then
    pushes into (resp. pulls away from) the node.  Flipping the stress
    direction or choosing a different global cell changes the propagated
    orientations and thereby the labels; with an inward exterior cell and
    all-positive q every member is compressive.  Requires a force-diagram
    primal.
    """
    cx.require_valid()
    if cx.role != "force":
        raise RoleMismatch(
            "classification needs a force-diagram primal; for a form diagram "
            "the same rule applies to the primal's members via its force "
            "diagram"
        )
    q = np.asarray(q, dtype=float)
    signs = propagate_cell_orientations(cx, stress_cell=gfp, direction=direction)
    scale = max(1.0, float(np.abs(q).max(initial=0.0)))
    labels = []
    for tail, head, fi in dual.edges:
        vec = dual.vertices[head] - dual.vertices[tail]
        head_cell = dual.cell_ids[head]
        oriented_normal = (
            signs[head_cell] * cx.out_sign(fi, head_cell) * cx.faces[fi].normal
        )
        psi = float(vec @ oriented_normal)
        if abs(psi) <= zero_tol * scale:
            labels.append("zero")
        elif psi > 0:
            labels.append("compressive")
        else:
            labels.append("tensile")
    return tuple(labels)


def verify_reciprocity(
    cx: CellComplex,
    dual: DualDiagram,
    tol: float = 1e-8,
    angle_tol: float = 1e-6,
) -> ReciprocityReport:
    """Measure the reciprocity defects between a primal and a built dual.

    Checks: (a) each dual face polygon closes, i.e. the signed sum of its
    edge vectors vanishes (scaled by max(1, ||q||_inf)); (b) each dual edge
    with non-negligible length is parallel to its primal face normal;
    (c) each primal equation edge is perpendicular to every edge of its dual
    face; (d) dual counts mirror the primal working counts.
    """
    cx.require_valid()
    from .topology import edge_face_matrix

    q = dual.q
    scale = max(1.0, float(np.abs(q).max(initial=0.0)))
    geo = np.array(
        [dual.vertices[head] - dual.vertices[tail] for tail, head, _ in dual.edges]
    )
    normals = np.array([cx.faces[fi].normal for fi in cx.active_faces])
    intended = normals * q[:, None]
    # Closure of the intended edge vectors around every dual face polygon;
    # this is A q read per coordinate.
    C_ef = edge_face_matrix(cx)
    closure = max(
        float(np.abs(C_ef @ intended[:, d]).max(initial=0.0)) for d in range(3)
    )
    closure /= scale
    # Realized segments (vertex differences) must reproduce the intended
    # vectors; realized differences alone cancel around any cycle.
    segment_dev = float(np.abs(geo - intended).max(initial=0.0)) / scale

    worst_angle = 0.0
    for k, (tail, head, fi) in enumerate(dual.edges):
        if abs(q[k]) <= ZERO_FORCE_TOL * scale:
            continue
        vec = geo[k]
        n = cx.faces[fi].normal
        angle = float(
            np.arctan2(np.linalg.norm(np.cross(vec, n)), abs(float(vec @ n)))
        )
        worst_angle = max(worst_angle, angle)

    worst_dot = 0.0
    row_of = {fi: r for r, fi in enumerate(cx.active_faces)}
    for face in dual.faces:
        t, h = map(int, cx.edges[face.primal_edge])
        e_dir = cx.vertices[h] - cx.vertices[t]
        e_dir = e_dir / np.linalg.norm(e_dir)
        for fi in face.fan_faces:
            vec = geo[row_of[fi]]
            norm = float(np.linalg.norm(vec))
            if norm <= ZERO_FORCE_TOL * scale:
                continue
            worst_dot = max(worst_dot, abs(float(e_dir @ vec)) / norm)

    v, e, f, c = cx.system_counts
    counts_match = dual.counts == (c, f, e, v)

    return ReciprocityReport(
        closure_residual=closure,
        segment_deviation=segment_dev,
        parallel_angle=worst_angle,
        perpendicular_dot=worst_dot,
        counts_match=counts_match,
        tol=tol,
        angle_tol=angle_tol,
    )
