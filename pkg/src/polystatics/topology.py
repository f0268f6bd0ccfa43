"""Signed incidence matrices and cell orientation maps.

Three matrices describe the connectivity of the working complex:

* ``C_ev`` (equation edges x vertices): -1 at the tail, +1 at the head of
  each canonically oriented edge.  By duality it equals the face-cell
  incidence of the reciprocal diagram.
* ``C_ef`` (equation edges x active faces): +1 where the canonical edge
  direction agrees with the loop direction induced by the face normal via
  the right-hand rule, -1 where it opposes it.
* ``C_fc`` (active faces x active cells): +1 where the face normal agrees
  with the cell's assigned direction, -1 where it opposes it.  It doubles as
  the edge-vertex incidence of the reciprocal diagram, so each row must have
  exactly one +1 and one -1 to orient a dual edge.

Two different per-cell sign maps are useful.  ``construction_signs`` gives
every working cell the same sign; this is the unique assignment (up to a
global flip) for which every row of ``C_fc`` is a +-1 pair, which the dual
construction requires.  ``propagate_cell_orientations`` alternates signs with
breadth-first distance from the stress cell; it feeds the member-force
classification, where a cell's inward/outward direction is what matters.
The two maps coincide whenever every working cell touches the stress cell,
which holds for all the built-in single-level fixtures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .complex import CellComplex
from .errors import DisconnectedComplex, InconsistentOrientation


def edge_vertex_matrix(cx: CellComplex) -> np.ndarray:
    """[e' x v] incidence of equation edges and vertices."""
    cx.require_valid()
    M = np.zeros((len(cx.equation_edges), len(cx.vertices)))
    for row, ei in enumerate(cx.equation_edges):
        t, h = cx.edges[ei]
        M[row, t] = -1.0
        M[row, h] = 1.0
    return M


def edge_face_matrix(cx: CellComplex) -> np.ndarray:
    """[e' x f'] incidence of equation edges and active faces."""
    cx.require_valid()
    row_of = {ei: r for r, ei in enumerate(cx.equation_edges)}
    M = np.zeros((len(cx.equation_edges), len(cx.active_faces)))
    for col, fi in enumerate(cx.active_faces):
        loop = cx.faces[fi].oriented_loop()
        for i, a in enumerate(loop):
            b = loop[(i + 1) % len(loop)]
            ei = cx.edge_id(a, b)
            if ei in row_of:
                M[row_of[ei], col] = 1.0 if a < b else -1.0
    return M


def cell_adjacency(cx: CellComplex, active_only: bool = False) -> dict[int, set[int]]:
    """Cell adjacency graph through shared faces."""
    adj: dict[int, set[int]] = {i: set() for i in range(len(cx.cells))}
    faces = cx.active_faces if active_only else range(len(cx.faces))
    for fi in faces:
        cs = cx.face_cells[fi]
        if len(cs) == 2:
            a, b = cs
            adj[a].add(b)
            adj[b].add(a)
    if active_only:
        return {c: adj[c] & set(cx.active_cells) for c in cx.active_cells}
    return adj


def propagate_cell_orientations(
    cx: CellComplex,
    stress_cell: int | None = None,
    direction: str | None = None,
) -> dict[int, int]:
    """Per-cell direction signs seeded at the stress cell (inward=-1, outward=+1).

    Signs alternate with breadth-first distance over the face-adjacency graph
    of all cells, so the result depends only on graph distances, never on
    traversal order.  Raises ``DisconnectedComplex`` if some cell is
    unreachable from the stress cell.
    """
    cx.require_valid()
    stress = cx.stress_cell if stress_cell is None else stress_cell
    direction = cx.stress_direction if direction is None else direction
    seed = -1 if direction == "inward" else 1
    adj = cell_adjacency(cx)
    dist = {stress: 0}
    queue = deque([stress])
    while queue:
        c = queue.popleft()
        for d in adj[c]:
            if d not in dist:
                dist[d] = dist[c] + 1
                queue.append(d)
    if len(dist) != len(cx.cells):
        missing = sorted(set(range(len(cx.cells))) - dist.keys())
        raise DisconnectedComplex(
            f"cells {missing} are not face-connected to cell {stress}"
        )
    return {c: seed * (-1) ** d for c, d in dist.items()}


def construction_signs(cx: CellComplex) -> dict[int, int]:
    """The coherent sign map used to build ``C_fc`` for the dual construction.

    Every working cell takes the opposite of the stress cell's sign (all
    equal), the one assignment family for which every active face separates
    equal-signed cells and hence every ``C_fc`` row is a +-1 pair.
    """
    cx.require_valid()
    seed = -1 if cx.stress_direction == "inward" else 1
    signs = {c: -seed for c in range(len(cx.cells))}
    signs[cx.excluded_cell] = seed
    return signs


def face_cell_matrix(cx: CellComplex, signs: dict[int, int]) -> np.ndarray:
    """[f' x c'] incidence of active faces and cells under a sign map.

    Entry is ``signs[c] * out(f, c)``: +1 when the face normal matches the
    direction the cell assigns to it.  Raises ``InconsistentOrientation``
    when a row fails to come out as one +1 and one -1, since such a row
    cannot orient an edge of the reciprocal diagram.
    """
    cx.require_valid()
    col_of = {ci: c for c, ci in enumerate(cx.active_cells)}
    M = np.zeros((len(cx.active_faces), len(cx.active_cells)))
    for row, fi in enumerate(cx.active_faces):
        for ci in cx.face_cells[fi]:
            if ci in col_of:
                M[row, col_of[ci]] = signs[ci] * cx.out_sign(fi, ci)
        nz = M[row][M[row] != 0]
        if len(nz) != 2 or nz.sum() != 0:
            raise InconsistentOrientation(
                f"active face {fi} cannot orient a dual edge under this sign "
                f"map (row entries {nz.tolist()})"
            )
    return M


@dataclass(frozen=True)
class IncidenceSet:
    """The three incidence matrices plus the cell sign map behind ``C_fc``."""

    C_ev: np.ndarray
    C_ef: np.ndarray
    C_fc: np.ndarray
    cell_signs: dict[int, int]

    @classmethod
    def from_complex(cls, cx: CellComplex) -> "IncidenceSet":
        signs = construction_signs(cx)
        return cls(
            C_ev=edge_vertex_matrix(cx),
            C_ef=edge_face_matrix(cx),
            C_fc=face_cell_matrix(cx, signs),
            cell_signs=signs,
        )
