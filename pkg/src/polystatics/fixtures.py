"""Built-in complexes: the subdivided-tetrahedron example and generated families.

Every builder returns a validated :class:`~polystatics.complex.CellComplex`
via the regular document parser, so fixtures exercise the same code path as
file input.  The generated families cover the interesting regimes:

* subdivided tetrahedra (regular or random geometry): one degree of freedom;
* axis-aligned box grids ``nx x ny x nz``: richer indeterminacy, e.g.
  a 5x5x1 grid has 8 independent edges;
* a box subdivided into six pyramids from an interior point: octahedral dual;
* two stacked boxes ("glued boxes"): the canonical degenerate cases (empty
  system, or a fully determinate system whose only solution is q = 0).
"""

from __future__ import annotations

import itertools

import numpy as np

from .complex import CellComplex, parse_complex


def _build(verts, faces, cells, role, stress_cell, direction) -> CellComplex:
    doc = {
        "role": role,
        "vertices": [list(map(float, v)) for v in verts],
        "faces": [list(f) for f in faces],
        "cells": [list(c) for c in cells],
        "stress_cell": stress_cell,
        "direction": direction,
    }
    return parse_complex(doc)


def _tetra_complex(corners, interior, role, stress_cell, direction) -> CellComplex:
    """Tetrahedron split into four cells by an interior point.

    Vertex 0 is the interior point, vertices 1..4 the corners.  Faces list
    the six interior triangles first, then the four outer triangles; the last
    cell is the exterior.
    """
    verts = [interior] + list(corners)
    inner = [(0, i, j) for i, j in itertools.combinations(range(1, 5), 2)]
    outer = [tuple(t) for t in itertools.combinations(range(1, 5), 3)]
    faces = inner + outer
    findex = {frozenset(f): i for i, f in enumerate(faces)}
    cells = []
    for tri in itertools.combinations(range(1, 5), 3):
        fs = [findex[frozenset(tri)]]
        fs += [findex[frozenset((0, i, j))] for i, j in itertools.combinations(tri, 2)]
        cells.append(sorted(fs))
    cells.append(sorted(findex[frozenset(t)] for t in outer))  # exterior
    if stress_cell == "exterior":
        stress_cell = len(cells) - 1
    return _build(verts, faces, cells, role, stress_cell, direction)


def tetra_fixture(
    scale: float = 1.0,
    role: str = "form",
    stress_cell: int | str = "exterior",
    direction: str = "inward",
) -> CellComplex:
    """Regular tetrahedron of edge length ``scale`` subdivided at its centroid.

    The base face lies in the z = 0 plane with the apex on the +z axis, so
    the interior edge to the apex is vertical.  Working counts are
    (v, e', f', c') = (5, 4, 6, 4): five vertices, four interior spokes, six
    interior triangles, four sub-tetrahedra.  By default the exterior cell is
    the stress cell of a form diagram, directed inward.
    """
    rb = scale / np.sqrt(3.0)  # base circumradius
    h = scale * np.sqrt(2.0 / 3.0)  # apex height
    apex = np.array([0.0, 0.0, h])
    base = [
        np.array([rb * np.cos(a), rb * np.sin(a), 0.0])
        for a in np.deg2rad([90.0, 210.0, 330.0])
    ]
    corners = [apex] + base
    centroid = np.mean(corners, axis=0)
    return _tetra_complex(corners, centroid, role, stress_cell, direction)


def random_subdivided_tetra(
    seed: int,
    role: str = "form",
    stress_cell: int | str = "exterior",
    direction: str = "inward",
) -> CellComplex:
    """Random non-degenerate tetrahedron split at a random interior point."""
    rng = np.random.default_rng(seed)
    while True:
        corners = rng.uniform(-1.0, 1.0, (4, 3))
        vol = abs(np.linalg.det(corners[1:] - corners[0])) / 6.0
        if vol > 0.05:
            break
    weights = rng.dirichlet([4.0, 4.0, 4.0, 4.0])
    interior = weights @ corners
    return _tetra_complex(list(corners), interior, role, stress_cell, direction)


def nested_subdivided_tetra(
    scale: float = 1.0,
    role: str = "form",
    direction: str = "inward",
) -> CellComplex:
    """Subdivided tetrahedron with one sub-cell split again at its centroid.

    Produces a depth-two complex (some cells are not adjacent to the stress
    cell), with two degrees of freedom.
    """
    cx = tetra_fixture(scale=scale)
    verts = [list(v) for v in cx.vertices]
    faces = [list(f.loop) for f in cx.faces]
    findex = {frozenset(f.loop): i for i, f in enumerate(cx.faces)}
    cells = [list(c.faces) for c in cx.cells]

    split = 0  # first sub-tetrahedron
    sub_vertices = sorted({v for fi in cells[split] for v in faces[fi]})
    p = np.mean([verts[v] for v in sub_vertices], axis=0)
    pi = len(verts)
    verts.append(list(p))
    for a, b in itertools.combinations(sub_vertices, 2):
        findex[frozenset((pi, a, b))] = len(faces)
        faces.append([pi, a, b])
    new_cells = []
    for fi in cells[split]:
        loop = faces[fi]
        fs = [fi] + [
            findex[frozenset((pi, a, b))]
            for a, b in itertools.combinations(loop, 2)
        ]
        new_cells.append(sorted(fs))
    exterior = frozenset(cells[-1])
    cells = [c for i, c in enumerate(cells) if i != split] + new_cells
    stress = next(i for i, c in enumerate(cells) if frozenset(c) == exterior)
    return _build(verts, faces, cells, role, stress, direction)


def box_grid(
    nx: int,
    ny: int,
    nz: int = 1,
    xs=None,
    ys=None,
    zs=None,
    role: str = "form",
    stress_cell: int | str = "exterior",
    direction: str = "inward",
) -> CellComplex:
    """Axis-aligned grid of nx*ny*nz boxes plus the exterior cell.

    Optional ``xs/ys/zs`` give explicit (strictly increasing) plane positions,
    allowing unevenly spaced grids; faces stay planar either way.
    """
    xs = np.arange(nx + 1, dtype=float) if xs is None else np.asarray(xs, float)
    ys = np.arange(ny + 1, dtype=float) if ys is None else np.asarray(ys, float)
    zs = np.arange(nz + 1, dtype=float) if zs is None else np.asarray(zs, float)
    vid = {}
    verts = []
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            for k, z in enumerate(zs):
                vid[(i, j, k)] = len(verts)
                verts.append([x, y, z])

    faces: list[tuple[int, ...]] = []
    cells: list[list[int]] = [[] for _ in range(nx * ny * nz)]
    exterior: list[int] = []

    def cell_id(i, j, k):
        return (i * ny + j) * nz + k

    def add(loop, inside, outside_is_ext):
        fi = len(faces)
        faces.append(loop)
        for c in inside:
            cells[c].append(fi)
        if outside_is_ext:
            exterior.append(fi)

    for i in range(nx + 1):  # x-normal walls
        for j in range(ny):
            for k in range(nz):
                loop = (
                    vid[(i, j, k)],
                    vid[(i, j + 1, k)],
                    vid[(i, j + 1, k + 1)],
                    vid[(i, j, k + 1)],
                )
                owners = []
                if i > 0:
                    owners.append(cell_id(i - 1, j, k))
                if i < nx:
                    owners.append(cell_id(i, j, k))
                add(loop, owners, len(owners) == 1)
    for j in range(ny + 1):  # y-normal walls
        for i in range(nx):
            for k in range(nz):
                loop = (
                    vid[(i, j, k)],
                    vid[(i + 1, j, k)],
                    vid[(i + 1, j, k + 1)],
                    vid[(i, j, k + 1)],
                )
                owners = []
                if j > 0:
                    owners.append(cell_id(i, j - 1, k))
                if j < ny:
                    owners.append(cell_id(i, j, k))
                add(loop, owners, len(owners) == 1)
    for k in range(nz + 1):  # z-normal walls
        for i in range(nx):
            for j in range(ny):
                loop = (
                    vid[(i, j, k)],
                    vid[(i + 1, j, k)],
                    vid[(i + 1, j + 1, k)],
                    vid[(i, j + 1, k)],
                )
                owners = []
                if k > 0:
                    owners.append(cell_id(i, j, k - 1))
                if k < nz:
                    owners.append(cell_id(i, j, k))
                add(loop, owners, len(owners) == 1)

    cells.append(sorted(exterior))
    if stress_cell == "exterior":
        stress_cell = len(cells) - 1
    return _build(verts, faces, cells, role, stress_cell, direction)


def glued_boxes(
    role: str = "form",
    stress_cell: int | str = "exterior",
    direction: str = "inward",
) -> CellComplex:
    """Unit cube split into two boxes by the z = 1/2 mid-plane.

    Full counts are (v, e, f, c) = (12, 20, 11, 3).  With the exterior as
    stress cell no equation edges remain; with one of the boxes as stress
    cell the system is nonempty but fully determinate (q = 0 only).
    """
    return box_grid(1, 1, 2, zs=[0.0, 0.5, 1.0], role=role,
                    stress_cell=stress_cell, direction=direction)


def subdivided_box(
    a: float = 1.0,
    b: float = 1.0,
    c: float = 1.0,
    role: str = "form",
    stress_cell: int | str = "exterior",
    direction: str = "inward",
) -> CellComplex:
    """Box split into six pyramids from its center; the dual is an octahedron."""
    corners = [
        np.array([x, y, z])
        for x in (0.0, a)
        for y in (0.0, b)
        for z in (0.0, c)
    ]
    center = np.mean(corners, axis=0)
    verts = corners + [center]  # center index = 8
    quads = [  # corner ids encode x*4 + y*2 + z
        (0, 1, 3, 2),  # x = 0
        (4, 6, 7, 5),  # x = a
        (0, 4, 5, 1),  # y = 0
        (2, 3, 7, 6),  # y = b
        (0, 2, 6, 4),  # z = 0
        (1, 5, 7, 3),  # z = c
    ]
    edges = sorted(
        {
            (min(p, q), max(p, q))
            for loop in quads
            for p, q in zip(loop, loop[1:] + loop[:1])
        }
    )
    faces = [list(q) for q in quads] + [[8, e0, e1] for e0, e1 in edges]
    findex = {frozenset(f): i for i, f in enumerate(faces)}
    cells = []
    for loop in quads:
        fs = [findex[frozenset(loop)]]
        fs += [
            findex[frozenset((8, p, q))]
            for p, q in zip(loop, loop[1:] + loop[:1])
        ]
        cells.append(sorted(fs))
    cells.append(sorted(findex[frozenset(q)] for q in quads))
    if stress_cell == "exterior":
        stress_cell = len(cells) - 1
    return _build(verts, faces, cells, role, stress_cell, direction)


def reciprocity_corpus() -> list[tuple[str, CellComplex]]:
    """Named fixtures with at least one degree of freedom, >= 20 in total."""
    out: list[tuple[str, CellComplex]] = [("tetra_regular", tetra_fixture())]
    for seed in range(8):
        out.append((f"tetra_random_{seed}", random_subdivided_tetra(seed)))
    out.append(("tetra_nested", nested_subdivided_tetra()))
    grids = [
        ("grid_2x2x1", dict(nx=2, ny=2)),
        ("grid_3x2x1", dict(nx=3, ny=2)),
        ("grid_2x3x1", dict(nx=2, ny=3)),
        ("grid_3x3x1", dict(nx=3, ny=3)),
        ("grid_4x3x1", dict(nx=4, ny=3)),
        ("grid_4x4x1", dict(nx=4, ny=4)),
        ("grid_5x5x1", dict(nx=5, ny=5)),
        ("grid_2x2x2", dict(nx=2, ny=2, nz=2)),
    ]
    for name, kw in grids:
        out.append((name, box_grid(**kw)))
    out.append(
        (
            "grid_3x3_uneven",
            box_grid(3, 3, 1, xs=[0.0, 0.7, 1.9, 3.0], ys=[0.0, 1.3, 2.1, 3.4]),
        )
    )
    out.append(
        (
            "grid_4x2_uneven",
            box_grid(4, 2, 1, xs=[0.0, 0.5, 1.7, 2.2, 3.1], ys=[0.0, 0.9, 2.5]),
        )
    )
    out.append(("pyramid_cube", subdivided_box(1.0, 1.0, 1.0)))
    out.append(("pyramid_box", subdivided_box(1.0, 2.0, 0.7)))
    return out
