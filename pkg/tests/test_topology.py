import numpy as np
import pytest
from hypothesis import given, strategies as st

from polystatics import (
    IncidenceSet,
    InconsistentOrientation,
    construction_signs,
    edge_face_matrix,
    edge_vertex_matrix,
    face_cell_matrix,
    parse_complex,
    propagate_cell_orientations,
)
from polystatics.complex import complex_to_document
from polystatics import fixtures

from conftest import flip_normals


def test_edge_vertex_matrix_tetra(tetra):
    M = edge_vertex_matrix(tetra)
    assert M.shape == (4, 5)
    # lexicographic equation edges: (0,1), (0,2), (0,3), (0,4)
    assert M[0].tolist() == [-1, 1, 0, 0, 0]
    assert M[2].tolist() == [-1, 0, 0, 1, 0]
    assert np.allclose(M.sum(axis=1), 0.0)
    for row in M:
        assert sorted(row[row != 0].tolist()) == [-1.0, 1.0]


def test_edge_face_matrix_tetra_pattern(tetra):
    M = edge_face_matrix(tetra)
    assert M.shape == (4, 6)
    # every interior spoke lies on exactly 3 interior triangles
    assert (np.count_nonzero(M, axis=1) == 3).all()
    # every interior triangle contains exactly 2 spokes
    assert (np.count_nonzero(M, axis=0) == 2).all()
    assert set(np.unique(M)) <= {-1.0, 0.0, 1.0}


def test_edge_face_sign_definition_on_grid_wall():
    # In a 2x2x1 grid the wall x=1, y in [0,1] is the quad
    # (1,0,0) (1,1,0) (1,1,1) (1,0,1): its loop normal is +x, already
    # canonical, and it traverses the central vertical edge upward, i.e.
    # in canonical tail<head direction, so the entry must be +1.
    cx = fixtures.box_grid(2, 2, 1)
    v = cx.vertices
    wall = next(
        fi
        for fi in cx.active_faces
        if np.allclose(v[list(cx.faces[fi].loop)][:, 0], 1.0)
        and v[list(cx.faces[fi].loop)][:, 1].max() <= 1.0 + 1e-12
    )
    central = next(
        ei
        for ei in cx.equation_edges
        for t, h in [cx.edges[ei]]
        if np.allclose(v[t][:2], [1, 1]) and np.allclose(v[h][:2], [1, 1])
    )
    M = edge_face_matrix(cx)
    row = cx.equation_edges.index(central)
    col = cx.active_faces.index(wall)
    assert cx.faces[wall].loop_sign == 1
    assert np.allclose(cx.faces[wall].normal, [1.0, 0.0, 0.0])
    assert M[row, col] == 1.0


def test_flipping_normal_negates_edge_face_column(tetra):
    M = edge_face_matrix(tetra)
    mask = [False] * len(tetra.faces)
    victim_col = 2
    mask[tetra.active_faces[victim_col]] = True
    flipped = flip_normals(tetra, mask)
    M2 = edge_face_matrix(flipped)
    expect = M.copy()
    expect[:, victim_col] *= -1
    assert np.array_equal(M2, expect)


def test_propagate_tetra_exterior_inward(tetra):
    signs = propagate_cell_orientations(tetra)
    assert signs[tetra.stress_cell] == -1
    for ci in tetra.active_cells:
        assert signs[ci] == +1  # all sub-tetrahedra touch the exterior


def test_propagate_two_cell_complex():
    # one tetrahedron as a complex: interior and exterior share all faces
    verts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
    cells = [[0, 1, 2, 3], [0, 1, 2, 3]]
    cx = parse_complex(
        {
            "role": "form",
            "vertices": verts,
            "faces": faces,
            "cells": cells,
            "stress_cell": 1,
            "direction": "inward",
        }
    )
    signs = propagate_cell_orientations(cx)
    assert (signs[0], signs[1]) == (1, -1)


def test_propagate_glued_boxes_consistent_assignment_exists():
    # both global sign choices give a coherent face-cell incidence
    cx = fixtures.glued_boxes()
    for direction in ("inward", "outward"):
        cx2 = fixtures.glued_boxes(direction=direction)
        signs = construction_signs(cx2)
        M = face_cell_matrix(cx2, signs)  # raises if any row is not +-1
        assert M.shape == (len(cx2.active_faces), len(cx2.active_cells))


def test_propagate_is_order_independent(tetra):
    # permuting the cell list relabels but does not change any cell's sign
    doc = complex_to_document(tetra)
    perm = [2, 0, 3, 1, 4]
    doc["cells"] = [doc["cells"][i] for i in perm]
    doc["stress_cell"] = perm.index(tetra.stress_cell)
    cx2 = parse_complex(doc)
    s1 = propagate_cell_orientations(tetra)
    s2 = propagate_cell_orientations(cx2)
    for new_i, old_i in enumerate(perm):
        assert s2[new_i] == s1[old_i]


def test_face_cell_matrix_tetra_pattern(tetra):
    inc = IncidenceSet.from_complex(tetra)
    M = inc.C_fc
    assert M.shape == (6, 4)
    for row in M:
        assert sorted(row[row != 0].tolist()) == [-1.0, 1.0]
    # each sub-tetrahedron bounds exactly 3 interior triangles
    assert (np.count_nonzero(M, axis=0) == 3).all()
    # column of a cell covers exactly its active faces
    for col, ci in enumerate(tetra.active_cells):
        rows = set(np.nonzero(M[:, col])[0].tolist())
        expect = {
            tetra.active_faces.index(fi)
            for fi in tetra.cells[ci].faces
            if fi in tetra.active_faces
        }
        assert rows == expect


def test_flipping_normal_negates_face_cell_row(tetra):
    signs = construction_signs(tetra)
    M = face_cell_matrix(tetra, signs)
    mask = [False] * len(tetra.faces)
    victim_row = 4
    mask[tetra.active_faces[victim_row]] = True
    flipped = flip_normals(tetra, mask)
    M2 = face_cell_matrix(flipped, signs)
    expect = M.copy()
    expect[victim_row] *= -1
    assert np.array_equal(M2, expect)


def test_face_cell_matrix_rejects_incoherent_signs(tetra):
    signs = construction_signs(tetra)
    signs[tetra.active_cells[0]] *= -1  # break coherence on one cell
    with pytest.raises(InconsistentOrientation):
        face_cell_matrix(tetra, signs)


def test_construction_signs_match_propagation_on_single_level(corpus):
    # every working cell of these fixtures touches the stress cell, so the
    # breadth-first alternation and the uniform construction map agree
    for name, cx in corpus:
        if name == "tetra_nested":
            continue  # depth-two: maps legitimately differ
        prop = propagate_cell_orientations(cx)
        cons = construction_signs(cx)
        for ci in cx.active_cells:
            assert prop[ci] == cons[ci], name


def test_duality_dimensions(tetra):
    inc = IncidenceSet.from_complex(tetra)
    v, e, f, c = tetra.system_counts
    assert inc.C_ev.shape == (e, v)  # equals dual's [f+ x c+]
    assert inc.C_ef.shape == (e, f)  # equals dual's [f+ x e+]
    assert inc.C_fc.shape == (f, c)  # equals dual's [e+ x v+]


@given(st.integers(0, 2**10 - 1))
def test_edge_face_product_invariant_under_any_flip(bits):
    # C_ef[:, j] * n_j is unchanged when face j flips: both factors negate.
    cx = fixtures.tetra_fixture()
    mask_active = [(bits >> k) & 1 == 1 for k in range(10)]
    flipped = flip_normals(cx, mask_active)
    M1, M2 = edge_face_matrix(cx), edge_face_matrix(flipped)
    for col, fi in enumerate(cx.active_faces):
        n1 = cx.faces[fi].normal
        n2 = flipped.faces[fi].normal
        assert np.allclose(np.outer(M1[:, col], n1), np.outer(M2[:, col], n2))
