import numpy as np
import pytest
from hypothesis import settings

from polystatics.complex import CellComplex, Face
from polystatics import fixtures

settings.register_profile("ci", max_examples=25, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def tetra():
    return fixtures.tetra_fixture()


@pytest.fixture(scope="session")
def tetra_force():
    return fixtures.tetra_fixture(role="force")


@pytest.fixture(scope="session")
def grid22():
    return fixtures.box_grid(2, 2, 1)


@pytest.fixture(scope="session")
def corpus():
    return fixtures.reciprocity_corpus()


def flip_normals(cx: CellComplex, mask) -> CellComplex:
    """Rebuild a complex with the canonical normal of masked faces negated.

    Keeps normal and loop_sign consistent, so incidence construction sees a
    legitimate (just non-canonical) orientation choice.
    """
    faces = tuple(
        Face(f.loop, -f.normal if m else f.normal, -f.loop_sign if m else f.loop_sign)
        for f, m in zip(cx.faces, mask)
    )
    return CellComplex(
        vertices=np.array(cx.vertices),
        faces=faces,
        cells=cx.cells,
        role=cx.role,
        stress_cell=cx.stress_cell,
        stress_direction=cx.stress_direction,
    )


def svd_nullspace(A, tol=1e-10):
    """Independent oracle for the nullspace used throughout the tests."""
    _, s, Vt = np.linalg.svd(np.asarray(A, float))
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return Vt[rank:].T
