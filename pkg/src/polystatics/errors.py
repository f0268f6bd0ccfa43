"""Exception taxonomy shared by every module.

Each error carries an ``exit_code`` used by the command line front end and a
``code`` string used by the HTTP service, so failures map 1:1 onto machine
readable identifiers.
"""


class PolystaticsError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1

    @property
    def code(self) -> str:
        return type(self).__name__


class MalformedDocument(PolystaticsError):
    """Input document violates the schema or basic structural rules."""

    exit_code = 2


class NonPlanarFace(PolystaticsError):
    """A face's vertices deviate from their best-fit plane beyond tolerance."""

    exit_code = 2

    def __init__(self, face: int, deviation: float):
        super().__init__(
            f"face {face} deviates from its plane by {deviation:.3e} "
            f"(relative to the bounding-box diagonal)"
        )
        self.face = face
        self.deviation = deviation


class OpenCell(PolystaticsError):
    """A cell's face set is not a closed, orientable surface."""

    exit_code = 2

    def __init__(self, cell: int, reason: str = "boundary is not closed"):
        super().__init__(f"cell {cell}: {reason}")
        self.cell = cell


class DanglingFace(PolystaticsError):
    """A face is not shared by exactly two cells."""

    exit_code = 2

    def __init__(self, face: int, count: int):
        super().__init__(f"face {face} bounds {count} cells, expected exactly 2")
        self.face = face
        self.count = count


class InconsistentOrientation(PolystaticsError):
    """No coherent cell orientation exists for the reciprocal construction."""

    exit_code = 2


class DisconnectedComplex(PolystaticsError):
    """The working cells do not form a single face-connected component."""

    exit_code = 2


class RoleMismatch(PolystaticsError):
    """Operation requires the other diagram role (form vs force)."""

    exit_code = 2


class EmptySystem(PolystaticsError):
    """No equilibrium equations remain after excluding the stress cell's edges."""

    exit_code = 3


class ZeroDof(PolystaticsError):
    """The equilibrium matrix has full column rank; only q = 0 solves it."""

    exit_code = 3


class DimensionMismatch(PolystaticsError):
    """A user vector has the wrong length for the system it parameterises."""

    exit_code = 5


class Infeasible(PolystaticsError):
    """The linear program admits no solution with all edge lengths >= 1."""

    exit_code = 4


class ZeroSolution(PolystaticsError):
    """q = 0 where a non-degenerate dual is required (it collapses to a point)."""

    exit_code = 3


class ZeroSolutionWarning(UserWarning):
    """A solver produced the all-zero density vector."""
