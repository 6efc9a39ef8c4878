"""Exception hierarchy.

Two families matter to callers: ``InputError`` for bad data handed in from
outside, and ``NumericalFailure`` for a construction that could not be
completed to tolerance. The CLI maps them to exit codes 1 and 2.
"""


class SimplexOrderError(Exception):
    """Base class for all library errors."""


class InputError(SimplexOrderError, ValueError):
    """Invalid input: wrong shape, non-finite entries, broken invariants."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class DegenerateSimplex(InputError):
    """Vertices lie in a totally geodesic hypersurface (or an equivalent
    algebraic degeneracy was detected downstream)."""


class DegenerateRay(InputError):
    """A geodesic ray from ``s`` through ``v`` is undefined (``v == ±s``)."""


class PreconditionViolated(InputError):
    """A documented precondition of an operation does not hold."""


class BallTooLarge(InputError):
    """The smallest enclosing spherical ball has radius >= pi/2."""


class NumericalFailure(SimplexOrderError, ArithmeticError):
    """An iterative or verified construction did not reach its tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class SingularSystem(NumericalFailure):
    """Linear system is singular to working tolerance."""

    def __init__(self, message, smallest_singular_value):
        super().__init__(message, {"smallest_singular_value": smallest_singular_value})
        self.smallest_singular_value = smallest_singular_value
