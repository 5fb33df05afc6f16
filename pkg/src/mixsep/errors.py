"""Exception types shared across the package.

Input validation problems raise plain ``ValueError``; the classes below
signal numerical failures that occur on structurally valid input.
"""


class NumericalError(RuntimeError):
    """Base class for numerical failures (degenerate or ill-posed input)."""


class NotPositiveDefiniteError(NumericalError):
    """A matrix required to be symmetric positive definite is not."""


class EigenConvergenceError(NumericalError):
    """The eigenvalue backend failed to converge."""


class SingularMatrixError(NumericalError):
    """A matrix required to be full rank is (numerically) singular."""


class ConvergenceError(NumericalError):
    """An iterative procedure did not reach its target precision."""


class ResidualCheckError(NumericalError):
    """A computed solution failed its residual verification."""
