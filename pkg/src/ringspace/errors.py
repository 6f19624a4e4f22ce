"""Exception hierarchy shared by all ringspace modules.

Every failure mode raised by the library derives from :class:`RingspaceError`
so callers (notably the CLI) can map errors to exit codes without inspecting
messages.
"""


class RingspaceError(Exception):
    """Base class for all ringspace errors."""


class GeometryError(RingspaceError):
    """Domain data is invalid: radius outside (0, 1), point off the open
    annulus, pole too close to the boundary, or an exhaustion stage that
    excludes the base point."""


class ArgumentError(RingspaceError):
    """An argument violates an operation's precondition (too few quadrature
    nodes, non-conjugate-symmetric boundary data, unknown component index)."""


class SingularGramError(RingspaceError):
    """A weighted Gram matrix is numerically singular after diagonal
    equilibration (scaled condition number above 1e14)."""


class SingularConstraintsError(RingspaceError):
    """Interpolation constraints of a least-norm problem are linearly
    dependent (for example a repeated zero beyond window capacity)."""


class ZeroOnContourError(RingspaceError):
    """Argument-principle counting was attempted along a circle on which the
    function nearly vanishes (min modulus below 1e-10)."""


class ConvergenceError(RingspaceError):
    """An iterative refinement (Newton polish of a zero) stalled.

    Carries ``best_residual`` when available so callers can report the
    partial result.
    """

    def __init__(self, msg, best_residual=None):
        super().__init__(msg)
        self.best_residual = best_residual


class BlaschkeDivergenceError(RingspaceError):
    """Partial sums of Green's function values over a zero sequence exceeded
    the divergence bound without tail decay; the sequence is not a zero set."""


class PeriodError(RingspaceError):
    """Numerical period cancellation for an inner-function exponent did not
    reach tolerance even after one truncation retry."""


class SolverError(RingspaceError):
    """A sparse linear system (biharmonic probe) is numerically singular."""
