"""Exception types shared across the library."""


class FreudQuadError(Exception):
    """Base class for all library errors."""


class DomainError(FreudQuadError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class IndexRangeError(FreudQuadError, IndexError):
    """Node or zero index outside the range a formula covers."""


class DegeneracyError(FreudQuadError, ArithmeticError):
    """A radicand or denominator degenerated where theory says it cannot."""


class UnsupportedRegimeError(FreudQuadError, ValueError):
    """Requested n is outside the regime of this method; use the dispatcher."""


class ConvergenceError(FreudQuadError, RuntimeError):
    """Newton iteration failed to converge within its sweep budget."""

    def __init__(self, message, index=None, residual=None):
        super().__init__(message)
        self.index = index
        self.residual = residual


class ResolutionError(FreudQuadError, RuntimeError):
    """A discretization certificate failed; the requested accuracy is not
    trusted at the current resolution."""
