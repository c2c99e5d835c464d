"""Exception hierarchy shared by all modules."""


class SparseNullError(Exception):
    """Base class for every error raised by this package."""


class ContractViolation(SparseNullError, ValueError):
    """Caller broke an operation's precondition (shapes, dimensions, signs)."""


class UnsupportedDimension(SparseNullError, ValueError):
    """Ambient dimension outside the supported range."""


class DegenerateInput(SparseNullError, ValueError):
    """Input is well-formed but degenerate (zero polynomial, flat polytope, ...)."""


class HypothesisViolation(SparseNullError):
    """A theorem hypothesis is provably false for the given input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisUnverifiable(SparseNullError):
    """A theorem hypothesis can neither be derived nor was it asserted."""
