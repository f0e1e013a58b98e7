"""Exception types shared across the package."""


class CasimirForgeError(Exception):
    """Base class for all package errors."""


class ParseError(CasimirForgeError):
    """Malformed input document (algebra definition, assignment file, ...)."""


class ValidationError(CasimirForgeError):
    """Algebra data violates a structural invariant (antisymmetry, Jacobi, range)."""


class IndexOutOfRange(ValidationError):
    """Generator index outside 1..dim."""


class UnassignedSymbol(CasimirForgeError):
    """A template symbol has no assignment in substitute()."""


class EmbeddingCheckFailed(CasimirForgeError):
    """Candidate virtual-copy generators do not satisfy the scaled relations."""


class NotExpressible(CasimirForgeError):
    """Target element has no expression within the configured degree bounds."""


class BudgetExceeded(CasimirForgeError):
    """A term-count or solver-size budget was exceeded; partial results may exist."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
