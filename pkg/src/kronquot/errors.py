"""Exception types raised across the package.

Everything user-facing derives from :class:`KronError`, so callers (and
the CLI) can catch one base class. A few types double as the matching
builtin (``ValueError``, ``IndexError``, ``ZeroDivisionError``) for
callers that think in stdlib terms.
"""


class KronError(Exception):
    """Base class for all errors raised by kronquot."""


class ShapeError(KronError, ValueError):
    """Matrix dimensions are inconsistent with the requested operation."""


class BlockIndexError(KronError, IndexError):
    """A 1-based row/column or block index lies outside its valid range."""


class NonFiniteEntryError(KronError, ValueError):
    """NaN or infinite entries are rejected at construction time."""


class MatrixFormatError(KronError, ValueError):
    """Malformed matrix text."""


class ZeroDivisorError(KronError, ZeroDivisionError):
    """Quotient with the zero matrix as divisor."""


class SingularRealizationError(KronError):
    """The trace rule Q(A) = I/tr(A) needs a nonzero trace."""


class InvalidWeightsError(KronError):
    """Weight rule output breaks the support or unit-sum contract."""


class InvalidRealizationError(KronError):
    """Realization output does not pair to 1 against its argument."""


class InvalidFamilyError(KronError):
    """Linear-quotient component family breaks the delta normalization."""


class UnsupportedInputError(KronError):
    """Input is outside the operation's declared domain."""


class DegenerateInputError(KronError):
    """Input admits no well-defined answer (e.g. leading pair of 0)."""


class ConfigurationError(KronError):
    """Invalid configuration of a property check."""


class ConvergenceError(KronError):
    """Iteration budget exhausted before reaching the target residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
