"""Kronecker products, quotients and remainders for dense complex matrices.

The package centers on one question: given M close to kron(A, B) and
one factor, how do you recover the other, and which algebraic rules can
such a recovery obey? It provides the product itself, a taxonomy of
left-quotient schemes (entrywise averages, weighted averages, the
Frobenius-optimal factor, an operator-norm variant, a trace-based rule,
and general linear rules), right quotients by perfect-shuffle
reduction, remainders and divisor tests, plus a seeded randomized suite
that verifies or refutes the candidate algebraic laws per scheme.
"""

from .axioms import (
    REAL_SCALARS,
    SCALARS,
    TOLERANCE,
    AxiomReport,
    Counterexample,
    check_axiom,
    check_projection,
    check_realization_conditions,
    check_weight_conditions,
    demo_counterexamples,
    replay_counterexample,
)
from .errors import (
    BlockIndexError,
    ConfigurationError,
    ConvergenceError,
    DegenerateInputError,
    InvalidFamilyError,
    InvalidRealizationError,
    InvalidWeightsError,
    KronError,
    MatrixFormatError,
    NonFiniteEntryError,
    ShapeError,
    SingularRealizationError,
    UnsupportedInputError,
    ZeroDivisorError,
)
from .matfile import (
    format_matrix,
    format_scalar,
    parse_matrix,
    parse_scalar,
    read_matrix,
    write_matrix,
)
from .matrix import FactorShape, Matrix, allclose, block, kron, relative_residual
from .pfp import pfp, pfp_scalar
from .quotients import (
    NzIndex,
    QuotientScheme,
    Realization,
    family_from_realization,
    frobenius_quotient,
    frobenius_realization,
    frobenius_weights,
    is_divisor,
    left_quotient,
    leopardi_quotient,
    leopardi_realization,
    leopardi_weights,
    linear_quotient,
    operator_quotient,
    operator_realization,
    perfect_shuffle,
    realization_for,
    remainder,
    right_quotient,
    trace_realization,
    trace_scheme_realization,
    uniform_quotient,
    vanloan_factor,
    weighted_quotient,
    weighted_realization,
)
from .singular import SvdResult, leading_pair, operator_norm, svd

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BlockIndexError",
    "ConfigurationError",
    "ConvergenceError",
    "Counterexample",
    "DegenerateInputError",
    "FactorShape",
    "InvalidFamilyError",
    "InvalidRealizationError",
    "InvalidWeightsError",
    "KronError",
    "Matrix",
    "MatrixFormatError",
    "NonFiniteEntryError",
    "NzIndex",
    "QuotientScheme",
    "REAL_SCALARS",
    "Realization",
    "SCALARS",
    "ShapeError",
    "SingularRealizationError",
    "SvdResult",
    "TOLERANCE",
    "UnsupportedInputError",
    "ZeroDivisorError",
    "allclose",
    "block",
    "check_axiom",
    "check_projection",
    "check_realization_conditions",
    "check_weight_conditions",
    "demo_counterexamples",
    "family_from_realization",
    "format_matrix",
    "format_scalar",
    "frobenius_quotient",
    "frobenius_realization",
    "frobenius_weights",
    "is_divisor",
    "kron",
    "leading_pair",
    "left_quotient",
    "leopardi_quotient",
    "leopardi_realization",
    "leopardi_weights",
    "linear_quotient",
    "operator_norm",
    "operator_quotient",
    "operator_realization",
    "parse_matrix",
    "parse_scalar",
    "perfect_shuffle",
    "pfp",
    "pfp_scalar",
    "read_matrix",
    "realization_for",
    "relative_residual",
    "remainder",
    "replay_counterexample",
    "right_quotient",
    "svd",
    "trace_realization",
    "trace_scheme_realization",
    "uniform_quotient",
    "vanloan_factor",
    "weighted_quotient",
    "weighted_realization",
    "write_matrix",
]
