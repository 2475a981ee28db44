"""Left and right Kronecker quotients, remainders, and divisor tests.

A left quotient undoes the Kronecker product from the left: for every
scheme here and every nonzero A,

    left_quotient(scheme, A, kron(A, B), shape) == B

up to floating-point error. Schemes differ in what they do on matrices
that are *not* exact Kronecker products:

* ``leopardi``   -- average of the blockwise ratios M_ij / A_ij over the
                    nonzero entries of A;
* ``weighted``   -- the same average under a caller-supplied weight rule
                    (weights sum to 1 over the nonzero entries);
* ``frobenius``  -- pairing with conj(A)/||A||_F^2; equivalently the
                    factor C minimizing ||M - kron(A, C)||_F;
* ``operator``   -- pairing with the rank-one matrix built from the
                    leading singular pair of A;
* ``trace``      -- pairing with I/tr(A), the unique uniform rule with
                    tr(M) = tr(A) tr(A quot M) on square blocks;
* ``linear``     -- a general linear rule given by a component family
                    Q[u,v,u',v'] with Q[u,v,u',v'] paired against A
                    equal to delta_uu' * delta_vv'.

All scheme objects are immutable and every evaluation is pure;
user-supplied weight rules and component families must themselves be
pure and reentrant to keep that guarantee.
"""

from __future__ import annotations

import dataclasses
from itertools import product
from typing import Callable, Mapping

import numpy as np

from .errors import (
    ConfigurationError,
    InvalidFamilyError,
    InvalidRealizationError,
    InvalidWeightsError,
    ShapeError,
    SingularRealizationError,
    UnsupportedInputError,
    ZeroDivisorError,
)
from .matrix import FactorShape, Matrix, block, kron
from .pfp import pfp, pfp_scalar
from .singular import leading_pair

# Entries below this magnitude count as zero wherever we divide by them;
# comparing against exact 0.0 would admit subnormal-sized divisors.
ZERO_THRESHOLD = 1e-300

REALIZATION_TOLERANCE = 1e-10
WEIGHT_SUM_TOLERANCE = 1e-12
FAMILY_TOLERANCE = 1e-10

WeightRule = Callable[[Matrix], Matrix]
FamilyRule = Callable[[Matrix, int, int], Mapping[tuple[int, int, int, int], Matrix]]


@dataclasses.dataclass(frozen=True)
class NzIndex:
    """1-based positions of the nonzero entries of a matrix, and their count."""

    positions: frozenset[tuple[int, int]]
    count: int

    @classmethod
    def of(cls, a: Matrix, threshold: float = ZERO_THRESHOLD) -> NzIndex:
        arr = np.abs(a.to_array())
        pos = frozenset((int(i) + 1, int(j) + 1)
                        for i, j in zip(*np.nonzero(arr >= threshold)))
        return cls(positions=pos, count=len(pos))


@dataclasses.dataclass(frozen=True)
class Realization:
    """Rule A -> Q(A) defining a uniform quotient A quot M = pfp(Q(A), M).

    Q(A) must have A's shape and satisfy pfp_scalar(Q(A), A) = 1; the
    package checks this at every evaluation point.
    """

    q_of: Callable[[Matrix], Matrix]
    label: str = "custom"

    def describe(self) -> str:
        return f"uniform({self.label})"


@dataclasses.dataclass(frozen=True)
class QuotientScheme:
    """A named quotient rule; build via the classmethod constructors."""

    kind: str
    weight_rule: WeightRule | None = None
    q_family: FamilyRule | None = None
    label: str | None = None

    _KINDS = ("leopardi", "weighted", "frobenius", "operator", "trace", "linear")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ConfigurationError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "weighted" and self.weight_rule is None:
            raise ConfigurationError("weighted scheme needs a weight rule")
        if self.kind == "linear" and self.q_family is None:
            raise ConfigurationError("linear scheme needs a component family")

    @classmethod
    def leopardi(cls) -> QuotientScheme:
        return cls(kind="leopardi")

    @classmethod
    def frobenius(cls) -> QuotientScheme:
        return cls(kind="frobenius")

    @classmethod
    def operator(cls) -> QuotientScheme:
        return cls(kind="operator")

    @classmethod
    def trace(cls) -> QuotientScheme:
        return cls(kind="trace")

    @classmethod
    def weighted(cls, rule: WeightRule, name: str | None = None) -> QuotientScheme:
        label = name or getattr(rule, "__name__", "custom")
        return cls(kind="weighted", weight_rule=rule, label=label)

    @classmethod
    def linear(cls, family: FamilyRule, name: str | None = None) -> QuotientScheme:
        label = name or getattr(family, "__name__", "custom")
        return cls(kind="linear", q_family=family, label=label)

    def describe(self) -> str:
        if self.kind in ("weighted", "linear"):
            return f"{self.kind}({self.label})"
        return self.kind


# -- built-in weight rules -------------------------------------------

def leopardi_weights(a: Matrix) -> Matrix:
    """Equal weight 1/nnz(A) on every nonzero entry."""
    nz = NzIndex.of(a)
    if nz.count == 0:
        raise ZeroDivisorError("cannot weight the zero matrix")
    w = np.zeros((a.rows, a.cols), dtype=np.complex128)
    for i, j in nz.positions:
        w[i - 1, j - 1] = 1.0 / nz.count
    return Matrix.from_array(w)


def _norm_squared(a: Matrix) -> float:
    # sum of squared magnitudes, computed without the sqrt/square round trip
    arr = a.to_array()
    return float(np.vdot(arr, arr).real)


def frobenius_weights(a: Matrix) -> Matrix:
    """Weight |a_ij|^2 / ||A||_F^2: each entry by its share of the energy."""
    norm2 = _norm_squared(a)
    if norm2 == 0.0:
        raise ZeroDivisorError("cannot weight the zero matrix")
    arr = a.to_array()
    return Matrix.from_array((arr.real**2 + arr.imag**2) / norm2)


# -- shape plumbing ---------------------------------------------------

def _check_left_shapes(a: Matrix, m: Matrix, shape: FactorShape) -> None:
    if (a.rows, a.cols) != (shape.m, shape.n):
        raise ShapeError(f"divisor is {a.rows}x{a.cols}, expected "
                         f"{shape.m}x{shape.n} for factor shape "
                         f"(m={shape.m}, n={shape.n}, s={shape.s}, t={shape.t})")
    shape.require(m, "dividend")


def _require_nonzero(a: Matrix) -> None:
    if a.frobenius_norm() == 0.0:
        raise ZeroDivisorError("quotient by the zero matrix")


# -- individual schemes ----------------------------------------------

def leopardi_quotient(a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """Average of block(M, i, j) / A[i, j] over the nonzero entries of A."""
    _check_left_shapes(a, m, shape)
    nz = NzIndex.of(a)
    if nz.count == 0:
        raise ZeroDivisorError("quotient by the zero matrix (no entries above the zero threshold)")
    marr = m.to_array()
    s, t = shape.s, shape.t
    acc = np.zeros((s, t), dtype=np.complex128)
    for i, j in sorted(nz.positions):
        acc += marr[(i - 1) * s : i * s, (j - 1) * t : j * t] / a.entry(i, j)
    return Matrix.from_array(acc / nz.count)


def weighted_quotient(weight_rule: WeightRule, a: Matrix, m: Matrix,
                      shape: FactorShape) -> Matrix:
    """Weighted average of blockwise ratios under a unit-sum weight rule."""
    _check_left_shapes(a, m, shape)
    nz = NzIndex.of(a)
    if nz.count == 0:
        raise ZeroDivisorError("quotient by the zero matrix (no entries above the zero threshold)")
    w = weight_rule(a)
    _validate_weights(w, a, nz)
    marr = m.to_array()
    s, t = shape.s, shape.t
    acc = np.zeros((s, t), dtype=np.complex128)
    for i, j in sorted(nz.positions):
        acc += (w.entry(i, j) / a.entry(i, j)) * marr[(i - 1) * s : i * s, (j - 1) * t : j * t]
    return Matrix.from_array(acc)


def _validate_weights(w: Matrix, a: Matrix, nz: NzIndex) -> None:
    if w.shape != a.shape:
        raise InvalidWeightsError(f"weight rule returned a {w.rows}x{w.cols} matrix "
                                  f"for a {a.rows}x{a.cols} argument")
    total = sum(w.entry(i, j) for i, j in nz.positions)
    if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
        raise InvalidWeightsError(f"weights over the nonzero entries sum to {total}, expected 1")
    off_support = sum(abs(w.entry(i, j))
                      for i, j in product(range(1, a.rows + 1), range(1, a.cols + 1))
                      if (i, j) not in nz.positions)
    if off_support > WEIGHT_SUM_TOLERANCE:
        raise InvalidWeightsError("weight rule puts weight on zero entries of its argument")


def frobenius_quotient(a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """Quotient minimizing ||M - kron(A, C)||_F over the factor C."""
    _check_left_shapes(a, m, shape)
    norm2 = _norm_squared(a)
    if norm2 == 0.0:
        raise ZeroDivisorError("quotient by the zero matrix")
    return pfp(a.conjugate() / norm2, m)


def vanloan_factor(a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """Nearest-factor formula B[i,j] = tr(Mtilde_ij^T A) / ||A||_F^2, real data only.

    Mtilde_ij picks every (i, j)-within-block entry of M. Kept separate
    from frobenius_quotient so the two routes can be checked against
    each other; for complex data use frobenius_quotient, which carries
    the conjugation.
    """
    _check_left_shapes(a, m, shape)
    for name, mat in (("divisor", a), ("dividend", m)):
        if np.any(mat.to_array().imag != 0.0):
            raise UnsupportedInputError(
                f"{name} has complex entries; use frobenius_quotient for complex data")
    norm2 = _norm_squared(a)
    if norm2 == 0.0:
        raise ZeroDivisorError("quotient by the zero matrix")
    mm, nn, s, t = shape
    eye_m = Matrix.identity(mm)
    eye_n = Matrix.identity(nn)
    out = np.zeros((s, t), dtype=np.complex128)
    for i in range(1, s + 1):
        left = kron(eye_m, Matrix.basis_column(s, i)).transpose()
        for j in range(1, t + 1):
            right = kron(eye_n, Matrix.basis_column(t, j))
            m_tilde = left @ m @ right
            out[i - 1, j - 1] = (m_tilde.transpose() @ a).trace() / norm2
    return Matrix.from_array(out)


def operator_quotient(a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """Quotient reading only the leading singular direction of the divisor."""
    _check_left_shapes(a, m, shape)
    _require_nonzero(a)
    u1, sigma1, v1 = leading_pair(a)
    q = (u1.conjugate() @ v1.transpose()) / sigma1
    return pfp(q, m)


def trace_realization(a: Matrix) -> Matrix:
    """Q(A) = I/tr(A), defined for square matrices with nonzero trace."""
    if not a.is_square():
        raise ShapeError(f"trace realization needs a square matrix, got {a.rows}x{a.cols}")
    tr = a.trace()
    if tr == 0:
        raise SingularRealizationError(
            "trace realization Q(A) = I/tr(A) is undefined: tr(A) = 0")
    return Matrix.identity(a.rows) / tr


def uniform_quotient(realization: Realization, a: Matrix, m: Matrix,
                     shape: FactorShape) -> Matrix:
    """Evaluate A quot M = pfp(Q(A), M) for a realization A -> Q(A)."""
    _check_left_shapes(a, m, shape)
    _require_nonzero(a)
    q = realization.q_of(a)
    if not isinstance(q, Matrix) or q.shape != a.shape:
        raise InvalidRealizationError("realization must return a matrix of the divisor's shape")
    unit = pfp_scalar(q, a)
    if abs(unit - 1.0) > REALIZATION_TOLERANCE:
        raise InvalidRealizationError(
            f"realization pairs to {unit} against its argument, expected 1")
    return pfp(q, m)


def linear_quotient(family: FamilyRule, a: Matrix, m: Matrix,
                    shape: FactorShape) -> Matrix:
    """Evaluate a general linear quotient from its component family.

    ``family(a, s, t)`` returns a mapping from 1-based component indices
    (u, v, u', v') to m x n matrices; missing components count as zero.
    The family is validated eagerly: component (u,v,u',v') must pair to
    delta_uu' * delta_vv' against the divisor.
    """
    _check_left_shapes(a, m, shape)
    _require_nonzero(a)
    s, t = shape.s, shape.t
    components = dict(family(a, s, t))
    for (u, v, u2, v2), comp in components.items():
        if not (1 <= u <= s and 1 <= u2 <= s and 1 <= v <= t and 1 <= v2 <= t):
            raise InvalidFamilyError(f"component index ({u},{v},{u2},{v2}) outside "
                                     f"the {s}x{t} block size")
        if comp.shape != a.shape:
            raise InvalidFamilyError(f"component ({u},{v},{u2},{v2}) is "
                                     f"{comp.rows}x{comp.cols}, expected {a.rows}x{a.cols}")
    for u, v in product(range(1, s + 1), range(1, t + 1)):
        for u2, v2 in product(range(1, s + 1), range(1, t + 1)):
            expected = 1.0 if (u == u2 and v == v2) else 0.0
            comp = components.get((u, v, u2, v2))
            if comp is None:
                paired = 0.0
            else:
                paired = pfp_scalar(comp, a)
            if abs(paired - expected) > FAMILY_TOLERANCE:
                raise InvalidFamilyError(
                    f"component ({u},{v},{u2},{v2}) pairs to {paired} against the "
                    f"divisor, expected {expected}")
    out = np.zeros((s, t), dtype=np.complex128)
    for (u, v, u2, v2), comp in components.items():
        out[u2 - 1, v2 - 1] += pfp(comp, m).entry(u, v)
    return Matrix.from_array(out)


# -- realizations of the built-in uniform schemes ----------------------

def weighted_realization(rule: WeightRule, name: str | None = None) -> Realization:
    """Q(A)[i,j] = W(A)[i,j] / A[i,j] on the nonzero entries, 0 elsewhere."""

    def q_of(a: Matrix) -> Matrix:
        nz = NzIndex.of(a)
        if nz.count == 0:
            raise ZeroDivisorError("quotient by the zero matrix")
        w = rule(a)
        _validate_weights(w, a, nz)
        q = np.zeros((a.rows, a.cols), dtype=np.complex128)
        for i, j in nz.positions:
            q[i - 1, j - 1] = w.entry(i, j) / a.entry(i, j)
        return Matrix.from_array(q)

    return Realization(q_of=q_of, label=name or getattr(rule, "__name__", "weighted"))


def leopardi_realization() -> Realization:
    return weighted_realization(leopardi_weights, "leopardi")


def frobenius_realization() -> Realization:
    def q_of(a: Matrix) -> Matrix:
        norm2 = _norm_squared(a)
        if norm2 == 0.0:
            raise ZeroDivisorError("quotient by the zero matrix")
        return a.conjugate() / norm2

    return Realization(q_of=q_of, label="frobenius")


def operator_realization() -> Realization:
    def q_of(a: Matrix) -> Matrix:
        _require_nonzero(a)
        u1, sigma1, v1 = leading_pair(a)
        return (u1.conjugate() @ v1.transpose()) / sigma1

    return Realization(q_of=q_of, label="operator")


def trace_scheme_realization() -> Realization:
    return Realization(q_of=trace_realization, label="trace")


def realization_for(scheme: QuotientScheme) -> Realization:
    """The realization of a uniform scheme; linear schemes have none."""
    if scheme.kind == "leopardi":
        return leopardi_realization()
    if scheme.kind == "weighted":
        return weighted_realization(scheme.weight_rule, scheme.label)
    if scheme.kind == "frobenius":
        return frobenius_realization()
    if scheme.kind == "operator":
        return operator_realization()
    if scheme.kind == "trace":
        return trace_scheme_realization()
    raise ConfigurationError(f"scheme {scheme.describe()!r} is not uniform: "
                             "it has no single-matrix realization")


def family_from_realization(realization: Realization) -> FamilyRule:
    """The component family of a uniform quotient: diagonal copies of Q(A)."""

    def family(a: Matrix, s: int, t: int):
        q = realization.q_of(a)
        return {(u, v, u, v): q for u in range(1, s + 1) for v in range(1, t + 1)}

    return family


# -- the scheme-dispatching entry points --------------------------------

SchemeLike = QuotientScheme | Realization


def left_quotient(scheme, a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """Left quotient of M by A under the given scheme (or realization)."""
    if isinstance(scheme, Realization):
        return uniform_quotient(scheme, a, m, shape)
    if not isinstance(scheme, QuotientScheme):
        raise ConfigurationError(f"expected a QuotientScheme or Realization, got {scheme!r}")
    if scheme.kind == "leopardi":
        return leopardi_quotient(a, m, shape)
    if scheme.kind == "weighted":
        return weighted_quotient(scheme.weight_rule, a, m, shape)
    if scheme.kind == "frobenius":
        return frobenius_quotient(a, m, shape)
    if scheme.kind == "operator":
        return operator_quotient(a, m, shape)
    if scheme.kind == "trace":
        return uniform_quotient(trace_scheme_realization(), a, m, shape)
    return linear_quotient(scheme.q_family, a, m, shape)


def remainder(scheme, a: Matrix, m: Matrix, shape: FactorShape) -> Matrix:
    """M - kron(A, left_quotient(...)): what the divisor fails to explain."""
    return m - kron(a, left_quotient(scheme, a, m, shape))


def is_divisor(scheme, a: Matrix, m: Matrix, shape: FactorShape, *,
               rtol: float = 1e-10, atol: float = 1e-12) -> bool:
    """Whether the remainder vanishes up to atol + rtol * ||M||_F."""
    r = remainder(scheme, a, m, shape)
    return r.frobenius_norm() <= atol + rtol * m.frobenius_norm()


def perfect_shuffle(m: int, s: int) -> Matrix:
    """Permutation moving block index (i-1)s+p to (p-1)m+i.

    With S1 = perfect_shuffle(m, s) and S2 = perfect_shuffle(n, t),
    S1 @ kron(A, B) @ S2.transpose() == kron(B, A) for A m x n, B s x t.
    """
    dim = m * s
    p = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(m):
        for q in range(s):
            p[q * m + i, i * s + q] = 1.0
    return Matrix.from_array(p)


def right_quotient(scheme, m: Matrix, b: Matrix, shape: FactorShape) -> Matrix:
    """Right quotient recovering the left factor: (A kron B) rquot B = A.

    Reduced to a left quotient by conjugating with perfect-shuffle
    permutations, which swap the Kronecker factor order.
    """
    if (b.rows, b.cols) != (shape.s, shape.t):
        raise ShapeError(f"divisor is {b.rows}x{b.cols}, expected "
                         f"{shape.s}x{shape.t} for factor shape "
                         f"(m={shape.m}, n={shape.n}, s={shape.s}, t={shape.t})")
    shape.require(m, "dividend")
    s_rows = perfect_shuffle(shape.m, shape.s)
    s_cols = perfect_shuffle(shape.n, shape.t)
    shuffled = s_rows @ m @ s_cols.transpose()
    swapped = FactorShape(shape.s, shape.t, shape.m, shape.n)
    return left_quotient(scheme, b, shuffled, swapped)
