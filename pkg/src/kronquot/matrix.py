"""Dense complex matrices, the Kronecker product and block access.

Scalars are complex binary64 throughout; real matrices are simply the
special case of zero imaginary parts. Public row/column and block
indices are 1-based (the usual linear-algebra convention); storage is
0-based row-major underneath. Values are immutable after construction
and every operation is a pure function, so concurrent use needs no
synchronization.
"""

from __future__ import annotations

import dataclasses
import math
import operator
from typing import Iterable, Sequence

import numpy as np

from .errors import BlockIndexError, NonFiniteEntryError, ShapeError

_MAX_INDEX = np.iinfo(np.intp).max

ScalarLike = complex | float | int


def _as_positive_int(value, what: str) -> int:
    try:
        n = operator.index(value)
    except TypeError:
        raise ShapeError(f"{what} must be an integer, got {value!r}") from None
    if n < 1:
        raise ShapeError(f"{what} must be positive, got {n}")
    return n


class Matrix:
    """An immutable ``rows x cols`` matrix of complex floats.

    Construct from a flat row-major sequence, or use the classmethods:

    >>> Matrix(2, 2, [1, 2, 3, 4]) == Matrix.from_rows([[1, 2], [3, 4]])
    True
    """

    __slots__ = ("_a",)

    def __init__(self, rows: int, cols: int, entries: Iterable[ScalarLike]):
        rows = _as_positive_int(rows, "rows")
        cols = _as_positive_int(cols, "cols")
        a = np.asarray(list(entries) if not isinstance(entries, np.ndarray) else entries,
                       dtype=np.complex128)
        if a.ndim != 1 or a.size != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries for a "
                             f"{rows}x{cols} matrix, got {a.size}")
        if not np.isfinite(a).all():
            raise NonFiniteEntryError("matrix entries must be finite (no NaN/Inf)")
        self._a = _freeze(a.reshape(rows, cols).copy())

    # -- constructors ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> Matrix:
        """Build from a non-empty list of equal-length rows."""
        if not rows or not rows[0]:
            raise ShapeError("from_rows needs at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("rows have unequal lengths")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_array(cls, arr) -> Matrix:
        """Build from a 2-D array-like (the data is copied)."""
        a = np.array(arr, dtype=np.complex128, copy=True)
        if a.ndim != 2:
            raise ShapeError(f"expected a 2-D array, got ndim={a.ndim}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {a.shape}")
        m = object.__new__(cls)
        m._a = _freeze(a)
        if not np.isfinite(m._a).all():
            raise NonFiniteEntryError("matrix entries must be finite (no NaN/Inf)")
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> Matrix:
        return cls.from_array(np.zeros((_as_positive_int(rows, "rows"),
                                        _as_positive_int(cols, "cols"))))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.from_array(np.eye(_as_positive_int(n, "n")))

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> Matrix:
        if not values:
            raise ShapeError("diagonal needs at least one value")
        return cls.from_array(np.diag(np.asarray(values, dtype=np.complex128)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> Matrix:
        """The matrix with a single 1 at 1-based position (i, j)."""
        rows = _as_positive_int(rows, "rows")
        cols = _as_positive_int(cols, "cols")
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise BlockIndexError(f"entry ({i},{j}) outside a {rows}x{cols} matrix")
        a = np.zeros((rows, cols), dtype=np.complex128)
        a[i - 1, j - 1] = 1.0
        return cls.from_array(a)

    @classmethod
    def basis_column(cls, n: int, i: int) -> Matrix:
        """The i-th standard basis column vector of length n (1-based)."""
        return cls.unit(n, 1, i, 1)

    @classmethod
    def ones(cls, rows: int, cols: int) -> Matrix:
        return cls.from_array(np.ones((_as_positive_int(rows, "rows"),
                                       _as_positive_int(cols, "cols"))))

    # -- basic attributes --------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple[complex, ...]:
        """Row-major tuple of all entries."""
        return tuple(complex(x) for x in self._a.ravel())

    def entry(self, i: int, j: int) -> complex:
        """The entry at 1-based position (i, j)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise BlockIndexError(f"entry ({i},{j}) outside a {self.rows}x{self.cols} matrix")
        return complex(self._a[i - 1, j - 1])

    def row(self, i: int) -> Matrix:
        if not 1 <= i <= self.rows:
            raise BlockIndexError(f"row {i} outside a {self.rows}x{self.cols} matrix")
        return Matrix.from_array(self._a[i - 1 : i, :])

    def column(self, j: int) -> Matrix:
        if not 1 <= j <= self.cols:
            raise BlockIndexError(f"column {j} outside a {self.rows}x{self.cols} matrix")
        return Matrix.from_array(self._a[:, j - 1 : j])

    def to_array(self) -> np.ndarray:
        """A fresh writable complex128 copy of the data."""
        return self._a.copy()

    def to_lists(self) -> list[list[complex]]:
        return [[complex(x) for x in row] for row in self._a]

    # -- structural operations ---------------------------------------

    def transpose(self) -> Matrix:
        return Matrix.from_array(self._a.T)

    def conjugate(self) -> Matrix:
        return Matrix.from_array(self._a.conj())

    def adjoint(self) -> Matrix:
        """Conjugate transpose."""
        return Matrix.from_array(self._a.conj().T)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return bool((self._a == 0).all())

    # -- scalar reductions -------------------------------------------

    def trace(self) -> complex:
        if not self.is_square():
            raise ShapeError(f"trace needs a square matrix, got {self.rows}x{self.cols}")
        return complex(np.trace(self._a))

    def frobenius_norm(self) -> float:
        """sqrt of the summed squared entry magnitudes."""
        return math.sqrt(float(np.vdot(self._a, self._a).real))

    def determinant(self) -> complex:
        """Determinant by Gaussian elimination with partial pivoting."""
        if not self.is_square():
            raise ShapeError(f"determinant needs a square matrix, got {self.rows}x{self.cols}")
        a = self._a.copy()
        n = self.rows
        det = complex(1.0)
        for k in range(n):
            p = k + int(np.argmax(np.abs(a[k:, k])))
            if a[p, k] == 0:
                return complex(0.0)
            if p != k:
                a[[k, p], k:] = a[[p, k], k:]
                det = -det
            det *= complex(a[k, k])
            if k + 1 < n:
                factors = a[k + 1 :, k] / a[k, k]
                a[k + 1 :, k + 1 :] -= np.outer(factors, a[k, k + 1 :])
        return det

    # -- arithmetic ----------------------------------------------------

    def _same_shape(self, other: Matrix, op: str) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"cannot {op} a {self.rows}x{self.cols} and a "
                             f"{other.rows}x{other.cols} matrix")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "add")
        return Matrix.from_array(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "subtract")
        return Matrix.from_array(self._a - other._a)

    def __neg__(self):
        return Matrix.from_array(-self._a)

    def __mul__(self, k):
        if isinstance(k, Matrix):
            raise TypeError("use A @ B for the matrix product")
        return Matrix.from_array(self._a * complex(k))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, Matrix):
            raise TypeError("matrix/matrix division is not defined; see the quotient schemes")
        return Matrix.from_array(self._a / complex(k))

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by "
                             f"{other.rows}x{other.cols}")
        return Matrix.from_array(self._a @ other._a)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._a == other._a).all())

    __hash__ = None  # mutable-looking equality; use .entries for hashing needs

    def __repr__(self):
        body = ", ".join(repr([_py(x) for x in row]) for row in self._a)
        return f"Matrix.from_rows([{body}])"


def _py(x: np.complex128):
    z = complex(x)
    return z.real if z.imag == 0.0 else z


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclasses.dataclass(frozen=True)
class FactorShape:
    """How an (m*s) x (n*t) matrix is read as an m x n grid of s x t blocks."""

    m: int
    n: int
    s: int
    t: int

    def __post_init__(self):
        for name in ("m", "n", "s", "t"):
            object.__setattr__(self, name, _as_positive_int(getattr(self, name), name))

    def __iter__(self):
        return iter((self.m, self.n, self.s, self.t))

    def compatible(self, matrix: Matrix) -> bool:
        return matrix.rows == self.m * self.s and matrix.cols == self.n * self.t

    def require(self, matrix: Matrix, what: str = "matrix") -> None:
        if not self.compatible(matrix):
            raise ShapeError(
                f"{what} is {matrix.rows}x{matrix.cols}, expected "
                f"{self.m * self.s}x{self.n * self.t} for factor shape "
                f"(m={self.m}, n={self.n}, s={self.s}, t={self.t})")


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: the block matrix whose (i, j) block is a[i,j] * b."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    if rows > _MAX_INDEX or cols > _MAX_INDEX or rows * cols > _MAX_INDEX:
        raise ShapeError(f"Kronecker product size {rows}x{cols} exceeds the platform index range")
    return Matrix.from_array(np.kron(a._a, b._a))


def block(m: Matrix, shape: FactorShape, i: int, j: int) -> Matrix:
    """The s x t block in block-row i, block-column j (1-based)."""
    shape.require(m)
    if not (1 <= i <= shape.m and 1 <= j <= shape.n):
        raise BlockIndexError(f"block ({i},{j}) outside the {shape.m}x{shape.n} block grid")
    s, t = shape.s, shape.t
    return Matrix.from_array(m._a[(i - 1) * s : i * s, (j - 1) * t : j * t])


def allclose(a: Matrix, b: Matrix, *, rtol: float = 1e-10, atol: float = 1e-12) -> bool:
    """Entrywise |a - b| <= atol + rtol * |b|, the package's equality metric."""
    if a.shape != b.shape:
        return False
    return bool(np.allclose(a._a, b._a, rtol=rtol, atol=atol))


def relative_residual(a: Matrix, b: Matrix) -> float:
    """Frobenius distance scaled by max(1, norms); the residual metric of the checks."""
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare a {a.rows}x{a.cols} and a {b.rows}x{b.cols} matrix")
    num = math.sqrt(float(np.vdot(a._a - b._a, a._a - b._a).real))
    return num / max(1.0, a.frobenius_norm(), b.frobenius_norm())
