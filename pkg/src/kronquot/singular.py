"""One-sided Jacobi singular value decomposition with a total output convention.

The factorization A = U * Sigma * V' (V' the conjugate transpose) is not
unique, and the operator quotient downstream takes the leading singular
pair literally, so this module pins every freedom:

* singular values are sorted in non-increasing order; ties keep the
  post-sweep column order (stable sort);
* each right singular vector is re-phased so that its largest-magnitude
  entry (lowest index on magnitude ties) is real and positive;
* the matching left singular vector carries the compensating phase, so
  u_k' A v_k = sigma_k >= 0;
* columns belonging to (numerically) zero singular values, and the
  extra columns of the larger unitary factor, are filled by
  Gram-Schmidt over the standard basis under the same phase rule.

Everything is a pure function of the input bits: calling twice on equal
inputs returns bit-identical results.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import ConvergenceError, DegenerateInputError, UnsupportedInputError
from .matrix import Matrix

_EPS = float(np.finfo(np.float64).eps)

# Convergence: a column pair (x, y) counts as orthogonal once
# |w_x' w_y| <= _PAIR_TOL * ||w_x|| * ||w_y||.
_PAIR_TOL = 1e-14
_SWEEPS_PER_COLUMN = 30


@dataclasses.dataclass(frozen=True)
class SvdResult:
    """Decomposition A = u * Sigma * v.adjoint() with sigma on Sigma's diagonal."""

    u: Matrix
    sigma: tuple[float, ...]
    v: Matrix

    def reconstruct(self) -> Matrix:
        sig = np.zeros((self.u.rows, self.v.rows), dtype=np.complex128)
        for k, value in enumerate(self.sigma):
            sig[k, k] = value
        return Matrix.from_array(self.u.to_array() @ sig @ self.v.to_array().conj().T)


def _column_norms(w: np.ndarray) -> np.ndarray:
    return np.sqrt(np.einsum("ij,ij->j", w.conj(), w).real)


def _offdiag_ratio(w: np.ndarray) -> float:
    """Largest |gram[x,y]| / (||w_x|| ||w_y||) over column pairs."""
    worst = 0.0
    ncols = w.shape[1]
    for x in range(ncols - 1):
        for y in range(x + 1, ncols):
            # multiply the roots, not the squares: the squares' product can
            # underflow or overflow for uniformly tiny or huge data
            scale = math.sqrt(float(np.vdot(w[:, x], w[:, x]).real)) \
                * math.sqrt(float(np.vdot(w[:, y], w[:, y]).real))
            if scale == 0.0:
                continue
            worst = max(worst, abs(complex(np.vdot(w[:, x], w[:, y]))) / scale)
    return worst


def _one_sided_jacobi(work: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthogonalize the columns of ``work`` in place by plane rotations.

    Returns (w, sigma, v) with w = original @ v, v unitary, w's columns
    mutually orthogonal, and sigma = column norms sorted descending
    (w and v columns permuted to match).
    """
    ncols = work.shape[1]
    v = np.eye(ncols, dtype=np.complex128)
    budget = max(1, _SWEEPS_PER_COLUMN * ncols)
    for _ in range(budget):
        rotated = False
        for x in range(ncols - 1):
            for y in range(x + 1, ncols):
                wx = work[:, x]
                wy = work[:, y]
                alpha = float(np.vdot(wx, wx).real)
                beta = float(np.vdot(wy, wy).real)
                gamma = complex(np.vdot(wx, wy))
                g = abs(gamma)
                # sqrt before multiplying: alpha*beta under/overflows at
                # uniformly extreme scales and would mute every rotation
                scale = math.sqrt(alpha) * math.sqrt(beta)
                if scale == 0.0 or g <= _PAIR_TOL * scale:
                    continue
                rotated = True
                phase_conj = gamma.conjugate() / g
                tau = (beta - alpha) / (2.0 * g)
                tee = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, tee)
                s = tee * c
                new_x = c * wx - (s * phase_conj) * wy
                new_y = s * wx + (c * phase_conj) * wy
                work[:, x] = new_x
                work[:, y] = new_y
                vx = v[:, x].copy()
                vy = v[:, y].copy()
                v[:, x] = c * vx - (s * phase_conj) * vy
                v[:, y] = s * vx + (c * phase_conj) * vy
        if not rotated:
            break
    else:
        residual = _offdiag_ratio(work)
        if residual > _PAIR_TOL:
            raise ConvergenceError(
                f"one-sided Jacobi did not converge within {budget} sweeps "
                f"(off-diagonal ratio {residual:.3e})", residual)
    sigma = _column_norms(work)
    order = np.argsort(-sigma, kind="stable")
    return work[:, order], sigma[order], v[:, order]


def _phase_of(col: np.ndarray) -> complex:
    """Unit phase of the largest-magnitude entry (first on ties)."""
    idx = int(np.argmax(np.abs(col)))
    pivot = complex(col[idx])
    mag = abs(pivot)
    if mag == 0.0:
        return 1.0 + 0.0j
    return pivot / mag


def _gram_schmidt_fill(q: np.ndarray, start: int) -> None:
    """Fill columns [start:] with phase-normalized orthonormal basis completions."""
    dim = q.shape[0]
    # Any k orthonormal columns leave some standard basis vector with
    # residual norm >= 1/sqrt(dim), so first-fit with this threshold succeeds.
    threshold = 0.5 / math.sqrt(dim)
    col = start
    for candidate in range(dim):
        if col == dim:
            return
        x = np.zeros(dim, dtype=np.complex128)
        x[candidate] = 1.0
        for _ in range(2):  # re-orthogonalize once for stability
            x = x - q[:, :col] @ (q[:, :col].conj().T @ x)
        norm = math.sqrt(float(np.vdot(x, x).real))
        if norm < threshold:
            continue
        x = x / norm
        q[:, col] = x * np.conj(_phase_of(x))
        col += 1
    if col != dim:  # unreachable: the pigeonhole bound above guarantees candidates
        raise ConvergenceError("orthonormal completion ran out of candidates", 0.0)


def svd(a: Matrix) -> SvdResult:
    """Singular value decomposition under the module's fixed convention.

    The zero matrix decomposes as U = I, V = I, sigma all zero.
    Raises ConvergenceError if the sweep budget is exhausted.
    """
    m, n = a.rows, a.cols
    arr = a.to_array()
    if not math.isfinite(float(np.vdot(arr, arr).real)):
        raise UnsupportedInputError(
            "squared matrix norm overflows binary64; rescale the input")
    if m >= n:
        w, sigma, vacc = _one_sided_jacobi(arr.copy())
        u = np.zeros((m, m), dtype=np.complex128)
        v = vacc.copy()
        data_from_w = True
    else:
        w, sigma, uacc = _one_sided_jacobi(arr.conj().T.copy())
        u = uacc.copy()
        v = np.zeros((n, n), dtype=np.complex128)
        data_from_w = False

    top = sigma[0] if sigma.size else 0.0
    cutoff = max(m, n) * _EPS * top
    rank = int(np.sum(sigma > cutoff))

    for k in range(rank):
        if data_from_w:
            u[:, k] = w[:, k] / sigma[k]
        else:
            v[:, k] = w[:, k] / sigma[k]
        adjust = np.conj(_phase_of(v[:, k]))
        v[:, k] *= adjust
        u[:, k] *= adjust
    _gram_schmidt_fill(u, rank)
    _gram_schmidt_fill(v, rank)

    return SvdResult(u=Matrix.from_array(u),
                     sigma=tuple(float(x) for x in sigma),
                     v=Matrix.from_array(v))


def operator_norm(a: Matrix) -> float:
    """Largest singular value; zero exactly when the matrix is zero."""
    return svd(a).sigma[0]


def leading_pair(a: Matrix) -> tuple[Matrix, float, Matrix]:
    """Leading singular triple (u1, sigma1, v1) with u1' A v1 = sigma1 > 0."""
    if a.is_zero():
        raise DegenerateInputError("the zero matrix has no leading singular pair")
    result = svd(a)
    if result.sigma[0] == 0.0:
        # entries so small their squared magnitudes underflow to zero
        raise DegenerateInputError("all singular values underflow to zero")
    return result.u.column(1), result.sigma[0], result.v.column(1)
