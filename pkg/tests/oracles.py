"""Independent brute-force oracles used by the tests.

Everything here recomputes results by literal index arithmetic or by a
different algorithm than the library, so agreement is meaningful.
"""

import math

import numpy as np

from kronquot import Matrix


def kron_by_index(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product from the entrywise index formula."""
    m, n = a.rows, a.cols
    s, t = b.rows, b.cols
    out = [[0j] * (n * t) for _ in range(m * s)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for p in range(1, s + 1):
                for q in range(1, t + 1):
                    out[(i - 1) * s + p - 1][(j - 1) * t + q - 1] = \
                        a.entry(i, j) * b.entry(p, q)
    return Matrix.from_rows(out)


def pfp_by_double_sum(a: Matrix, m: Matrix) -> Matrix:
    """Partial Frobenius product by the literal double sum (a must be the small one)."""
    s = m.rows // a.rows
    t = m.cols // a.cols
    out = [[0j] * t for _ in range(s)]
    for u in range(1, s + 1):
        for v in range(1, t + 1):
            total = 0j
            for j in range(1, a.rows + 1):
                for k in range(1, a.cols + 1):
                    total += a.entry(j, k) * m.entry((j - 1) * s + u, (k - 1) * t + v)
            out[u - 1][v - 1] = total
    return Matrix.from_rows(out)


def shuffle_by_index(m: Matrix, mm: int, s: int, nn: int, tt: int) -> Matrix:
    """Row/column reindexing that turns kron(A, B) into kron(B, A)."""
    rows = [0] * (mm * s)
    for i in range(mm):
        for p in range(s):
            rows[p * mm + i] = i * s + p
    cols = [0] * (nn * tt)
    for j in range(nn):
        for q in range(tt):
            cols[q * nn + j] = j * tt + q
    arr = m.to_array()
    return Matrix.from_array(arr[np.ix_(rows, cols)])


def jacobi_eigenvalues(h: Matrix, tol: float = 1e-13, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a Hermitian matrix by two-sided Jacobi rotations, descending.

    Built on explicit rotation matrices and full matrix products, a
    different route than the library's one-sided column updates.
    """
    a = h.to_array()
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off <= tol * max(1.0, float(np.abs(np.diag(a)).max())):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = a[p, q]
                if abs(hpq) == 0.0:
                    continue
                alpha = a[p, p].real
                beta = a[q, q].real
                phase = hpq / abs(hpq)
                tau = (beta - alpha) / (2.0 * abs(hpq))
                tee = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, tee)
                s = tee * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[p, q] = s
                rot[q, p] = -s * np.conj(phase)
                rot[q, q] = c * np.conj(phase)
                a = rot.conj().T @ a @ rot
    return sorted((float(x.real) for x in np.diag(a)), reverse=True)
