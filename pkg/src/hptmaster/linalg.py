"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  Pivoting always takes the first
nonzero entry in basis order, so every function here is deterministic.
"""

from fractions import Fraction
from typing import Optional


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = Fraction(1)
    return M


def mat_copy(M):
    return [row[:] for row in M]


def rref(M):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots is the list of pivot column indices.
    M is not modified.
    """
    R = mat_copy(M)
    n_rows = len(R)
    n_cols = len(R[0]) if n_rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pr = None
        for i in range(r, n_rows):
            if R[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(n_rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def kernel_basis(M, n_cols):
    """Basis of the right kernel of M (list of column vectors of length n_cols).

    Free variables are set to 1 in increasing column order, which makes the
    output deterministic.
    """
    if not M:
        return [[Fraction(1 if i == j else 0) for i in range(n_cols)]
                for j in range(n_cols)]
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve(M, b) -> Optional[list]:
    """One solution x of M x = b, or None when inconsistent.

    Free variables are set to zero.  M is a list of rows, b a column.
    """
    n_rows = len(M)
    n_cols = len(M[0]) if n_rows else 0
    aug = [M[i][:] + [b[i]] for i in range(n_rows)]
    R, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, p in enumerate(pivots):
        x[p] = R[r][n_cols]
    return x


def mat_mul(A, B):
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else 0
    C = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(n):
                if Bt[j] != 0:
                    Ci[j] += a * Bt[j]
    return C


def columns(M):
    if not M:
        return []
    return [[row[c] for row in M] for c in range(len(M[0]))]


def in_span(vectors, v):
    """Is v in the span of the given column vectors?  Exact test."""
    if not vectors:
        return all(x == 0 for x in v)
    M = [[vec[i] for vec in vectors] for i in range(len(v))]
    return solve(M, v) is not None
