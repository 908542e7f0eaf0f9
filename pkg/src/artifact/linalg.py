"""Exact dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Row vectors are the
default convention: a linear map is a matrix ``M`` acting as ``v @ M``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "RowSpace",
    "check_prime",
    "inv_mod",
    "matmul",
    "nullspace",
    "left_nullspace",
    "rank",
    "rref",
    "solve_left",
    "int_det",
]

# float64 matmul is exact while every partial sum stays below 2**53
_FLOAT_EXACT = float(2**52)


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    return p


def inv_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, p - 2, p)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Product ``A @ B`` reduced mod p, exact for any prime."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[-1] if A.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.mod(out, p).astype(np.int64)
    if inner * (p - 1) ** 2 < 2**62:
        return (A @ B) % p
    return (A.astype(object) @ B.astype(object) % p).astype(np.int64)


def rref(M: np.ndarray, p: int, col_order: list[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p).

    ``col_order`` fixes the order in which columns are tried as pivots, so a
    caller can make the leading entry of each row its preferred monomial.
    Returns the nonzero rows and the list of pivot columns (one per row).
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2d array")
    A %= p
    nrows, ncols = A.shape
    order = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = (A[r] * inv_mod(lead, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M @ x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for row, pc in enumerate(piv):
            out[k, pc] = (-R[row, fc]) % p
    return out


def left_nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : x @ M = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    return nullspace(M.T, p)


def solve_left(M: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``x @ M = b``, or None when the system is inconsistent."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    nvars = M.shape[0]
    aug = np.concatenate([M.T, b.reshape(-1, 1)], axis=1)
    R, piv = rref(aug, p)
    if nvars in piv:
        return None
    x = np.zeros(nvars, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[pc] = R[row, nvars]
    return x


class RowSpace:
    """Incrementally grown subspace of GF(p)^n kept in reduced echelon form."""

    def __init__(self, n: int, p: int, col_order: list[int] | None = None):
        self.n = n
        self.p = p
        self.col_order = list(range(n)) if col_order is None else list(col_order)
        self._rank_of = {c: i for i, c in enumerate(self.col_order)}
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V: np.ndarray) -> np.ndarray:
        V = np.atleast_2d(np.asarray(V, dtype=np.int64)) % self.p
        if not self.pivots:
            return V
        return (V - matmul(V[:, self.pivots], self.rows, self.p)) % self.p

    def add(self, V: np.ndarray) -> np.ndarray:
        """Add vectors; return the new echelon rows that enlarged the space."""
        res = self.reduce(V)
        res = res[np.any(res != 0, axis=1)]
        if res.shape[0] == 0:
            return res
        order = sorted(set(range(self.n)) - set(self.pivots), key=self._rank_of.__getitem__)
        new, newpiv = rref(res, self.p, order)
        if self.pivots:
            self.rows = (self.rows - matmul(self.rows[:, newpiv], new, self.p)) % self.p
        self.rows = np.concatenate([self.rows, new])
        self.pivots = self.pivots + newpiv
        return new

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))


def int_det(M: list[list[int]] | np.ndarray) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
