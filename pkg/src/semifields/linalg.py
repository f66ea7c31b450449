"""Exact linear algebra over prime fields F_p.

Matrices are integer numpy arrays with entries in ``range(p)``.  Everything
here is exact; there is no floating point.  The batched routines operate on
stacks of square matrices of shape ``(batch, n, n)`` and are the workhorse of
the brute-force planarity oracle.
"""

from __future__ import annotations

import numpy as np


def inv_table(p: int) -> np.ndarray:
    """Multiplicative inverses mod p, with ``inv[0] = 0``."""
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


def row_reduce(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``mat`` over F_p and its pivot columns."""
    R = np.array(mat, dtype=np.int64) % p
    rows, cols = R.shape
    inv = inv_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(mat, p: int) -> int:
    return len(row_reduce(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Basis of the right kernel ``{x : mat @ x = 0}`` as rows of an array."""
    A = np.asarray(mat, dtype=np.int64)
    R, pivots = row_reduce(A, p)
    ncols = A.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = (-R[r, f]) % p
    return basis


def inverse(mat, p: int) -> np.ndarray:
    A = np.asarray(mat, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    R, pivots = row_reduce(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular over F_%d" % p)
    return R[:, n:].copy()


def solve(mat, rhs, p: int) -> np.ndarray:
    """One solution ``x`` of ``mat @ x = rhs``; raises if inconsistent."""
    A = np.asarray(mat, dtype=np.int64) % p
    b = np.asarray(rhs, dtype=np.int64).reshape(A.shape[0], -1) % p
    R, pivots = row_reduce(np.hstack([A, b]), p)
    n = A.shape[1]
    if pivots and pivots[-1] >= n:
        raise ValueError("inconsistent linear system over F_%d" % p)
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, n:]
    return x.reshape(n) if np.ndim(rhs) == 1 else x


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of ``(batch, rows, cols)`` matrices over F_p.

    Vectorised Gaussian elimination: every pivot step acts on the whole
    batch at once.  Small dtypes keep the working set cache friendly.
    """
    dt = np.int16 if p < 128 else np.int64
    A = np.array(mats, dtype=dt) % p
    batch, rows, cols = A.shape
    inv = inv_table(p).astype(dt)
    ranks = np.zeros(batch, dtype=np.int64)
    idx = np.arange(batch)
    rows_idx = np.arange(rows)
    for c in range(cols):
        colv = A[:, :, c]
        # candidate pivot: first row at or below the current rank with a nonzero in column c
        cand = (colv != 0) & (rows_idx[None, :] >= ranks[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        if has.all():
            sel, sub = idx, A
        else:
            sel = idx[has]
            sub = A[sel]
        pr = np.argmax(cand[sel], axis=1)
        tr = ranks[sel]
        local = np.arange(sel.size)
        # swap the pivot row into position tr and scale it to a leading one
        row_p = sub[local, pr].copy()
        sub[local, pr] = sub[local, tr]
        prow = (row_p * inv[row_p[:, c]][:, None]) % p
        factors = sub[:, :, c].copy()
        factors[local, tr] = 0
        sub -= factors[:, :, None] * prow[:, None, :]
        sub %= p
        sub[local, tr] = prow
        if sub is not A:
            A[sel] = sub
        ranks[sel] += 1
    return ranks


def batch_singular(mats: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of singular matrices in a square stack."""
    n = mats.shape[-1]
    return batch_rank(mats, p) < n


def batch_nonsingular(mats: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of invertible matrices in a ``(batch, n, n)`` stack.

    Each elimination step removes the pivot row and column, so the work is
    about a third of a full row reduction.
    """
    dt = np.int16 if p < 128 else np.int64
    A = np.array(mats, dtype=dt) % p
    batch, n, _ = A.shape
    inv = inv_table(p).astype(dt)
    ok = np.ones(batch, dtype=bool)
    idx = np.arange(batch)
    for _ in range(n):
        nz = A[:, :, 0] != 0
        ok &= nz.any(axis=1)
        piv = np.argmax(nz, axis=1)
        prow = A[idx, piv].copy()
        A[idx, piv] = A[:, 0]
        f = (A[:, 1:, 0] * inv[prow[:, 0]][:, None]) % p
        A = (A[:, 1:, 1:] - f[:, :, None] * prow[:, None, 1:]) % p
    return ok
