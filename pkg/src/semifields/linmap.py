"""F_p-linear maps of the ambient space, in matrix and linearized-polynomial form.

A map of GF(p^m) to itself is ``x -> sum_i b_i x^(p^i)``; a map of M x M is
a 2x2 block of such maps, ``(x, y) -> (L1 x + L2 y, L3 x + L4 y)``.  The
ambient vector for a pair ``(x, y)`` is the coordinate vector of ``x``
followed by that of ``y``, and matrices act on column vectors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import FieldCtx


def pair_to_vec(ctx: FieldCtx, x, y) -> np.ndarray:
    return np.concatenate([ctx.digits[x], ctx.digits[y]], axis=-1)


def vec_to_pair(ctx: FieldCtx, v) -> tuple:
    v = np.asarray(v, dtype=np.int64) % ctx.p
    m = ctx.m
    return ctx.from_vec(v[..., :m]), ctx.from_vec(v[..., m:])


def basis_pairs(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    """Codes ``(xs, ys)`` of the 2m basis vectors of M x M, x-part first."""
    m = ctx.m
    units = ctx.pw
    xs = np.concatenate([units, np.zeros(m, dtype=np.int64)])
    ys = np.concatenate([np.zeros(m, dtype=np.int64), units])
    return xs, ys


def trace(ctx: FieldCtx, a):
    return ctx.sum(np.stack([np.asarray(ctx.frob(a, i)) for i in range(ctx.m)]), axis=0)


@functools.lru_cache(maxsize=None)
def _dual_basis(ctx: FieldCtx) -> np.ndarray:
    # trace-dual of the polynomial basis: Tr(dual_j * basis_k) = delta_jk
    m, p = ctx.m, ctx.p
    basis = ctx.pw
    T = np.array([[trace(ctx, ctx.mul(int(a), int(b))) for b in basis] for a in basis])
    Tinv = linalg.inverse(T, p)
    # dual_j = sum_l Tinv[j, l] basis_l, i.e. its coordinate vector is row j of Tinv
    return Tinv @ ctx.pw


def linearized_matrix(ctx: FieldCtx, coeffs) -> np.ndarray:
    """m x m F_p matrix of ``x -> sum_i coeffs[i] x^(p^i)``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    basis = ctx.pw
    img = np.zeros(ctx.m, dtype=np.int64)
    for i, c in enumerate(coeffs):
        if c:
            img = ctx.add(img, ctx.mul(c, ctx.frob(basis, i)))
    return ctx.digits[img].T.copy()


def matrix_to_linearized(ctx: FieldCtx, A) -> np.ndarray:
    """Coefficients ``b`` (codes, length m) with ``A x = sum_i b_i x^(p^i)``.

    Uses the trace-dual basis: ``b_i = sum_j A(x_j) (x_j^*)^(p^i)``.
    """
    A = np.asarray(A, dtype=np.int64) % ctx.p
    images = ctx.from_vec(A.T)
    dual = _dual_basis(ctx)
    out = np.zeros(ctx.m, dtype=np.int64)
    for i in range(ctx.m):
        out[i] = ctx.sum(ctx.mul(images, ctx.frob(dual, i)))
    return out


@dataclass(frozen=True, eq=False)
class LinMap:
    """An F_p-linear map given by its matrix (columns are basis images)."""

    matrix: np.ndarray
    p: int
    ctx: FieldCtx | None = None

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.int64) % self.p
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    # constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int, p: int, ctx: FieldCtx | None = None) -> "LinMap":
        return cls(np.eye(n, dtype=np.int64), p, ctx)

    @classmethod
    def from_linearized(cls, ctx: FieldCtx, coeffs) -> "LinMap":
        return cls(linearized_matrix(ctx, coeffs), ctx.p, ctx)

    @classmethod
    def from_blocks(cls, ctx: FieldCtx, blocks) -> "LinMap":
        """``blocks = (L1, L2, L3, L4)``, each a length-m coefficient list."""
        A = [linearized_matrix(ctx, b) for b in blocks]
        return cls(np.block([[A[0], A[1]], [A[2], A[3]]]), ctx.p, ctx)

    @classmethod
    def monomial_blocks(cls, ctx: FieldCtx, terms) -> "LinMap":
        """Block map with each block ``z -> c z^(p^t)``.

        ``terms`` is four ``(c, t)`` pairs for blocks L1..L4, or ``None`` for a
        zero block.
        """
        blocks = []
        for term in terms:
            b = np.zeros(ctx.m, dtype=np.int64)
            if term is not None:
                c, t = term
                b[t % ctx.m] = int(c)
            blocks.append(b)
        return cls.from_blocks(ctx, blocks)

    @classmethod
    def diag(cls, ctx: FieldCtx, first, second) -> "LinMap":
        """``(x, y) -> (first(x), second(y))`` for coefficient lists."""
        z = np.zeros(ctx.m, dtype=np.int64)
        return cls.from_blocks(ctx, [first, z, z, second])

    # structure ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.p)

    def is_invertible(self) -> bool:
        return self.matrix.shape[0] == self.matrix.shape[1] and self.rank() == self.n

    def blocks(self) -> list[np.ndarray]:
        """Linearized coefficients of L1..L4 (requires a 2m x 2m map and a ctx)."""
        if self.ctx is None or self.n != 2 * self.ctx.m:
            raise ValueError("block form needs a field context and a 2m x 2m matrix")
        m = self.ctx.m
        A = self.matrix
        return [matrix_to_linearized(self.ctx, A[r:r + m, c:c + m]) for r in (0, m) for c in (0, m)]

    def block_terms(self) -> list[list[tuple[int, int]]]:
        """Nonzero ``(coefficient code, exponent index)`` terms of each block."""
        return [[(int(c), i) for i, c in enumerate(b) if c] for b in self.blocks()]

    # algebra --------------------------------------------------------------

    def __call__(self, v) -> np.ndarray:
        return (np.asarray(v, dtype=np.int64) @ self.matrix.T) % self.p

    def apply_pair(self, x, y):
        """Apply a 2m x 2m map to field-element codes."""
        return vec_to_pair(self.ctx, self(pair_to_vec(self.ctx, x, y)))

    def compose(self, other: "LinMap") -> "LinMap":
        """``self o other``."""
        if self.shape[1] != other.shape[0]:
            raise ValueError("dimension mismatch in compose")
        return LinMap(linalg.matmul(self.matrix, other.matrix, self.p), self.p, self.ctx or other.ctx)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return self.compose(other)

    def inverse(self) -> "LinMap":
        return LinMap(linalg.inverse(self.matrix, self.p), self.p, self.ctx)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinMap) and self.p == other.p and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.p, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"LinMap({self.shape[0]}x{self.shape[1]} over F_{self.p})"


def compose(first: LinMap, second: LinMap) -> LinMap:
    """``first o second``."""
    return first.compose(second)


def invert(lin: LinMap) -> LinMap:
    return lin.inverse()


@functools.lru_cache(maxsize=None)
def scalar_matrices(ctx: FieldCtx) -> np.ndarray:
    """``S[c]`` is the m x m matrix of ``x -> c x`` for every code ``c``."""
    prods = ctx.mul(np.arange(ctx.order)[:, None], ctx.pw[None, :])
    out = ctx.digits[prods].transpose(0, 2, 1).copy()
    out.setflags(write=False)
    return out


@functools.lru_cache(maxsize=None)
def frobenius_matrices(ctx: FieldCtx) -> np.ndarray:
    """``Fr[t]`` is the m x m matrix of ``x -> x^(p^t)``."""
    out = np.stack([ctx.digits[ctx.frob(ctx.pw, t)].T for t in range(ctx.m)])
    out.setflags(write=False)
    return out


def block_monomial_batch(ctx: FieldCtx, coeffs, degs) -> np.ndarray:
    """Stack of 2m x 2m matrices with block i equal to ``z -> coeffs[i] z^(p^degs[i])``.

    ``coeffs`` has shape ``(4, count)`` (codes, 0 for a zero block); ``degs``
    is broadcastable to the same shape.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    degs = np.broadcast_to(np.asarray(degs, dtype=np.int64) % ctx.m, coeffs.shape)
    S, Fr = scalar_matrices(ctx), frobenius_matrices(ctx)
    blocks = [(S[coeffs[i]] @ Fr[degs[i]]) % ctx.p for i in range(4)]
    top = np.concatenate([blocks[0], blocks[1]], axis=2)
    bottom = np.concatenate([blocks[2], blocks[3]], axis=2)
    return np.concatenate([top, bottom], axis=1)
