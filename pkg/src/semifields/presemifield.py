"""Bilinear multiplications stored as structure tensors over F_p.

``T[i, j, :]`` is the coordinate vector of ``e_i o e_j``.  Dimensions at desk
scale are at most 12 (a 12^3 tensor), so every multiplication is kept in
materialized form and products become small einsums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linmap import LinMap


class StructureError(ValueError):
    """Operation not defined for this multiplication."""


@dataclass(eq=False)
class Presemifield:
    """An F_p-bilinear multiplication on F_p^n with family metadata.

    ``certificate`` is populated only by :func:`semifields.planarity.certify`;
    until then the multiplication is a candidate without a no-zero-divisor
    guarantee.
    """

    tensor: np.ndarray
    p: int
    source: object = None
    family: str = "custom"
    params: dict = field(default_factory=dict)
    certificate: object = None
    identity: np.ndarray | None = None

    def __post_init__(self):
        T = np.asarray(self.tensor, dtype=np.int64) % self.p
        if T.ndim != 3 or len(set(T.shape)) != 1:
            raise StructureError("structure tensor must have shape (n, n, n)")
        T.setflags(write=False)
        self.tensor = T

    @property
    def n(self) -> int:
        return self.tensor.shape[0]

    @property
    def ctx(self):
        return getattr(self.source, "ctx", None)

    @property
    def order(self) -> int:
        return self.p**self.n

    def mult(self, X, Y) -> np.ndarray:
        """Products of coordinate vectors; broadcasts over leading axes."""
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        return np.einsum("...i,...j,ijk->...k", X, Y, self.tensor) % self.p

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``y -> a o y``."""
        return np.einsum("i,ijk->kj", np.asarray(a, dtype=np.int64), self.tensor) % self.p

    def right_matrix(self, b) -> np.ndarray:
        """Matrix of ``x -> x o b``."""
        return np.einsum("j,ijk->ki", np.asarray(b, dtype=np.int64), self.tensor) % self.p

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.tensor, self.tensor.transpose(1, 0, 2)))

    @property
    def is_certified(self) -> bool:
        return bool(getattr(self.certificate, "planar", False))

    def __repr__(self) -> str:
        return f"Presemifield({self.family}, n={self.n}, p={self.p}, certified={self.is_certified})"


def left_mult_matrix(P: Presemifield, a) -> LinMap:
    return LinMap(P.left_matrix(a), P.p, P.ctx)


def right_mult_matrix(P: Presemifield, b) -> LinMap:
    return LinMap(P.right_matrix(b), P.p, P.ctx)


def structure_tensor(fmap, p: int, n: int) -> np.ndarray:
    """Structure tensor of the polarization of ``fmap`` by direct differencing.

    ``D(x, y) = F(x + y) - F(x) - F(y)`` is evaluated on all basis pairs;
    this never looks at the closed-form products of the map types.
    """
    E = np.eye(n, dtype=np.int64)
    S = (E[:, None, :] + E[None, :, :]) % p
    FS = fmap.evaluate_vec(S.reshape(-1, n)).reshape(n, n, n)
    FE = fmap.evaluate_vec(E)
    return (FS - FE[:, None, :] - FE[None, :, :]) % p


def polarize(fmap) -> Presemifield:
    """Polarization of a DO map (any of the map types in ``maps``)."""
    T = structure_tensor(fmap, fmap.p, fmap.n)
    return Presemifield(T, fmap.p, source=fmap,
                        family=getattr(fmap, "family", "custom"),
                        params=dict(getattr(fmap, "params", {}) or {}))


def polar_value(fmap, X, Y) -> np.ndarray:
    """``F(X + Y) - F(X) - F(Y)`` on coordinate vectors, without a tensor."""
    p = fmap.p
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    return (fmap.evaluate_vec((X + Y) % p) - fmap.evaluate_vec(X) - fmap.evaluate_vec(Y)) % p


def unitalize(P: Presemifield, e=None, *, require_certificate: bool = True) -> Presemifield:
    """Kaplansky unitalization ``x * y = R_e^{-1}(x) o L_e^{-1}(y)``.

    The identity of the result is ``e o e``.  ``e`` defaults to the first
    basis vector.
    """
    if require_certificate and not P.is_certified:
        raise StructureError("unitalize needs a planarity certificate; run planarity.certify first")
    n, p = P.n, P.p
    e = np.eye(n, dtype=np.int64)[0] if e is None else np.asarray(e, dtype=np.int64) % p
    if not e.any():
        raise StructureError("unitalization element must be nonzero")
    try:
        Ri = linalg.inverse(P.right_matrix(e), p)
        Li = linalg.inverse(P.left_matrix(e), p)
    except np.linalg.LinAlgError as exc:
        raise StructureError("e is a zero divisor") from exc
    S = np.einsum("ai,bj,abk->ijk", Ri, Li, P.tensor) % p
    one = P.mult(e, e)
    out = Presemifield(S, p, source=P.source, family=P.family,
                       params=dict(P.params, unit_element=e.tolist()),
                       certificate=P.certificate, identity=one)
    E = np.eye(n, dtype=np.int64)
    assert np.array_equal(out.mult(one, E), E) and np.array_equal(out.mult(E, one), E)
    return out
