"""Nuclei, autotopism checks and the centralizer enumeration for Family S.

Isotopism identities are checked on all basis pairs, which suffices by
bilinearity: ``N(e_i o1 e_j) = L(e_i) o2 M(e_j)``.  The batched checker
handles thousands of candidate triples at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import linalg
from .families import FamilySParams, predicted_nuclei
from .linmap import LinMap, block_monomial_batch
from .ntheory import zsigmondy_prime
from .presemifield import Presemifield, StructureError, unitalize

VERIFY_CHUNK = 4096


# isotopism identities -------------------------------------------------------------


def isotopism_mask(Ns, Ls, Ms, T1: np.ndarray, T2: np.ndarray, p: int,
                   check_invertible: bool = True) -> np.ndarray:
    """For stacks of matrices, which triples satisfy N(x o1 y) = L(x) o2 M(y)."""
    Ns, Ls, Ms = (np.asarray(X, dtype=np.int64).reshape(-1, *np.shape(X)[-2:]) for X in (Ns, Ls, Ms))
    n = T1.shape[0]
    if not (Ns.shape[1:] == Ls.shape[1:] == Ms.shape[1:] == (n, n)) or T2.shape != T1.shape:
        raise ValueError("dimension mismatch between maps and multiplications")
    out = np.zeros(Ns.shape[0], dtype=bool)
    T1f = T1.reshape(n * n, n)
    T2f = T2.reshape(n, n * n)
    for s in range(0, Ns.shape[0], VERIFY_CHUNK):
        N, L, M = (X[s:s + VERIFY_CHUNK] for X in (Ns, Ls, Ms))
        c = N.shape[0]
        lhs = (T1f[None] @ N.transpose(0, 2, 1)).reshape(c, n, n, n) % p
        # X[c, i, b, k] = sum_a L[c, a, i] T2[a, b, k]
        X = (L.transpose(0, 2, 1).reshape(c * n, n) @ T2f).reshape(c, n, n, n) % p
        Xr = X.transpose(0, 2, 1, 3).reshape(c, n, n * n)
        rhs = (M.transpose(0, 2, 1) @ Xr).reshape(c, n, n, n).transpose(0, 2, 1, 3) % p
        out[s:s + c] = (lhs == rhs).all(axis=(1, 2, 3))
    if check_invertible:
        for X in (Ns, Ls, Ms):
            out &= linalg.batch_nonsingular(X, p)
    return out


def verify_isotopism_matrices(N, L, M, P1: Presemifield, P2: Presemifield) -> bool:
    if P1.p != P2.p or P1.n != P2.n:
        raise ValueError("pre-semifields of different size")
    mats = [X.matrix if isinstance(X, LinMap) else np.asarray(X) for X in (N, L, M)]
    if any(m.shape != (P1.n, P1.n) for m in mats):
        raise ValueError("dimension mismatch between maps and multiplications")
    return bool(isotopism_mask(*[m[None] for m in mats], P1.tensor, P2.tensor, P1.p)[0])


def verify_autotopism(N, L, M, P: Presemifield) -> bool:
    return verify_isotopism_matrices(N, L, M, P, P)


def complete_n(L, M, P1: Presemifield, P2: Presemifield, e=None) -> np.ndarray:
    """The only N that can pair with (L, M): ``N = R2_{M e} L R1_e^{-1}``."""
    n, p = P1.n, P1.p
    e = np.eye(n, dtype=np.int64)[0] if e is None else np.asarray(e, dtype=np.int64)
    Lm = L.matrix if isinstance(L, LinMap) else np.asarray(L)
    Mm = M.matrix if isinstance(M, LinMap) else np.asarray(M)
    R1inv = linalg.inverse(P1.right_matrix(e), p)
    R2 = P2.right_matrix((Mm @ e) % p)
    return (R2 @ Lm @ R1inv) % p


def complete_n_batch(Ls, Ms, P1: Presemifield, P2: Presemifield) -> np.ndarray:
    p, n = P1.p, P1.n
    R1inv = linalg.inverse(P1.right_matrix(np.eye(n, dtype=np.int64)[0]), p)
    me = Ms[:, :, 0]
    R2 = np.einsum("cj,ijk->cki", me, P2.tensor) % p
    return (R2 @ Ls @ R1inv) % p


# nuclei ----------------------------------------------------------------------------


@dataclass
class NucleiReport:
    orders: tuple[int, int, int]
    dims: tuple[int, int, int]
    bases: dict[str, np.ndarray] = field(repr=False)
    prediction: tuple[int, int, int] | None = None

    @property
    def match(self) -> bool | None:
        return None if self.prediction is None else tuple(self.prediction) == tuple(self.orders)

    def to_dict(self) -> dict:
        Nl, Nm, Nr = self.orders
        return {"Nl": Nl, "Nm": Nm, "Nr": Nr, "dims": list(self.dims),
                "prediction": None if self.prediction is None else list(self.prediction),
                "match": self.match}


def associator_tensor(S: Presemifield) -> np.ndarray:
    """``A[a, b, c] = (e_a e_b) e_c - e_a (e_b e_c)`` as coordinate vectors."""
    T = S.tensor
    return (np.einsum("abk,kcd->abcd", T, T) - np.einsum("bck,akd->abcd", T, T)) % S.p


def _closed_subalgebra(S: Presemifield, basis: np.ndarray) -> bool:
    if basis.shape[0] == 0:
        return False
    prods = S.mult(basis[:, None, :], basis[None, :, :]).reshape(-1, S.n)
    r = linalg.rank(basis, S.p)
    return linalg.rank(np.vstack([basis, prods]), S.p) == r and \
        linalg.rank(np.vstack([basis, S.identity]), S.p) == r


def nuclei(S: Presemifield, prediction=None) -> NucleiReport:
    """Left, middle and right nuclei of a unital multiplication as kernels."""
    if S.identity is None:
        raise StructureError("nuclei need a unital multiplication; unitalize first")
    n, p = S.n, S.p
    A = associator_tensor(S)
    bases = {}
    for name, axis in (("left", 0), ("middle", 1), ("right", 2)):
        # one equation per (other two slots, output coordinate), unknowns along ``axis``
        mat = np.moveaxis(A, axis, 3).reshape(-1, n)
        basis = linalg.nullspace(mat, p)
        if not _closed_subalgebra(S, basis):
            raise AssertionError(f"{name} nucleus is not a subalgebra containing 1")
        bases[name] = basis
    dims = tuple(bases[k].shape[0] for k in ("left", "middle", "right"))
    return NucleiReport(tuple(p**d for d in dims), dims, bases, prediction)


def nuclei_of(P: Presemifield, e=None) -> NucleiReport:
    """Unitalize a certified pre-semifield and compute its nuclei with the family prediction."""
    S = unitalize(P, e)
    pred = predicted_nuclei(P.family, P.params) if P.params else None
    return nuclei(S, pred)


# centralizer of the torus in Aut(P) for Family S ----------------------------------


@dataclass
class CentralizerReport:
    size: int
    diagonal: int
    antidiagonal: int
    closed_form: tuple[int, int]
    predicted_size: int
    torus_order: int
    zsigmondy: int
    sylow_order: int
    torus_sylow_found: bool
    identity_found: bool
    audited: bool | None = None
    triples: tuple | None = field(default=None, repr=False)

    @property
    def index(self) -> int:
        return self.size // self.torus_order

    @property
    def condition_c(self) -> bool:
        return self.size % self.torus_order == 0 and self.index % self.zsigmondy != 0

    @property
    def match(self) -> bool:
        return self.size == self.predicted_size and self.size in self.closed_form

    def to_dict(self) -> dict:
        return {"size": self.size, "diagonal": self.diagonal, "antidiagonal": self.antidiagonal,
                "closed_form": list(self.closed_form), "predicted_size": self.predicted_size,
                "match": self.match, "index": self.index, "zsigmondy_prime": self.zsigmondy,
                "sylow_order": self.sylow_order, "torus_sylow_found": self.torus_sylow_found,
                "identity_found": self.identity_found, "condition_c": self.condition_c,
                "audited": self.audited}


def _s_params(P: Presemifield) -> FamilySParams:
    if P.family != "S" or not P.params:
        raise StructureError("centralizer enumeration is specific to Family S inputs")
    pr = P.params
    return FamilySParams(pr["p"], pr["m"], pr["k"], pr["B"], pr["a"])


def _normalized_candidates(sp: FamilySParams, case: str, filtered: bool, free_omega2: bool = False):
    """Coefficient arrays of normalized candidates (first nonzero L coefficient = 1).

    Returns ``(Lc, Mc, Nc)`` of shape (4, count) each, N possibly ``None`` when
    it is left to be completed by linear algebra.
    """
    ctx = sp.ctx
    q, Q = sp.q, sp.Q
    units = ctx.units()
    E = ctx.subfield(sp.e).elements
    E = E[E != 0]
    s, w1 = np.meshgrid(units, E, indexing="ij")
    s, w1 = s.ravel(), w1.ravel()
    if free_omega2:
        s = np.repeat(s, E.size)
        w1 = np.repeat(w1, E.size)
        w2 = np.tile(E, s.size // E.size)
    else:
        w2 = ctx.pow(w1, Q)
    inv_s = ctx.inv(s)
    one = np.ones_like(s)
    zero = np.zeros_like(s)
    if case == "diagonal":
        keep = np.ones(s.size, dtype=bool)
        if filtered:
            keep &= ctx.pow(inv_s, q + 1) == ctx.div(w2, w1)
            keep &= ctx.pow(inv_s, q * Q - 1) == ctx.pow(w2, Q - 1)
        Lc = np.stack([one, zero, zero, s])
        Mc = np.stack([w1, zero, zero, ctx.mul(w2, s)])
        Nc = np.stack([w1, zero, zero, ctx.mul(s, w2)])
    else:
        B, A = sp.B, sp.A
        keep = np.ones(s.size, dtype=bool)
        if filtered:
            keep &= ctx.pow(inv_s, q + 1) == ctx.mul(ctx.mul(B, B), ctx.div(w2, w1))
            keep &= ctx.pow(inv_s, q * Q - 1) == ctx.mul(ctx.pow(w1, 1 - Q), ctx.mul(A, A))
        Lc = np.stack([zero, one, s, zero])
        Mc = np.stack([zero, w1, ctx.mul(w2, s), zero])
        n1 = ctx.mul(B, ctx.mul(ctx.pow(s, q + 1), w2))
        n4 = ctx.mul(A, ctx.mul(ctx.pow(s, q * Q), w1))
        Nc = np.stack([n1, zero, zero, n4])
    return Lc[:, keep], Mc[:, keep], Nc[:, keep]


def _expand_by_torus(sp: FamilySParams, Lc, Mc, Nc):
    """Compose normalized triples with every torus element gamma_c."""
    ctx = sp.ctx
    c = ctx.units()
    cnt = Lc.shape[1]
    cc = np.tile(c, cnt)
    rep = lambda X: np.repeat(X, c.size, axis=1)
    Lx = ctx.mul(rep(Lc), cc[None, :])
    Mx = ctx.mul(rep(Mc), cc[None, :])
    Nr = rep(Nc)
    Nx = np.stack([ctx.mul(Nr[0], ctx.pow(cc, sp.q + 1)), Nr[1], Nr[2],
                   ctx.mul(Nr[3], ctx.pow(cc, sp.r + 1))])
    return Lx, Mx, Nx


def torus_element(ctx, a: int, q: int, r: int) -> tuple[LinMap, LinMap, LinMap]:
    """gamma_a = (diag(a^(q+1), a^(r+1)), diag(a, a), diag(a, a))."""
    N = block_monomial_batch(ctx, [[ctx.pow(a, q + 1)], [0], [0], [ctx.pow(a, r + 1)]], 0)[0]
    L = block_monomial_batch(ctx, [[a], [0], [0], [a]], 0)[0]
    return LinMap(N, ctx.p, ctx), LinMap(L, ctx.p, ctx), LinMap(L, ctx.p, ctx)


def centralizer_enumerate(P: Presemifield, *, audit: bool = False, keep_triples: bool = False) -> CentralizerReport:
    """Enumerate C_P for a Family S pre-semifield and verify every element.

    Candidates come from the diagonal and antidiagonal scalar shapes, with
    the coefficient equations solved over normalized representatives and then
    expanded by the torus.  Every emitted triple is checked as an autotopism
    on all basis pairs.  ``audit=True`` additionally runs an unfiltered loop
    over normalized shapes with N completed by linear algebra and compares.
    """
    sp = _s_params(P)
    ctx, p, m = sp.ctx, sp.p, sp.m
    T = P.tensor
    counts = {}
    kept = []
    for case in ("diagonal", "antidiagonal"):
        Lc, Mc, Nc = _normalized_candidates(sp, case, filtered=True)
        Lx, Mx, Nx = _expand_by_torus(sp, Lc, Mc, Nc)
        Ls = block_monomial_batch(ctx, Lx, 0)
        Ms = block_monomial_batch(ctx, Mx, 0)
        Ns = block_monomial_batch(ctx, Nx, 0)
        ok = isotopism_mask(Ns, Ls, Ms, T, T, p)
        if not ok.all():
            raise AssertionError(f"{int((~ok).sum())} {case} centralizer candidates failed verification")
        counts[case] = int(ok.size)
        kept.append((Ns, Ls, Ms))

    torus = ctx.order - 1
    base = torus * (p**sp.e - 1)
    # the antidiagonal shape exists iff a^(qbar+1)/B^2 is a (Q-1)-st power
    qbar = p ** ((m - sp.k) % m)
    test = ctx.div(ctx.pow(sp.a, qbar + 1), ctx.mul(sp.B, sp.B))
    anti_possible = int(ctx.log[test]) % gcd(sp.Q - 1, torus) == 0
    predicted = base * (2 if anti_possible else 1)

    pz = zsigmondy_prime(p, m)
    from .gf import sylow_subgroup_R

    R = sylow_subgroup_R(ctx, pz)
    Ns, Ls, Ms = (np.concatenate([k[i] for k in kept]) for i in range(3))
    keys = {(Ns[i].tobytes(), Ls[i].tobytes(), Ms[i].tobytes()) for i in range(Ns.shape[0])}
    gam = [torus_element(ctx, int(a), sp.q, sp.r) for a in R]
    sylow_found = all((g[0].matrix.tobytes(), g[1].matrix.tobytes(), g[2].matrix.tobytes()) in keys
                      for g in gam)
    I = np.eye(2 * m, dtype=np.int64)
    identity_found = (I.tobytes(), I.tobytes(), I.tobytes()) in keys
    report = CentralizerReport(
        size=counts["diagonal"] + counts["antidiagonal"], diagonal=counts["diagonal"],
        antidiagonal=counts["antidiagonal"], closed_form=(base, 2 * base), predicted_size=predicted,
        torus_order=torus, zsigmondy=pz, sylow_order=int(R.size), torus_sylow_found=sylow_found,
        identity_found=identity_found,
        triples=(Ns, Ls, Ms) if keep_triples else None)
    if audit:
        report.audited = audit_centralizer(P, sp) == (report.diagonal // torus, report.antidiagonal // torus)
    return report


def audit_centralizer(P: Presemifield, sp: FamilySParams | None = None) -> tuple[int, int]:
    """Slow path: every normalized scalar-shape candidate with omega1, omega2 ranging
    independently over E^x, N completed by linear algebra, then verified."""
    sp = sp or _s_params(P)
    ctx, p = sp.ctx, sp.p
    found = []
    for case in ("diagonal", "antidiagonal"):
        Lc, Mc, _ = _normalized_candidates(sp, case, filtered=False, free_omega2=True)
        Ls = block_monomial_batch(ctx, Lc, 0)
        Ms = block_monomial_batch(ctx, Mc, 0)
        Ns = complete_n_batch(Ls, Ms, P, P)
        found.append(int(isotopism_mask(Ns, Ls, Ms, P.tensor, P.tensor, p).sum()))
    return tuple(found)
