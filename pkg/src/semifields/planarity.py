"""Planarity certification by two independent routes.

* Brute force: for every nonzero ``a`` the map ``x -> D(x, a)`` of the
  polarization must have full rank.  The polarization tensor comes from
  direct differencing ``F(x + y) - F(x) - F(y)``.
* Biprojective: for each ``u`` on the projective line over M, the pair of
  linear forms ``D_u^f, D_u^g`` must have a trivial common kernel.

:func:`certify` runs whichever applies and treats disagreement as a bug.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linmap import basis_pairs
from .maps import BiprojPair
from .presemifield import Presemifield, polarize

BRUTEFORCE_CAP = 3**12
CHUNK = 1 << 15


class PlanarityDisagreement(RuntimeError):
    """The two certifiers disagree; this always indicates an implementation bug."""


class SizeCapExceeded(ValueError):
    pass


@dataclass
class CheckResult:
    planar: bool
    witness: dict | None
    kernel_computations: int
    seconds: float

    def to_dict(self, timings: bool = False) -> dict:
        out = {"planar": self.planar, "witness": self.witness,
               "kernel_computations": self.kernel_computations}
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class PlanarityCertificate:
    planar: bool
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return len({c.planar for c in self.checks.values()}) <= 1

    def to_dict(self, timings: bool = False) -> dict:
        return {"planar": self.planar, "agreement": self.agreement,
                "checkers": {k: v.to_dict(timings) for k, v in sorted(self.checks.items())}}

    def timings(self) -> dict:
        return {k: round(v.seconds, 4) for k, v in sorted(self.checks.items())}


def _int_vectors(codes: np.ndarray, p: int, n: int) -> np.ndarray:
    return (codes[:, None] // p ** np.arange(n)[None, :]) % p


def _first_kernel_vector(mat: np.ndarray, p: int) -> np.ndarray:
    return linalg.nullspace(mat, p)[0]


def _matrix_stack(T: np.ndarray, p: int, lo: int, hi: int) -> np.ndarray:
    """Matrices of ``x -> D(x, a)`` for every ``a`` supported on coordinates lo..hi-1."""
    n = T.shape[0]
    count = p ** (hi - lo)
    digits = _int_vectors(np.arange(count, dtype=np.int64), p, hi - lo)
    # mats[c, k, i] = sum_j a_j T[i, j, k]
    mats = np.einsum("cj,ijk->cki", digits, T[:, lo:hi, :]) % p
    return mats.astype(np.int8 if p < 64 else np.int64)


def is_planar_bruteforce(obj, jobs: int = 1, *, detail: bool = False):
    """Exhaustive rank test over all nonzero ``a`` (|F| - 1 rank computations)."""
    t0 = time.perf_counter()
    P = obj if isinstance(obj, Presemifield) else polarize(obj)
    p, n = P.p, P.n
    if p**n > BRUTEFORCE_CAP:
        raise SizeCapExceeded(f"brute force is capped at 3^12 elements, got {p}^{n}")
    T = P.tensor
    total = p**n - 1
    starts = list(range(1, total + 1, CHUNK))
    # x -> D(x, a) is linear in a: split a = low + p^h * high and add the two
    # precomputed matrix stacks, all in small integers
    h = n // 2
    low = _matrix_stack(T, p, 0, h)
    high = _matrix_stack(T, p, h, n)

    def bad_in_chunk(s: int) -> np.ndarray:
        codes = np.arange(s, min(s + CHUNK, total + 1), dtype=np.int64)
        mats = (low[codes % p**h] + high[codes // p**h]) % p
        return codes[~linalg.batch_nonsingular(mats, p)]

    witness = None
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            bad = [b for b in pool.map(bad_in_chunk, starts) if b.size]
    else:
        bad = []
        for s in starts:
            b = bad_in_chunk(s)
            if b.size:
                bad.append(b)
                break
    if bad:
        a = int(bad[0][0])
        avec = _int_vectors(np.array([a]), p, n)[0]
        x = _first_kernel_vector(np.einsum("j,ijk->ki", avec, T) % p, p)
        assert x.any() and not P.mult(x, avec).any()
        witness = {"a": avec.tolist(), "x": x.tolist()}
    res = CheckResult(witness is None, witness, total, time.perf_counter() - t0)
    return res if detail else res.planar


def d_form_matrices(pair: BiprojPair) -> np.ndarray:
    """Stack of ``p^m + 1`` matrices of ``(x, y) -> (D_u^f, D_u^g)``; u = 0..p^m-1, then infinity."""
    ctx = pair.ctx
    xs, ys = basis_pairs(ctx)
    us = np.arange(ctx.order, dtype=np.int64)
    f, g = pair.d_forms(us[:, None], xs[None, :], ys[None, :])
    fi, gi = pair.d_forms(None, xs, ys)
    f = np.vstack([f, fi[None, :]])
    g = np.vstack([g, gi[None, :]])
    cols = np.concatenate([ctx.digits[f], ctx.digits[g]], axis=-1)
    return cols.transpose(0, 2, 1)


def is_planar_biproj(pair: BiprojPair, *, detail: bool = False):
    """Projective-line criterion: p^m + 1 kernel computations of 2m x 2m systems."""
    t0 = time.perf_counter()
    ctx = pair.ctx
    mats = d_form_matrices(pair)
    bad = np.nonzero(~linalg.batch_nonsingular(mats, ctx.p))[0]
    witness = None
    if bad.size:
        i = int(bad[0])
        u = None if i == ctx.order else i
        vec = _first_kernel_vector(mats[i], ctx.p)
        m = ctx.m
        x, y = ctx.from_vec(vec[:m]), ctx.from_vec(vec[m:])
        assert (x, y) != (0, 0) and pair.d_forms(u, x, y) == (0, 0)
        witness = {"u": "inf" if u is None else u, "x": x, "y": y}
    res = CheckResult(witness is None, witness, int(mats.shape[0]), time.perf_counter() - t0)
    return res if detail else res.planar


def certify(obj, *, bruteforce: bool | None = None, biproj: bool | None = None,
            jobs: int = 1) -> PlanarityCertificate:
    """Run the applicable certifiers and attach the certificate to a Presemifield.

    ``bruteforce=None`` runs the oracle when within its cap; ``True`` forces it
    (raising past the cap).  ``biproj=None`` runs the projective-line test
    whenever the source is a biprojective pair.
    """
    P = obj if isinstance(obj, Presemifield) else None
    source = P.source if P is not None else obj
    checks: dict[str, CheckResult] = {}
    use_bp = isinstance(source, BiprojPair) if biproj is None else biproj
    if use_bp:
        if not isinstance(source, BiprojPair):
            raise TypeError("the projective-line certifier needs a biprojective pair")
        checks["biproj"] = is_planar_biproj(source, detail=True)
    n, p = (P.n, P.p) if P is not None else (source.n, source.p)
    use_bf = (p**n <= BRUTEFORCE_CAP) if bruteforce is None else bruteforce
    if use_bf or not checks:
        checks["bruteforce"] = is_planar_bruteforce(P if P is not None else source, jobs, detail=True)
    verdicts = {c.planar for c in checks.values()}
    if len(verdicts) > 1:
        raise PlanarityDisagreement(
            "planarity certifiers disagree: " + ", ".join(f"{k}={v.planar}" for k, v in checks.items()))
    cert = PlanarityCertificate(verdicts.pop(), checks)
    if P is not None:
        P.certificate = cert
    return cert
