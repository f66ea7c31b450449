"""Planar-map candidates: univariate DO polynomials, biprojective pairs, and
two-component maps on M x M.

Every map type exposes the same small surface used by the planarity and
structure code: ``ctx``, ``p``, ``n`` (dimension over F_p) and
``evaluate_vec``, which maps a stack of F_p coordinate vectors to their
images.  Element arguments are integer codes of ``ctx`` (see ``gf``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import FieldCtx


class MapError(ValueError):
    """Malformed map data."""


def split_exponent(p: int, e: int) -> tuple[int, ...]:
    """Write ``e`` as ``p^i + p^j`` (returns ``(i, j)``, i <= j) or ``p^i`` (returns ``(i,)``)."""
    digits = []
    while e:
        digits.append(e % p)
        e //= p
    nz = [(i, d) for i, d in enumerate(digits) if d]
    if len(nz) == 1 and nz[0][1] == 1:
        return (nz[0][0],)
    if len(nz) == 1 and nz[0][1] == 2:
        return (nz[0][0], nz[0][0])
    if len(nz) == 2 and nz[0][1] == 1 and nz[1][1] == 1:
        return (nz[0][0], nz[1][0])
    raise MapError(f"exponent {e} is neither p^i nor p^i + p^j for p = {p}")


@dataclass(frozen=True)
class DOPoly:
    """``sum a_ij x^(p^i + p^j) + sum b_i x^(p^i)`` over ``ctx``.

    ``terms`` holds ``(coeff, i, j)`` with ``i <= j`` and no repeated pair;
    ``linear`` holds ``(coeff, i)``.  Linear terms vanish under polarization.
    """

    ctx: FieldCtx
    terms: tuple[tuple[int, int, int], ...]
    linear: tuple[tuple[int, int], ...] = ()
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.ctx.m
        merged: dict[tuple[int, int], int] = {}
        for c, i, j in self.terms:
            i, j = sorted((i % n, j % n))
            merged[(i, j)] = self.ctx.add(merged.get((i, j), 0), int(c))
        terms = tuple((c, i, j) for (i, j), c in sorted(merged.items()) if c)
        lin: dict[int, int] = {}
        for c, i in self.linear:
            lin[i % n] = self.ctx.add(lin.get(i % n, 0), int(c))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "linear", tuple((c, i) for i, c in sorted(lin.items()) if c))

    @classmethod
    def from_exponents(cls, ctx: FieldCtx, monomials, **kw) -> "DOPoly":
        """Build from ``(coeff, exponent)`` pairs such as ``(1, 10)`` for X^10."""
        terms, lin = [], []
        for c, e in monomials:
            ij = split_exponent(ctx.p, e)
            if len(ij) == 1:
                lin.append((int(c), ij[0]))
            else:
                terms.append((int(c), ij[0], ij[1]))
        return cls(ctx, tuple(terms), tuple(lin), **kw)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return self.ctx.m

    def __call__(self, x):
        ctx = self.ctx
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for c, i, j in self.terms:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, ctx.p**i + ctx.p**j)))
        for c, i in self.linear:
            acc = ctx.add(acc, ctx.mul(c, ctx.frob(x, i)))
        return ctx._out(acc)

    def evaluate_vec(self, V) -> np.ndarray:
        return self.ctx.digits[np.asarray(self(self.ctx.from_vec(V)))]

    def exponents(self) -> list[int]:
        p = self.ctx.p
        return [p**i + p**j for _, i, j in self.terms] + [p**i for _, i in self.linear]


@dataclass(frozen=True)
class BiprojPair:
    """The (q, r)-biprojective map ``[(a0,b0,c0,d0)_q, (a1,b1,c1,d1)_r]`` on M x M.

    ``k`` and ``l`` are the exponent indices (``q = p^k``, ``r = p^l``); the
    coefficient tuples are codes of ``ctx``.  The component with coefficients
    ``(a, b, c, d)`` and exponent ``s`` is ``a x^(s+1) + b x^s y + c x y^s + d y^(s+1)``.
    """

    ctx: FieldCtx
    k: int
    l: int
    left: tuple[int, int, int, int]
    right: tuple[int, int, int, int]
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        m = self.ctx.m
        if not (0 <= self.k < m and 0 <= self.l < m):
            raise MapError(f"exponent indices must lie in [0, {m}), got k={self.k}, l={self.l}")
        for name in ("left", "right"):
            co = tuple(int(c) for c in getattr(self, name))
            if len(co) != 4 or any(not 0 <= c < self.ctx.order for c in co):
                raise MapError(f"{name} must be four element codes")
            object.__setattr__(self, name, co)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return 2 * self.ctx.m

    @property
    def q(self) -> int:
        return self.ctx.p**self.k

    @property
    def r(self) -> int:
        return self.ctx.p**self.l

    # the map itself --------------------------------------------------------

    def _component(self, coeffs, s, x, y):
        ctx = self.ctx
        a, b, c, d = coeffs
        xs, ys = ctx.frob(x, s), ctx.frob(y, s)
        out = ctx.mul(a, ctx.mul(xs, x))
        out = ctx.add(out, ctx.mul(b, ctx.mul(xs, y)))
        out = ctx.add(out, ctx.mul(c, ctx.mul(x, ys)))
        return ctx.add(out, ctx.mul(d, ctx.mul(ys, y)))

    def __call__(self, x, y):
        return (self._component(self.left, self.k, x, y),
                self._component(self.right, self.l, x, y))

    def evaluate_vec(self, V) -> np.ndarray:
        V = np.asarray(V, dtype=np.int64)
        m = self.ctx.m
        x, y = self.ctx.from_vec(V[..., :m]), self.ctx.from_vec(V[..., m:])
        f, g = self(x, y)
        return np.concatenate([self.ctx.digits[f], self.ctx.digits[g]], axis=-1)

    # polarization in closed form ---------------------------------------------

    def _polar(self, coeffs, s, x, y, u, v):
        ctx = self.ctx
        a, b, c, d = coeffs
        xs, ys, us, vs = (ctx.frob(z, s) for z in (x, y, u, v))
        t1 = ctx.mul(ctx.add(ctx.mul(a, u), ctx.mul(b, v)), xs)
        t2 = ctx.mul(ctx.add(ctx.mul(a, us), ctx.mul(c, vs)), x)
        t3 = ctx.mul(ctx.add(ctx.mul(c, u), ctx.mul(d, v)), ys)
        t4 = ctx.mul(ctx.add(ctx.mul(b, us), ctx.mul(d, vs)), y)
        return ctx.add(ctx.add(t1, t2), ctx.add(t3, t4))

    def mult(self, xy, uv):
        """``(x, y) * (u, v)`` for the polarization of the pair."""
        (x, y), (u, v) = xy, uv
        return (self._polar(self.left, self.k, x, y, u, v),
                self._polar(self.right, self.l, x, y, u, v))

    # the linear forms D_u used by the planarity criterion ----------------------

    def _d_form(self, coeffs, s, u, x, y):
        # D_u(x, y) = (a u + b) x^s + (a u^s + c) x + (c u + d) y^s + (b u^s + d) y
        ctx = self.ctx
        a, b, c, d = coeffs
        us = ctx.frob(u, s)
        cx_s = ctx.add(ctx.mul(a, u), b)
        cx = ctx.add(ctx.mul(a, us), c)
        cy_s = ctx.add(ctx.mul(c, u), d)
        cy = ctx.add(ctx.mul(b, us), d)
        out = ctx.add(ctx.mul(cx_s, ctx.frob(x, s)), ctx.mul(cx, x))
        return ctx.add(out, ctx.add(ctx.mul(cy_s, ctx.frob(y, s)), ctx.mul(cy, y)))

    def _d_inf(self, coeffs, s, x, y):
        # D_inf(x, y) = a x^s + a x + c y^s + b y
        ctx = self.ctx
        a, b, c, _ = coeffs
        out = ctx.mul(a, ctx.add(ctx.frob(x, s), x))
        return ctx.add(out, ctx.add(ctx.mul(c, ctx.frob(y, s)), ctx.mul(b, y)))

    def d_forms(self, u, x, y):
        """``(D_u^f(x, y), D_u^g(x, y))``; ``u=None`` stands for the point at infinity."""
        if u is None:
            return (self._d_inf(self.left, self.k, x, y), self._d_inf(self.right, self.l, x, y))
        return (self._d_form(self.left, self.k, u, x, y), self._d_form(self.right, self.l, u, x, y))

    def swapped(self) -> "BiprojPair":
        """Components exchanged: ``[g, f]``."""
        return BiprojPair(self.ctx, self.l, self.k, self.right, self.left,
                          family=self.family, params=dict(self.params, swapped=True))


@dataclass(frozen=True)
class PairMap:
    """``(x, y) -> (sum c x^i y^j, sum c x^i y^j)`` on M x M.

    Each component is a tuple of ``(coeff, i, j)`` monomials.
    """

    ctx: FieldCtx
    first: tuple[tuple[int, int, int], ...]
    second: tuple[tuple[int, int, int], ...]
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return 2 * self.ctx.m

    def _poly(self, terms, x, y):
        ctx = self.ctx
        acc = np.zeros_like(np.asarray(x, dtype=np.int64))
        for c, i, j in terms:
            acc = ctx.add(acc, ctx.mul(c, ctx.mul(ctx.pow(x, i), ctx.pow(y, j))))
        return ctx._out(acc)

    def __call__(self, x, y):
        return self._poly(self.first, x, y), self._poly(self.second, x, y)

    def evaluate_vec(self, V) -> np.ndarray:
        V = np.asarray(V, dtype=np.int64)
        m = self.ctx.m
        x, y = self.ctx.from_vec(V[..., :m]), self.ctx.from_vec(V[..., m:])
        f, g = self(x, y)
        return np.concatenate([self.ctx.digits[f], self.ctx.digits[g]], axis=-1)
