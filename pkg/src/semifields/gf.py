"""Finite field towers GF(p^m) with exact, table-driven arithmetic.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c`` is the
coordinate vector in the polynomial basis ``1, g, ..., g^(m-1)`` and ``g``
is a root of the context modulus.  All arithmetic entry points accept either
Python ints or integer numpy arrays of codes and return the same shape, so
the search kernels can work on whole tables of elements at once.

Subfields are not separate types: an element of GF(p^d) is an element of
the big field that happens to be fixed by the d-th power of Frobenius.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .ntheory import is_prime, prime_factors, prime_part


class FieldError(ValueError):
    """Invalid field parameters or an operation outside its domain."""


def _matpow_mod(C: np.ndarray, e: int, p: int) -> np.ndarray:
    m = C.shape[0]
    out = np.eye(m, dtype=np.int64)
    base = C.copy()
    while e:
        if e & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        e >>= 1
    return out


def _companion(p: int, coeffs: tuple[int, ...]) -> np.ndarray:
    m = len(coeffs)
    C = np.zeros((m, m), dtype=np.int64)
    for j in range(m - 1):
        C[j + 1, j] = 1
    C[:, m - 1] = [(-c) % p for c in coeffs]
    return C


def _root_is_generator(p: int, coeffs: tuple[int, ...]) -> bool:
    # order of the companion matrix equals the order of the root in the quotient ring
    m = len(coeffs)
    N1 = p**m - 1
    C = _companion(p, coeffs)
    eye = np.eye(m, dtype=np.int64)
    if not np.array_equal(_matpow_mod(C, N1, p), eye):
        return False
    return all(not np.array_equal(_matpow_mod(C, N1 // r, p), eye) for r in prime_factors(N1))


@dataclass(frozen=True)
class Subfield:
    """GF(p^degree) sitting inside a context, described by a generator code."""

    degree: int
    generator: int
    elements: np.ndarray = field(repr=False, compare=False)


class FieldCtx:
    """Arithmetic context for GF(p^m).

    Construct through :func:`make_field`, which picks the modulus
    deterministically: the smallest monic polynomial of degree ``m`` (ordered
    by its coefficient list read from the leading term down) whose root
    generates the multiplicative group.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != m:
            raise FieldError("modulus needs m non-leading coefficients")
        self.pw = p ** np.arange(m, dtype=np.int64)
        self._build_tables()

    def _build_tables(self) -> None:
        p, m, N = self.p, self.m, self.order
        C = _companion(p, self.modulus)
        digits = np.zeros((N - 1, m), dtype=np.int64)
        digits[0, 0] = 1
        filled = 1
        step = C.copy()
        while filled < N - 1:
            take = min(filled, N - 1 - filled)
            digits[filled:filled + take] = (digits[:take] @ step.T) % p
            filled += take
            step = (step @ step) % p
        exp = digits @ self.pw
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(N - 1)
        if exp[0] != 1 or np.count_nonzero(log >= 0) != N - 1 or log[0] != -1:
            raise FieldError(f"modulus {self.modulus} does not define GF({p}^{m}) with a primitive root")
        self.exp = exp
        self.log = log
        all_digits = np.zeros((N, m), dtype=np.int64)
        all_digits[exp] = digits
        self.digits = all_digits
        self.generator = int(exp[1 % (N - 1)]) if N > 2 else 1

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus})"

    # element construction -------------------------------------------------

    def __call__(self, code) -> "Fe":
        return Fe(self, int(code) % self.order if isinstance(code, (int, np.integer)) else int(code))

    def from_log(self, i: int) -> "Fe":
        return Fe(self, int(self.exp[i % (self.order - 1)]))

    def from_vec(self, vec) -> int | np.ndarray:
        v = np.asarray(vec, dtype=np.int64) % self.p
        out = v @ self.pw
        return int(out) if out.ndim == 0 else out

    def to_vec(self, a) -> np.ndarray:
        return self.digits[a]

    @property
    def zero(self) -> "Fe":
        return Fe(self, 0)

    @property
    def one(self) -> "Fe":
        return Fe(self, 1)

    @property
    def gen(self) -> "Fe":
        return Fe(self, self.generator)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def units(self) -> np.ndarray:
        return self.exp.copy()

    # vectorised arithmetic on codes --------------------------------------

    @staticmethod
    def _out(x):
        return int(x) if np.ndim(x) == 0 else x

    def add(self, a, b):
        return self._out(((self.digits[a] + self.digits[b]) % self.p) @ self.pw)

    def neg(self, a):
        return self._out(((-self.digits[a]) % self.p) @ self.pw)

    def sub(self, a, b):
        return self._out(((self.digits[a] - self.digits[b]) % self.p) @ self.pw)

    def smul(self, c: int, a):
        """Multiply by the prime-field scalar ``c``."""
        return self._out(((c * self.digits[a]) % self.p) @ self.pw)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.order - 1)]
        out = np.where((a == 0) | (b == 0), 0, out)
        return self._out(out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.p, self.m))
        return self._out(self.exp[(-self.log[a]) % (self.order - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        N1 = self.order - 1
        if e == 0:
            return self._out(np.ones_like(a))
        if e < 0 and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        out = self.exp[(self.log[a] * (e % N1)) % N1]
        out = np.where(a == 0, 0, out)
        return self._out(out)

    def frob(self, a, i: int):
        """a^(p^i), with i taken mod m."""
        return self.pow(a, self.p ** (i % self.m))

    def dlog(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("discrete log of zero")
        return self._out(self.log[a])

    def roots(self, c: int, s: int) -> list[int]:
        """All solutions of ``z^s = c`` for a unit ``c``, sorted by discrete log."""
        if c == 0:
            raise FieldError("roots of zero are not needed here")
        N1 = self.order - 1
        g = gcd(s, N1)
        lc = int(self.log[c])
        if lc % g:
            return []
        step = N1 // g
        j0 = (lc // g) * pow(s // g, -1, step) % step if step > 1 else 0
        return [int(self.exp[j0 + i * step]) for i in range(g)]

    def sum(self, codes, axis: int = 0):
        """Field sum of codes along ``axis``."""
        d = self.digits[np.asarray(codes, dtype=np.int64)].sum(axis=axis) % self.p
        return self._out(d @ self.pw)

    def poly_eval(self, coeffs, x):
        """Evaluate ``sum(coeffs[i] * x^i)`` (coefficients as codes) at ``x``."""
        acc = np.zeros_like(np.asarray(x, dtype=np.int64))
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return self._out(acc)

    # subfields ------------------------------------------------------------

    def in_subfield(self, a, d: int):
        if self.m % d:
            raise FieldError(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.m})")
        res = np.asarray(self.frob(a, d)) == np.asarray(a)
        return bool(res) if res.ndim == 0 else res

    @functools.lru_cache(maxsize=None)
    def subfield(self, d: int) -> Subfield:
        if d < 1 or self.m % d:
            raise FieldError(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.m})")
        step = (self.order - 1) // (self.p**d - 1)
        gen = int(self.exp[step % (self.order - 1)])
        elems = np.concatenate([[0], self.exp[::step]])
        return Subfield(d, gen, np.sort(elems))

    def subgroup(self, s: int) -> np.ndarray:
        """The subgroup (M^x)^s as sorted codes."""
        g = gcd(s, self.order - 1)
        return np.sort(self.exp[::g])

    def tower(self, k: int | None = None) -> dict[str, Subfield]:
        """Named subfields: L (half degree), and for a Frobenius exponent k the
        fields E = GF(p^gcd(k,m)) and D = GF(p^gcd(k+m/2,m))."""
        out = {"Fp": self.subfield(1)}
        if self.m % 2 == 0:
            out["L"] = self.subfield(self.m // 2)
        if k is not None:
            e = gcd(k, self.m)
            out["E"] = self.subfield(e)
            if self.m % 2 == 0:
                out["D"] = self.subfield(gcd(k + self.m // 2, self.m))
            if e % 2 == 0:
                out["E/2"] = self.subfield(e // 2)
        return out

    def embedding(self, sub: "FieldCtx") -> np.ndarray:
        """Array ``emb`` with ``emb[c]`` the image in this field of code ``c`` of ``sub``.

        The image of the generator of ``sub`` is the smallest root of its
        modulus inside this field.
        """
        if sub.p != self.p or self.m % sub.m:
            raise FieldError("not a subfield")
        cand = self.subfield(sub.m).elements
        poly = list(sub.modulus) + [1]
        vals = self.poly_eval(poly, cand)
        roots = cand[np.asarray(vals) == 0]
        theta = int(roots.min())
        emb = np.zeros(sub.order, dtype=np.int64)
        emb[sub.exp] = self._powers(theta, sub.order - 1)
        return emb

    def projection(self, sub: "FieldCtx") -> np.ndarray:
        """Inverse of :meth:`embedding`: ``proj[c]`` is the ``sub`` code, or -1 off the subfield."""
        emb = self.embedding(sub)
        proj = np.full(self.order, -1, dtype=np.int64)
        proj[emb] = np.arange(sub.order)
        return proj

    def _powers(self, a: int, count: int) -> np.ndarray:
        return self.exp[(self.log[a] * np.arange(count)) % (self.order - 1)]


@dataclass(frozen=True, eq=False)
class Fe:
    """A field element bound to its context; a thin wrapper over the code."""

    ctx: FieldCtx
    code: int

    def _c(self, other) -> int:
        if isinstance(other, Fe):
            if other.ctx is not self.ctx:
                raise FieldError("elements from different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._c(other)
        return Fe(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        return Fe(self.ctx, self.ctx.sub(self.code, self._c(other)))

    def __rsub__(self, other):
        return Fe(self.ctx, self.ctx.sub(self._c(other), self.code))

    def __neg__(self):
        return Fe(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        return Fe(self.ctx, self.ctx.mul(self.code, self._c(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Fe(self.ctx, self.ctx.div(self.code, self._c(other)))

    def __rtruediv__(self, other):
        return Fe(self.ctx, self.ctx.div(self._c(other), self.code))

    def __pow__(self, e: int):
        return Fe(self.ctx, self.ctx.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, Fe):
            return other.ctx is self.ctx and other.code == self.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.code == 0:
            return "Fe(0)"
        return f"Fe(g^{self.log()})"

    @property
    def coeffs(self) -> np.ndarray:
        return self.ctx.digits[self.code].copy()

    def is_zero(self) -> bool:
        return self.code == 0

    def log(self) -> int:
        return self.ctx.dlog(self.code)

    def frobenius(self, i: int) -> "Fe":
        return frobenius(self, i)


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldCtx:
    """The canonical context for GF(p^m); identical inputs give the same object."""
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise FieldError(f"p must be an odd prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"m must be a positive integer, got {m!r}")
    for v in range(p**m):
        coeffs = tuple((v // p**i) % p for i in range(m))
        if coeffs[0] == 0:
            continue
        if _root_is_generator(p, coeffs):
            return FieldCtx(p, m, coeffs)
    raise FieldError(f"no primitive polynomial found for GF({p}^{m})")  # pragma: no cover


# element-level operations ------------------------------------------------


def frobenius(x: Fe, i: int) -> Fe:
    """x^(p^i); i is taken mod m."""
    return Fe(x.ctx, x.ctx.frob(x.code, i))


def is_square(x: Fe) -> bool:
    if x.is_zero():
        raise FieldError("is_square is defined on nonzero elements")
    return x.log() % 2 == 0


def power_subgroup_test(x: Fe, s: int) -> bool:
    """Whether x lies in (M^x)^s."""
    if x.is_zero():
        raise FieldError("subgroup membership is defined on nonzero elements")
    return x.log() % gcd(s, x.ctx.order - 1) == 0


def sylow_subgroup_R(ctx: FieldCtx, prime: int) -> np.ndarray:
    """The Sylow ``prime``-subgroup of GF(p^m)^x as codes, generator powers in order."""
    N1 = ctx.order - 1
    if N1 % prime:
        raise FieldError(f"{prime} does not divide {N1}")
    size = prime_part(N1, prime)
    step = N1 // size
    return ctx.exp[(step * np.arange(size)) % N1]


def decompose_square(x: Fe) -> tuple[Fe, Fe]:
    """Write a nonzero square x as c * h with c in L^x and h^(Q+1) = 1.

    Exactly two such pairs exist, (c, h) and (-c, -h).  With ``gL = gen^(Q+1)``
    generating L^x and ``j = log_gL(c)``, the returned pair has ``j`` even when
    (Q-1)/2 is odd (then -1 = gL^((Q-1)/2) flips the parity), and otherwise
    ``j mod (Q-1)`` in ``[0, (Q-1)/2)``.
    """
    ctx = x.ctx
    if ctx.m % 2:
        raise FieldError("decompose_square needs an even extension degree")
    if x.is_zero() or not is_square(x):
        raise FieldError("decompose_square needs a nonzero square")
    Q = ctx.p ** (ctx.m // 2)
    N1 = ctx.order - 1
    half = (Q - 1) // 2
    X = x.log()
    sols = [j for j in range(Q - 1) if (X - (Q + 1) * j) % N1 % (Q - 1) == 0]
    assert len(sols) == 2 and (sols[1] - sols[0]) == half
    if half % 2:
        j = sols[0] if sols[0] % 2 == 0 else sols[1]
    else:
        j = sols[0]
    return ctx.from_log((Q + 1) * j), ctx.from_log(X - (Q + 1) * j)
