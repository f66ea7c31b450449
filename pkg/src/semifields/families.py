"""Validated constructors for the commutative semifield families.

Each constructor checks the admissibility conditions of its family and
raises :class:`FamilyConditionError` listing every violated condition by
name.  With ``permissive=True`` the boundary parameters at which a family
degenerates into a simpler one are accepted and the output is tagged with
the reduced family name instead.

Constructors return ``(map, presemifield)``; planarity is never assumed,
see :func:`semifields.planarity.certify`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .gf import FieldCtx, make_field
from .maps import BiprojPair, DOPoly, PairMap
from .ntheory import odd_part
from .presemifield import polarize


class FamilyConditionError(ValueError):
    def __init__(self, family: str, violations: list[str]):
        self.family = family
        self.violations = list(violations)
        super().__init__(f"{family}: " + "; ".join(self.violations))


def _check(family: str, problems: list[str]) -> None:
    if problems:
        raise FamilyConditionError(family, problems)


def _field(family: str, p: int, m: int) -> FieldCtx:
    try:
        return make_field(p, m)
    except ValueError as exc:
        raise FamilyConditionError(family, [str(exc)]) from exc


def _is_nonsquare(ctx: FieldCtx, a: int) -> bool:
    return a != 0 and int(ctx.log[a]) % 2 == 1


def _is_generator(ctx: FieldCtx, a: int) -> bool:
    return a != 0 and gcd(int(ctx.log[a]), ctx.order - 1) == 1


def _default(ctx: FieldCtx, value) -> int:
    return ctx.generator if value is None else int(value) % ctx.order


def _build(source, family: str, params: dict) -> tuple:
    object.__setattr__(source, "family", family)
    object.__setattr__(source, "params", params)
    return source, polarize(source)


# Family S ----------------------------------------------------------------


@dataclass(frozen=True)
class FamilySParams:
    """Parameters of ``[(1,0,0,B)_q, (0,1,a/B,0)_r]`` over M = GF(p^m).

    ``B`` and ``a`` are element codes of ``make_field(p, m)``; ``B`` defaults
    to the generator and ``a`` to 1.
    """

    p: int
    m: int
    k: int
    B: int | None = None
    a: int | None = None
    ctx: FieldCtx = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ctx = _field("S", self.p, self.m)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "B", _default(ctx, self.B))
        object.__setattr__(self, "a", 1 if self.a is None else int(self.a) % ctx.order)

    @property
    def half(self) -> int:
        return self.m // 2

    @property
    def l(self) -> int:
        """Exponent index of r = q Q, reduced mod m."""
        return (self.k + self.half) % self.m

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def Q(self) -> int:
        return self.p**self.half

    @property
    def r(self) -> int:
        return self.q * self.Q

    @property
    def e(self) -> int:
        return gcd(self.k, self.m)

    @property
    def d(self) -> int:
        return gcd(self.k + self.half, self.m)

    @property
    def A(self) -> int:
        """The coefficient a/B."""
        return self.ctx.div(self.a, self.B)

    def violations(self) -> list[str]:
        out = []
        ctx = self.ctx
        if self.m % 2:
            out.append("m must be even")
            return out
        if not 0 < self.k < self.m:
            out.append("k must satisfy 0 < k < m")
        elif self.k == self.half:
            out.append("k must differ from m/2")
        if (self.m // self.e) % 2 == 0:
            out.append("m/e odd violated")
        if not _is_nonsquare(ctx, self.B):
            out.append("B must be a non-square")
        if self.a == 0 or not ctx.in_subfield(self.a, self.half):
            out.append("a must lie in L^x")
        return out

    def degeneration(self) -> str | None:
        if self.a == 0:
            return "ZP"
        if self.k % self.m == 0 or self.k == self.half:
            return "D"
        return None

    def as_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "k": self.k, "B": self.B, "a": self.a,
                "q": self.q, "r": self.r, "Q": self.Q, "e": self.e, "d": self.d}


def family_s(params: FamilySParams | None = None, *, permissive: bool = False, **kw):
    """The pair ``[(1,0,0,B)_q, (0,1,a/B,0)_{qQ}]`` and its polarization."""
    P = params if params is not None else FamilySParams(**kw)
    bad = P.violations()
    family = "S"
    if bad and permissive:
        tag = P.degeneration()
        structural = [v for v in bad if v.startswith("m must")]
        if tag and not structural:
            family = tag
            bad = [v for v in bad if v not in ("a must lie in L^x", "k must satisfy 0 < k < m",
                                               "k must differ from m/2", "m/e odd violated")]
    _check("S", bad)
    if family == "S":
        assert P.d * 2 == P.e, "gcd(k + m/2, m) = gcd(k, m)/2 failed"
    ctx = P.ctx
    pair = BiprojPair(ctx, P.k % P.m, P.l, (1, 0, 0, P.B), (0, 1, P.A, 0))
    return _build(pair, family, P.as_dict())


# other biprojective families ------------------------------------------------


def field_pair(p: int, m: int, a: int | None = None):
    """The field GF(p^(2m)) as the pair ``[(0,1,0,0)_1, (1,0,0,a)_1]``."""
    ctx = _field("F", p, m)
    a = _default(ctx, a)
    _check("F", [] if _is_nonsquare(ctx, a) else ["a must be a non-square"])
    return _build(BiprojPair(ctx, 0, 0, (0, 1, 0, 0), (1, 0, 0, a)), "F", {"p": p, "m": m, "a": a})


def field_square(p: int, n: int):
    """X^2 over GF(p^n)."""
    ctx = _field("F", p, n)
    return _build(DOPoly.from_exponents(ctx, [(1, 2)]), "F", {"p": p, "n": n})


def dickson(p: int, m: int, k: int, a: int | None = None, *, permissive: bool = False):
    """``[(1,0,0,a)_1, (0,1,0,0)_q]``."""
    ctx = _field("D", p, m)
    a = _default(ctx, a)
    bad = []
    family = "D"
    if not 0 < k < m:
        if permissive and k % m == 0:
            family = "F"
        else:
            bad.append("k must satisfy 0 < k < m")
    if not _is_nonsquare(ctx, a):
        bad.append("a must be a non-square")
    _check("D", bad)
    pair = BiprojPair(ctx, 0, k % m, (1, 0, 0, a), (0, 1, 0, 0))
    return _build(pair, family, {"p": p, "m": m, "k": k, "a": a, "d": gcd(k, m)})


def albert(p: int, n: int, k: int, a: int | None = None, *, form: str | None = None):
    """Albert's commutative twisted field ``X^(q+1)`` over GF(p^n).

    For odd ``n`` only the univariate form exists.  For even ``n`` the
    default is the pair ``[(0,a^((q-1)/2),1,0)_q, (a^((q+1)/2),0,0,1)_q]`` over
    M = GF(p^(n/2)) with ``a`` a non-square of M; ``form="univariate"``
    returns ``X^(q+1)`` instead.
    """
    bad = []
    if not 0 < k < n:
        bad.append("k must satisfy 0 < k < n")
    elif (n // gcd(k, n)) % 2 == 0:
        bad.append("n/gcd(k,n) odd violated")
    form = form or ("univariate" if n % 2 else "biproj")
    if form == "biproj" and n % 2:
        bad.append("the biprojective form needs n even")
    _check("A", bad)
    params = {"p": p, "n": n, "k": k, "d": gcd(k, n)}
    if form == "univariate":
        ctx = _field("A", p, n)
        return _build(DOPoly.from_exponents(ctx, [(1, p**k + 1)]), "A", params)
    m = n // 2
    ctx = _field("A", p, m)
    a = _default(ctx, a)
    _check("A", [] if _is_nonsquare(ctx, a) else ["a must be a non-square"])
    q = p**k
    pair = BiprojPair(ctx, k % m, k % m, (0, ctx.pow(a, (q - 1) // 2), 1, 0),
                      (ctx.pow(a, (q + 1) // 2), 0, 0, 1))
    return _build(pair, "A", dict(params, a=a, m=m))


def zhou_pott(p: int, m: int, k: int, j: int, a: int | None = None, *, permissive: bool = False):
    """``[(1,0,0,a)_q, (0,1,0,0)_r]`` with q = p^k, r = p^j."""
    ctx = _field("ZP", p, m)
    a = _default(ctx, a)
    bad = []
    family = "ZP"
    k0, j0 = k % m == 0, j % m == 0
    if permissive and (k0 or j0):
        family = "F" if (k0 and j0) else ("D" if k0 else "BH")
    else:
        if not 0 < k < m:
            bad.append("k must satisfy 0 < k < m")
        if not 0 < j < m:
            bad.append("j must satisfy 0 < j < m")
    if 0 < k < m and (m // gcd(k, m)) % 2 == 0:
        bad.append("m/gcd(k,m) odd violated")
    if not _is_nonsquare(ctx, a):
        bad.append("a must be a non-square")
    _check("ZP", bad)
    pair = BiprojPair(ctx, k % m, j % m, (1, 0, 0, a), (0, 1, 0, 0))
    d = gcd(k, m)
    return _build(pair, family, {"p": p, "m": m, "k": k, "j": j, "a": a,
                                 "d": d, "d_prime": gcd(gcd(j, k), m)})


def bh(p: int, m: int, k: int, a: int | None = None, *, permissive: bool = False):
    """Budaghyan-Helleseth pair; the branch follows the parity of m/gcd(k,m)."""
    ctx = _field("BH", p, m)
    a = _default(ctx, a)
    bad = []
    family = "BH"
    if not 0 < k < m:
        if permissive and k % m == 0:
            family = "F"
        else:
            bad.append("k must satisfy 0 < k < m")
    if not _is_nonsquare(ctx, a):
        bad.append("a must be a non-square")
    _check("BH", bad)
    q = p**k
    d = gcd(k, m)
    odd = (m // d) % 2 == 1
    if odd:
        pair = BiprojPair(ctx, 0, k % m, (0, 1, 0, 0), (1, 0, 0, a))
    else:
        pair = BiprojPair(ctx, 0, k % m, (1, 0, 0, a), (0, 1, ctx.pow(a, (q - 1) // 2), 0))
    return _build(pair, family, {"p": p, "m": m, "k": k, "a": a, "d": d,
                                 "branch": "odd" if odd else "even"})


# univariate and two-component families -------------------------------------------


def _zkw_like(name: str, p: int, s: int, t: int, a, top: int, bad: list[str]):
    # X^(q+1) - a^(Q-1) X^(qQ + Q^top) over GF(p^((top+1)s))
    ctx = _field(name, p, (top + 1) * s)
    a = _default(ctx, a)
    if not _is_generator(ctx, a):
        bad.append("a must generate the multiplicative group")
    _check(name, bad)
    Q, q = p**s, p**t
    coeff = ctx.neg(ctx.pow(a, Q - 1))
    poly = DOPoly.from_exponents(ctx, [(1, q + 1), (coeff, q * Q + Q**top)])
    return _build(poly, name, {"p": p, "s": s, "t": t, "a": a, "Q": Q, "q": q})


def zkw(p: int, s: int, t: int, a: int | None = None):
    """``X^(q+1) - a^(Q-1) X^(qQ+Q^2)`` over GF(p^(3s)), q = p^t, Q = p^s."""
    bad = []
    if not 0 < t < 3 * s:
        bad.append("t must satisfy 0 < t < 3s")
    d = gcd(s, t)
    if (s // d) % 2 == 0:
        bad.append("s/d odd violated")
    if (s // d + t // d) % 3:
        bad.append("s' + t' = 0 mod 3 violated")
    return _zkw_like("ZKW", p, s, t, a, 2, bad)


def b3(p: int, s: int, t: int, a: int | None = None):
    """Same polynomial as ZKW under the congruence conditions q = Q = 1 mod 3."""
    bad = []
    if not 0 < t < 3 * s:
        bad.append("t must satisfy 0 < t < 3s")
    d = gcd(s, t)
    if (s // d) % 2 == 0:
        bad.append("s/d odd violated")
    if (p**s) % 3 != 1 or (p**t) % 3 != 1:
        bad.append("q = Q = 1 mod 3 violated")
    return _zkw_like("B3", p, s, t, a, 2, bad)


def b4_violations(p: int, s: int, t: int) -> list[str]:
    bad = []
    if not 0 < t < 4 * s:
        bad.append("t must satisfy 0 < t < 4s")
    d = gcd(2 * s, t)
    if ((2 * s) // d) % 2 == 0:
        bad.append("2s/d odd violated")
    if (p**s) % 4 != 1 or (p**t) % 4 != 1:
        bad.append("q = Q = 1 mod 4 violated")
    return bad


def b4(p: int, s: int, t: int, a: int | None = None):
    """``X^(q+1) - a^(Q-1) X^(qQ+Q^3)`` over GF(p^(4s))."""
    return _zkw_like("B4", p, s, t, a, 3, b4_violations(p, s, t))


def cm_dy(m: int, sign: int = 1, p: int = 3, *, literal: bool = False):
    """``X^10 + sign * X^6 - X^2`` over GF(3^m).

    ``literal=True`` gives ``X^10 + sign * X^6 - X`` instead.  Its linear
    term vanishes under polarization and the result is not planar, which the
    certifier reports.
    """
    bad = []
    if p != 3:
        bad.append("p must be 3")
    if m < 5 or m % 2 == 0:
        bad.append("m >= 5 odd violated")
    if sign not in (1, -1):
        bad.append("sign must be +1 or -1")
    _check("CM/DY", bad)
    ctx = make_field(3, m)
    last = 1 if literal else 2
    poly = DOPoly.from_exponents(ctx, [(1, 10), (sign % 3, 6), (2, last)])
    return _build(poly, "CM/DY", {"p": 3, "m": m, "sign": sign, "literal": literal})


def cg(m: int, p: int = 3):
    """``(x^2 + y^10, xy - y^6)`` on GF(3^m)^2."""
    bad = []
    if p != 3:
        bad.append("p must be 3")
    if m < 3 or m % 2 == 0:
        bad.append("m >= 3 odd violated")
    _check("CG", bad)
    ctx = make_field(3, m)
    pm = PairMap(ctx, ((1, 2, 0), (1, 0, 10)), ((1, 1, 1), (2, 0, 6)))
    return _build(pm, "CG", {"p": 3, "m": m})


def ganley(m: int, a: int | None = None, p: int = 3):
    """``(x^2 + a y^2 + a^3 y^18, xy - a y^6)`` on GF(3^m)^2 with a a non-square."""
    bad = []
    if p != 3:
        bad.append("p must be 3")
    if m < 3:
        bad.append("m >= 3 violated")
    _check("G", bad)
    ctx = make_field(3, m)
    a = _default(ctx, a)
    _check("G", [] if _is_nonsquare(ctx, a) else ["a must be a non-square"])
    pm = PairMap(ctx, ((1, 2, 0), (a, 0, 2), (ctx.pow(a, 3), 0, 18)),
                 ((1, 1, 1), (ctx.neg(a), 0, 6)))
    return _build(pm, "G", {"p": 3, "m": m, "a": a})


UNIVARIATE = {
    "zkw": zkw,
    "b3": b3,
    "b4": b4,
    "cm_dy_plus": lambda m, p=3: cm_dy(m, 1, p),
    "cm_dy_minus": lambda m, p=3: cm_dy(m, -1, p),
    "cg": cg,
    "g": ganley,
}


def univariate_families(name: str, **params):
    """Dispatch to the non-biprojective constructors by name."""
    if name not in UNIVARIATE:
        raise FamilyConditionError(name, [f"unknown family {name!r}"])
    return UNIVARIATE[name](**params)


# nuclei predictions ------------------------------------------------------------


def predicted_nuclei(family: str, params: dict) -> tuple[int, int, int] | None:
    """(N_l, N_m, N_r) orders expected for a family; N_r = N_l throughout."""
    p = params["p"]
    if family == "F":
        n = params.get("n", 2 * params.get("m", 0))
        lm = (p**n, p**n)
    elif family == "A":
        lm = (p ** params["d"],) * 2
    elif family == "D":
        lm = (p ** params["d"], p ** params["m"])
    elif family == "ZP":
        lm = (p ** params["d_prime"], p ** params["d"])
    elif family == "BH":
        lm = (p ** params["d"], p ** (2 * params["d"]))
    elif family == "S":
        lm = (p ** (params["e"] // 2), p ** params["e"])
    elif family == "CG":
        lm = (3, 3 ** params["m"])
    elif family in ("G", "CM/DY"):
        lm = (3, 3)
    elif family in ("ZKW", "B3"):
        d = gcd(params["s"], params["t"])
        lm = (p**d, p**d)
    elif family == "B4":
        d = gcd(2 * params["s"], params["t"])
        lm = (p ** (d // 2), p**d)
    else:
        return None
    return (lm[0], lm[1], lm[0])


def family_s_count_bounds(p: int, n: int) -> tuple[float, int]:
    """Sandwich for the number of Family S classes of order p^n.

    Lower ``(sigma(n)-1)/2 * (p^(n/4)-1)/n`` and upper
    ``(sigma(n)-1)/2 * (p^(n/4)-1)``.
    """
    c = (odd_part(n) - 1) / 2
    return c * (p ** (n // 4) - 1) / n, int(c * (p ** (n // 4) - 1))
