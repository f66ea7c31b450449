"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from math import gcd


def poly_mulmod(a, b, modulus, p):
    """Product of two coefficient lists (low degree first) modulo a monic polynomial."""
    m = len(modulus)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i, mc in enumerate(modulus):
                prod[d - m + i] = (prod[d - m + i] - c * mc) % p
    return prod[:m]


def code_to_poly(code, p, m):
    return [(code // p**i) % p for i in range(m)]


def poly_to_code(poly, p):
    return sum(int(c) * p**i for i, c in enumerate(poly))


def field_mul(a, b, p, m, modulus):
    return poly_to_code(poly_mulmod(code_to_poly(a, p, m), code_to_poly(b, p, m), modulus, p), p)


def field_pow(a, e, p, m, modulus):
    out = 1
    for _ in range(e):
        out = field_mul(out, a, p, m, modulus)
    return out


def rank_mod_p(rows, p):
    """Plain Gaussian elimination on a list of lists."""
    A = [list(r) for r in rows]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


def multiplicative_order(a, n):
    k, x = 1, a % n
    while x != 1:
        x = (x * a) % n
        k += 1
    return k


def is_primitive_divisor(r, p, m):
    return (p**m - 1) % r == 0 and all((p**i - 1) % r for i in range(1, m))


def prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def all_vectors(p, n):
    return itertools.product(range(p), repeat=n)


__all__ = ["poly_mulmod", "field_mul", "field_pow", "rank_mod_p", "multiplicative_order",
           "is_primitive_divisor", "prime_divisors", "all_vectors", "gcd"]
