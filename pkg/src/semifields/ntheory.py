"""Integer utilities: closed-form gcds, odd parts, primitive prime divisors."""

from __future__ import annotations

from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def odd_part(n: int) -> int:
    """The odd part of ``n``, written sigma(n) in the literature."""
    if n < 1:
        raise ValueError("odd_part needs n >= 1")
    while n % 2 == 0:
        n //= 2
    return n


def two_adic_valuation(n: int) -> int:
    if n < 1:
        raise ValueError("two_adic_valuation needs n >= 1")
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def gcd_pm(p: int, i: int, m: int, sign: str) -> int:
    """gcd(p^i - 1, p^m - 1) for ``sign='-'`` and gcd(p^i + 1, p^m - 1) for ``'+'``.

    Evaluated from the closed form in terms of ``gcd(i, m)``; the direct
    integer gcd is used only by the tests.
    """
    if i < 1 or m < 1:
        raise ValueError("i and m must be positive")
    g = gcd(i, m)
    if sign == "-":
        return p**g - 1
    if sign != "+":
        raise ValueError("sign must be '+' or '-'")
    if (m // g) % 2 == 1:
        return 1 if p == 2 else 2
    return p**g + 1


def multiplicative_order(a: int, modulus: int) -> int:
    if gcd(a, modulus) != 1:
        raise ValueError("a is not a unit")
    k, x = 1, a % modulus
    while x != 1 % modulus:
        x = (x * a) % modulus
        k += 1
    return k


class NoPrimitiveDivisor(ValueError):
    """Raised for the parameters where Zsigmondy's theorem guarantees nothing."""


def zsigmondy_prime(p: int, m: int) -> int:
    """Smallest prime dividing p^m - 1 but no p^i - 1 with 1 <= i < m."""
    if m <= 2 or (p, m) == (2, 6):
        raise NoPrimitiveDivisor(f"no primitive divisor guaranteed for (p, m) = ({p}, {m})")
    for r in prime_factors(p**m - 1):
        if r != p and multiplicative_order(p, r) == m:
            return r
    raise NoPrimitiveDivisor(f"p^m - 1 has no primitive prime divisor for (p, m) = ({p}, {m})")


def prime_part(n: int, r: int) -> int:
    """Largest power of the prime ``r`` dividing ``n``."""
    out = 1
    while n % r == 0:
        n //= r
        out *= r
    return out
