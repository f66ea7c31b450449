from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import field_mul, field_pow
from semifields import FieldError, decompose_square, make_field
from semifields.gf import Fe, frobenius, is_square, power_subgroup_test, sylow_subgroup_R


def test_prime_field_context():
    F = make_field(3, 1)
    assert F.order == 3
    assert F.tower() == {"Fp": F.subfield(1)}
    assert F.mul(2, 2) == 1


def test_gf729_has_all_subfields(gf729):
    for d, size in ((1, 3), (2, 9), (3, 27), (6, 729)):
        assert gf729.subfield(d).elements.size == size
    with pytest.raises(FieldError):
        gf729.subfield(4)


@pytest.mark.parametrize("p", [4, 1, 9])
def test_rejects_non_odd_prime(p):
    with pytest.raises(FieldError):
        make_field(p, 2)


def test_context_is_canonical():
    assert make_field(3, 6) is make_field(3, 6)


def test_modulus_is_smallest_primitive():
    # exhaustive: no smaller monic degree-2 polynomial over F_3 has a primitive root
    F = make_field(3, 2)
    assert F.modulus == (2, 1)  # x^2 + x + 2


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (3, 4)])
def test_multiplication_matches_polynomial_oracle(p, m):
    F = make_field(p, m)
    a, b = np.meshgrid(np.arange(F.order), np.arange(F.order), indexing="ij")
    fast = F.mul(a, b)
    for x in range(F.order):
        for y in range(F.order):
            assert fast[x, y] == field_mul(x, y, p, m, F.modulus)


def test_generator_has_full_order(gf729):
    g = gf729.generator
    assert field_pow(g, 728, 3, 6, gf729.modulus) == 1
    for r in (2, 3, 7, 13):
        assert field_pow(g, 728 // r, 3, 6, gf729.modulus) != 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 728), st.integers(1, 728), st.integers(0, 728))
def test_field_axioms(a, b, c):
    F = make_field(3, 6)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.div(a, b), b) == a
    assert F.sub(F.add(a, c), c) == a
    assert F.mul(a, F.inv(a)) == 1


def test_frobenius_identities(gf729):
    x = gf729(57)
    assert frobenius(x, 0) == x
    assert frobenius(x, 6) == x
    cubes = gf729.frob(gf729.elements(), 3)
    fixed = gf729.elements()[cubes == gf729.elements()]
    assert np.array_equal(np.sort(fixed), gf729.subfield(3).elements)


def test_frobenius_is_additive(gf729):
    a, b = np.meshgrid(np.arange(729), np.arange(0, 729, 7))
    assert np.array_equal(gf729.frob(gf729.add(a, b), 2),
                          gf729.add(gf729.frob(a, 2), gf729.frob(b, 2)))


def test_square_and_subgroup_tests(gf729):
    F9 = make_field(3, 2)
    assert not is_square(F9.gen)
    for s in (1, 2, 4, 28):
        assert power_subgroup_test(gf729.one, s)
    L = set(gf729.subfield(3).elements.tolist()) - {0}
    for c in range(1, 729):
        assert power_subgroup_test(gf729(c), 28) == (c in L)
    with pytest.raises(FieldError):
        is_square(gf729.zero)


def test_sylow_subgroup(gf729):
    R = sylow_subgroup_R(gf729, 7)
    assert R.size == 7 and R[0] == 1
    assert set(gf729.pow(R, 7).tolist()) == {1}
    for x in R[1:]:
        for d in (1, 2, 3):
            assert not gf729.in_subfield(int(x), d)
    assert sylow_subgroup_R(gf729, 7).size == 7
    F = make_field(3, 2)
    with pytest.raises(FieldError):
        sylow_subgroup_R(F, 5)


def test_decompose_square(gf729):
    F = gf729
    assert decompose_square(F.one) == (F.one, F.one)
    L = F.subfield(3).elements[1:]
    for c in L[:6]:
        x = F(int(c)) ** 2
        cc, h = decompose_square(x)
        assert cc * h == x and (h ** 28) == 1 and F.in_subfield(cc.code, 3)
    for code in F.exp[::2][::17]:
        x = F(int(code))
        cc, h = decompose_square(x)
        assert cc * h == x and F.in_subfield(cc.code, 3) and h ** 28 == 1
        # exactly two such factorizations exist
        pairs = [(int(c), int(h2)) for c in L for h2 in F.subgroup(26)
                 if F.mul(int(c), int(h2)) == x.code]
        assert len(pairs) == 2
    with pytest.raises(FieldError):
        decompose_square(F.gen)


def test_roots(gf729):
    F = gf729
    for s in (2, 10, 28):
        for c in (1, F.generator, F.pow(F.generator, 28)):
            sols = F.roots(c, s)
            brute = sorted((int(z) for z in F.units() if F.pow(int(z), s) == c), key=lambda z: F.log[z])
            assert sols == brute


def test_element_wrapper(gf729):
    g = gf729.gen
    assert isinstance(g, Fe) and g.log() == 1
    assert (g * g).log() == 2
    assert (g / g) == 1
    assert g - g == 0
    assert np.array_equal(g.coeffs, gf729.digits[g.code])
