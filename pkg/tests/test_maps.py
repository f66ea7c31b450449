from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semifields import BiprojPair, DOPoly, dickson, make_field, polarize
from semifields.maps import MapError, split_exponent
from semifields.presemifield import polar_value, structure_tensor


def test_split_exponent():
    assert split_exponent(3, 4) == (0, 1)
    assert split_exponent(3, 2) == (0, 0)
    assert split_exponent(3, 9) == (2,)
    assert split_exponent(3, 10) == (0, 2)
    with pytest.raises(MapError):
        split_exponent(3, 5)


def test_x4_polarization_spot_value():
    F = make_field(3, 3)
    P = polarize(DOPoly.from_exponents(F, [(1, 4)]))
    g = F.generator
    v = F.digits[g]
    got = F.from_vec(P.mult(v, v))
    assert got == F.mul(2, F.pow(g, 4))
    # Delta(x, y) = x^3 y + x y^3 on every pair
    for x in range(0, 27, 5):
        for y in range(27):
            expect = F.add(F.mul(F.pow(x, 3), y), F.mul(x, F.pow(y, 3)))
            assert F.from_vec(P.mult(F.digits[x], F.digits[y])) == expect


def test_dickson_closed_form_product():
    pair, _ = dickson(3, 2, 1)
    assert pair.mult((0, 0), (0, 0)) == (0, 0)
    assert pair.mult((5, 3), (0, 0)) == (0, 0)
    assert pair.mult((1, 0), (1, 0)) == (2, 0)


def test_closed_form_matches_polarization(s362):
    pair, P = s362
    rng = np.random.default_rng(7)
    X = rng.integers(0, 729, size=(200, 2))
    Y = rng.integers(0, 729, size=(200, 2))
    F = pair.ctx
    closed = pair.mult((X[:, 0], X[:, 1]), (Y[:, 0], Y[:, 1]))
    vx = np.concatenate([F.digits[X[:, 0]], F.digits[X[:, 1]]], axis=1)
    vy = np.concatenate([F.digits[Y[:, 0]], F.digits[Y[:, 1]]], axis=1)
    prod = P.mult(vx, vy)
    assert np.array_equal(F.from_vec(prod[:, :6]), closed[0])
    assert np.array_equal(F.from_vec(prod[:, 6:]), closed[1])
    assert np.array_equal(polar_value(pair, vx, vy), prod)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 728), min_size=6, max_size=6), st.integers(0, 2))
def test_polarization_symmetric_bilinear(codes, c):
    pair = BiprojPair(make_field(3, 6), 2, 5, (1, 0, 0, 3), (0, 1, 9, 0))
    P = polarize(pair)
    F = pair.ctx
    x, y, z = (np.concatenate([F.digits[codes[i]], F.digits[codes[i + 1]]]) for i in (0, 2, 4))
    assert np.array_equal(P.mult(x, y), P.mult(y, x))
    assert np.array_equal(P.mult((x + c * y) % 3, z), (P.mult(x, z) + c * P.mult(y, z)) % 3)


def test_structure_tensor_only_uses_evaluation():
    F = make_field(3, 2)
    f = DOPoly.from_exponents(F, [(1, 2)])
    T = structure_tensor(f, 3, 2)
    assert T.shape == (2, 2, 2)
    g = DOPoly.from_exponents(F, [(1, 2), (1, 3)])
    assert np.array_equal(structure_tensor(g, 3, 2), T)  # linear terms drop out


def test_biproj_validation():
    F = make_field(3, 2)
    with pytest.raises(MapError):
        BiprojPair(F, 3, 0, (1, 0, 0, 1), (0, 1, 0, 0))
    with pytest.raises(MapError):
        BiprojPair(F, 0, 1, (1, 0, 0), (0, 1, 0, 0))


@pytest.mark.parametrize("p,m", [(3, 2)])
def test_gamma_law_exhaustive(p, m):
    F = make_field(p, m)
    pair = BiprojPair(F, 0, 1, (1, 0, 0, F.generator), (0, 1, 0, 0))
    xs = np.arange(F.order)
    X, Y, U, V = np.meshgrid(xs, xs, xs, xs, indexing="ij")
    w1, w2 = pair.mult((X, Y), (U, V))
    for a in F.units():
        a = int(a)
        s1, s2 = pair.mult((F.mul(a, X), F.mul(a, Y)), (F.mul(a, U), F.mul(a, V)))
        assert np.array_equal(s1, F.mul(F.pow(a, pair.q + 1), w1))
        assert np.array_equal(s2, F.mul(F.pow(a, pair.r + 1), w2))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 728), st.lists(st.integers(0, 728), min_size=4, max_size=4))
def test_gamma_law_random(a, xy):
    pair, _ = __import__("semifields").family_s(p=3, m=6, k=2)
    F = pair.ctx
    x, y, u, v = xy
    w1, w2 = pair.mult((x, y), (u, v))
    s1, s2 = pair.mult((F.mul(a, x), F.mul(a, y)), (F.mul(a, u), F.mul(a, v)))
    assert s1 == F.mul(F.pow(a, pair.q + 1), w1)
    assert s2 == F.mul(F.pow(a, pair.r + 1), w2)
