from __future__ import annotations

import numpy as np
import pytest

from semifields import LinMap, make_field
from semifields.linmap import (basis_pairs, block_monomial_batch, compose, invert, linearized_matrix,
                               matrix_to_linearized, pair_to_vec, vec_to_pair)


def test_zero_and_scalar_maps():
    F9 = make_field(3, 2)
    assert not linearized_matrix(F9, [0, 0]).any()
    g = F9.generator
    A = LinMap.from_linearized(F9, [g, 0])
    assert A.is_invertible()
    for x in range(9):
        assert F9.from_vec(A(F9.digits[x])) == F9.mul(g, x)


def test_linearized_round_trip(gf729):
    rng = np.random.default_rng(3)
    for _ in range(20):
        coeffs = rng.integers(0, 729, size=6)
        A = linearized_matrix(gf729, coeffs)
        assert np.array_equal(matrix_to_linearized(gf729, A), coeffs)
        x = int(rng.integers(0, 729))
        expect = gf729.sum([gf729.mul(int(c), gf729.frob(x, i)) for i, c in enumerate(coeffs)])
        assert gf729.from_vec((A @ gf729.digits[x]) % 3) == expect


def test_every_matrix_is_linearized(gf729):
    rng = np.random.default_rng(4)
    A = rng.integers(0, 3, size=(6, 6))
    assert np.array_equal(linearized_matrix(gf729, matrix_to_linearized(gf729, A)), A)


def test_compose_and_invert(gf729):
    rng = np.random.default_rng(5)
    for _ in range(10):
        while True:
            L = LinMap(rng.integers(0, 3, size=(12, 12)), 3, gf729)
            if L.is_invertible():
                break
        assert compose(L, invert(L)) == LinMap.identity(12, 3)
        assert (invert(L) @ L) == LinMap.identity(12, 3)
    with pytest.raises(ValueError):
        compose(LinMap.identity(3, 3), LinMap.identity(4, 3))


def test_block_forms(gf729):
    F = gf729
    g = F.generator
    L = LinMap.monomial_blocks(F, [(g, 1), None, (1, 0), (F.pow(g, 5), 3)])
    assert L.block_terms() == [[(g, 1)], [], [(1, 0)], [(F.pow(g, 5), 3)]]
    x, y = 17, 400
    u, v = L.apply_pair(x, y)
    assert u == F.mul(g, F.frob(x, 1))
    assert v == F.add(x, F.mul(F.pow(g, 5), F.frob(y, 3)))
    batch = block_monomial_batch(F, [[g], [0], [1], [F.pow(g, 5)]], [[1], [0], [0], [3]])
    assert np.array_equal(batch[0], L.matrix)


def test_pair_vectors(gf729):
    v = pair_to_vec(gf729, 5, 77)
    assert vec_to_pair(gf729, v) == (5, 77)
    xs, ys = basis_pairs(gf729)
    E = pair_to_vec(gf729, xs, ys)
    assert np.array_equal(E, np.eye(12, dtype=np.int64))
