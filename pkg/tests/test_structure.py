from __future__ import annotations

import time

import numpy as np
import pytest

from semifields import (LinMap, DOPoly, certify, centralizer_enumerate, dickson, family_s, field_square,
                        make_field, nuclei, nuclei_of, polarize, unitalize, verify_autotopism)
from semifields import linalg
from semifields.isotopy import Isotopism, verify_isotopism
from semifields.presemifield import StructureError
from semifields.structure import isotopism_mask, torus_element


def certified(build):
    pair, P = build
    certify(P, bruteforce=False if hasattr(pair, "left") else None)
    return pair, P


def test_unitalize_field_square():
    F = make_field(3, 4)
    f, P = field_square(3, 4)
    certify(P)
    S = unitalize(P)
    # x o y = 2xy, so x * y = (x/2)(y/2)*2 = xy/2 with identity 2
    assert F.from_vec(S.identity) == 2
    half = F.inv(2)
    X, Y = np.meshgrid(np.arange(81), np.arange(81), indexing="ij")
    prod = F.from_vec(S.mult(F.digits[X], F.digits[Y]))
    assert np.array_equal(prod, F.mul(F.mul(X, Y), half))
    E = np.eye(4, dtype=np.int64)
    lhs = S.mult(S.mult(E[:, None, None], E[None, :, None]), E[None, None, :])
    rhs = S.mult(E[:, None, None], S.mult(E[None, :, None], E[None, None, :]))
    assert np.array_equal(lhs, rhs)


def test_unitalize_identity_law(s362):
    _, P = s362
    S = unitalize(P)
    rng = np.random.default_rng(0)
    X = rng.integers(0, 3, size=(100, 12))
    assert np.array_equal(S.mult(S.identity, X), X)
    assert np.array_equal(S.mult(X, S.identity), X)


def test_unitalize_errors(s362):
    _, P = s362
    with pytest.raises(StructureError):
        unitalize(P, np.zeros(12, dtype=np.int64))
    _, Q = family_s(p=3, m=6, k=2, a=P.ctx.pow(P.ctx.generator, 28))
    with pytest.raises(StructureError):
        unitalize(Q)


def test_changing_unit_element_is_an_isotopy(s362):
    _, P = s362
    e1 = np.eye(12, dtype=np.int64)[0]
    e2 = np.array([1, 2, 0, 0, 1, 0, 0, 1, 0, 0, 0, 2])
    S1, S2 = unitalize(P, e1), unitalize(P, e2)
    p = 3
    L = (P.right_matrix(e2) @ linalg.inverse(P.right_matrix(e1), p)) % p
    M = (P.left_matrix(e2) @ linalg.inverse(P.left_matrix(e1), p)) % p
    iso = Isotopism(LinMap.identity(12, 3), LinMap(L, 3), LinMap(M, 3))
    assert verify_isotopism(iso, S1, S2)
    assert nuclei(S1).orders == nuclei(S2).orders


def test_nuclei_family_s(s362):
    _, P = s362
    rep = nuclei_of(P)
    assert rep.orders == (3, 9, 3) and rep.match
    assert rep.to_dict()["Nm"] == 9
    assert np.array_equal(rep.bases["left"], rep.bases["right"])


def test_nuclei_field_and_dickson():
    _, P = field_square(3, 2)
    certify(P)
    assert nuclei_of(P).orders == (9, 9, 9)
    _, D = certified(dickson(3, 2, 1))
    rep = nuclei_of(D)
    assert rep.orders == (3, 9, 3) and rep.match


def test_nuclei_needs_unit(s362):
    _, P = s362
    with pytest.raises(StructureError):
        nuclei(P)


@pytest.mark.parametrize("Blog", [1, 3])
def test_nuclei_all_a_two_b(Blog):
    F = make_field(3, 6)
    B = F.pow(F.generator, Blog)
    for a in F.subfield(3).elements[1:]:
        _, P = family_s(p=3, m=6, k=2, B=B, a=int(a))
        certify(P, bruteforce=False)
        rep = nuclei_of(P)
        assert rep.orders == (3, 9, 3) and rep.match


def test_autotopism_checks(s362):
    pair, P = s362
    F = pair.ctx
    I = np.eye(12, dtype=np.int64)
    assert verify_autotopism(I, I, I, P)
    rng = np.random.default_rng(2)
    for a in rng.integers(1, 729, size=5):
        N, L, M = torus_element(F, int(a), pair.q, pair.r)
        assert verify_autotopism(N, L, M, P)
        bad = N.matrix.copy()
        bad[0, 0] = (bad[0, 0] + 1) % 3
        assert not verify_autotopism(bad, L, M, P)
    with pytest.raises(ValueError):
        verify_autotopism(np.eye(4, dtype=np.int64), I, I, P)


def test_basis_pair_check_equals_exhaustive_check():
    pair, P = certified(dickson(3, 2, 1))
    F = pair.ctx
    V = np.array(np.meshgrid(*[range(3)] * 4, indexing="ij")).reshape(4, -1).T
    rng = np.random.default_rng(11)
    triples = [tuple(m.matrix for m in torus_element(F, int(a), pair.q, pair.r)) for a in (1, 2, 5, 7)]
    for _ in range(40):
        N, L, M = triples[int(rng.integers(0, 4))]
        N = N.copy()
        if rng.random() < 0.5:
            N[rng.integers(0, 4), rng.integers(0, 4)] += 1
        triples.append((N % 3, L, M))
    for N, L, M in triples:
        lhs = (P.mult(V[:, None], V[None, :]) @ N.T) % 3
        rhs = P.mult((V @ L.T % 3)[:, None], (V @ M.T % 3)[None, :])
        full = np.array_equal(lhs, rhs) and all(linalg.rank(X, 3) == 4 for X in (N, L, M))
        assert isotopism_mask(N[None], L[None], M[None], P.tensor, P.tensor, 3)[0] == full


def test_centralizer_default_instance(s362):
    _, P = s362
    t0 = time.perf_counter()
    rep = centralizer_enumerate(P)
    assert time.perf_counter() - t0 < 120
    assert rep.size in (5824, 11648) and rep.match
    assert rep.zsigmondy == 7 and rep.index in (8, 16) and rep.condition_c
    assert rep.torus_sylow_found and rep.identity_found and rep.sylow_order == 7


def test_centralizer_audit_agrees(s362):
    _, P = s362
    assert centralizer_enumerate(P, audit=True).audited


def test_centralizer_rejects_other_families():
    _, D = dickson(3, 2, 1)
    with pytest.raises(StructureError):
        centralizer_enumerate(D)
