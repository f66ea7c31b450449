from __future__ import annotations

import numpy as np
import pytest

from semifields import (albert, albert_identification, b4_class_bound, bh, certify, compare,
                        count_classes_family_s, degree_pattern_screen, dickson, dickson_reduction_q1,
                        family_s, make_field, nuclei_of, orbit_of_a, polarize, qbar_isotopism,
                        strong_vs_plain_isotopy, verify_isotopism, zhou_pott, zp_noniso_check)
from semifields.families import FamilyConditionError
from semifields.isotopy import (admissible_k, conjugate_autotopism, family_s_instance,
                                identity_isotopism, swap_isotopism)
from semifields.structure import centralizer_enumerate, verify_autotopism

F = make_field(3, 6)
G = F.generator


def s_instance(k=2, a=1, B=None):
    _, P = family_s_instance(3, 6, k, B, a)
    return P


def test_identity_and_swap(s362):
    pair, P = s362
    assert verify_isotopism(identity_isotopism(P), P, P)
    iso = swap_isotopism(pair)
    assert verify_isotopism(iso, P, polarize(pair.swapped()))


def test_qbar_flip():
    iso, a2 = qbar_isotopism(3, 6, 2)
    assert a2 == F.pow(G, 28)
    assert iso.verified
    assert verify_isotopism(iso, s_instance(2, 1), s_instance(4, a2))
    iso2, back = qbar_isotopism(3, 6, 4, None, a2)
    assert back == 1 and iso2.verified


def test_orbit_of_one():
    rep = orbit_of_a(3, 6, 2)
    assert 1 in rep.orbit and rep.size <= 12 and rep.pairing_ok
    for x in rep.orbit:
        assert F.neg(x) in rep.orbit
    first = rep.entries[0]
    assert (first.a_prime, first.t, first.case, first.omega1) == (1, 0, "diagonal", 1)
    base = s_instance(2, 1)
    for e in rep.entries:
        assert e.iso.verified
        assert verify_isotopism(e.iso, base, s_instance(2, e.a_prime))


def test_orbit_symmetry_exhaustive():
    L = [int(x) for x in F.subfield(3).elements if x]
    orbits = {a: set(orbit_of_a(3, 6, 2, None, a).orbit) for a in L}
    for a in L:
        assert a in orbits[a] and len(orbits[a]) <= 12
        for b in orbits[a]:
            assert a in orbits[b]


def test_strong_witnesses_in_orbit():
    rep = orbit_of_a(3, 6, 2)
    base = s_instance()
    for x in rep.orbit:
        w = rep.witness(x)
        assert w.verified
        v = strong_vs_plain_isotopy(base, s_instance(2, x))
        assert v.verdict == "strongly_isotopic" and v.witness.strong and v.witness.verified


def test_class_census():
    c = count_classes_family_s(3, 6)
    lo, hi = c.bounds
    assert lo == pytest.approx(13 / 6) and hi == 26
    assert 3 <= c.count <= 26 and c.within_bounds
    # frozen after the first run of the orbit census
    assert sorted(len(cl["members"]) for cl in c.classes) == [4, 24, 24]
    members = [v for cl in c.classes for v in cl["members"]]
    assert len(members) == len(set(members)) == 2 * 26  # k in {2, 4}, 26 values of a
    assert admissible_k(3, 6) == [2, 4]
    for cl in c.classes:
        rk, ra = cl["rep"]
        for (k, a), iso in cl["witnesses"].items():
            assert verify_isotopism(iso, s_instance(rk, ra), s_instance(k, a))
        assert tuple(cl["nuclei"]) == (3, 9, 3)
        assert cl["centralizer"] in (5824, 11648)
    assert all(c.condition_c.values())
    assert len(c.separation()) == c.count * (c.count - 1) // 2


def test_empty_family_at_n8():
    assert admissible_k(3, 4) == []
    assert count_classes_family_s(3, 4).count == 0


def test_degree_screen(s362):
    s = s362[0]
    d = dickson(3, 6, 1)[0]
    assert degree_pattern_screen(s, d, True).verdict == "non_isotopic"
    r = degree_pattern_screen(s, family_s(p=3, m=6, k=4)[0], True)
    assert r.verdict == "compatible" and "k1=-k2,l1=-l2" in r.relations
    assert degree_pattern_screen(s, s, True).relations == ["k1=+k2,l1=+l2"]
    assert degree_pattern_screen(s, d, None).verdict == "unknown"


def test_cross_family_separation(s362):
    _, P = s362
    for build in (lambda: dickson(3, 6, 1), lambda: albert(3, 12, 4), lambda: bh(3, 6, 1),
                  lambda: bh(3, 6, 2), lambda: zhou_pott(3, 6, 2, 5)):
        _, Q = build()
        v = compare(P, Q)
        assert v.verdict == "non_isotopic" and v.evidence in ("a", "b"), (Q.family, v)


def test_zhou_pott_coefficient_contradiction(s362):
    pair, P = s362
    zp, Z = zhou_pott(3, 6, 2, 5)
    certify(Z, bruteforce=False)
    v = zp_noniso_check(pair, P, zp, Z, True)
    assert v.verdict == "non_isotopic" and v.evidence == "b"
    assert compare(Z, Z).verdict == "isotopic"


def test_family_s_pairs_via_compare():
    a2 = F.pow(G, 28)
    v = compare(s_instance(2, 1), s_instance(4, a2))
    assert v.verdict == "isotopic" and v.witness.verified


def test_dickson_reduction():
    rep = dickson_reduction_q1(3, 2)
    assert rep.iso.verified and rep.iso.N.is_invertible()
    assert rep.bijectivity_value != 1
    K = make_field(3, 2)
    A = K.div(1, K.generator)
    Q1 = K.pow(A, 4)
    expect = K.pow(K.div(K.sub(Q1, 1), K.mul(A, K.sub(1, Q1))), 4)
    assert rep.bijectivity_value == expect
    assert dickson_reduction_q1(3, 2, variant="BH").iso.verified


def test_albert_identification():
    for args in ((3, 3, 2), (3, 6, 4)):
        assert albert_identification(*args).verified


def test_b4_bound():
    r = b4_class_bound(5, 1, 2)
    assert (r["gcd"], r["bound"]) == (4, 8)
    with pytest.raises(FamilyConditionError):
        b4_class_bound(5, 1, 1)


def test_conjugation_of_autotopisms():
    iso, a2 = qbar_isotopism(3, 6, 2)
    P1, P2 = s_instance(2, 1), s_instance(4, a2)
    rep = centralizer_enumerate(P2, keep_triples=True)
    Ns, Ls, Ms = rep.triples
    rng = np.random.default_rng(9)
    for i in rng.choice(Ns.shape[0], size=10, replace=False):
        N, L, M = conjugate_autotopism(iso, (Ns[i], Ls[i], Ms[i]))
        assert verify_autotopism(N, L, M, P1)


def test_nuclei_invariant_along_witnesses():
    rep = orbit_of_a(3, 6, 2)
    base = nuclei_of(s_instance()).orders
    for x in rep.orbit:
        assert nuclei_of(s_instance(2, x)).orders == base
