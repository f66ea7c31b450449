from __future__ import annotations

from math import gcd

import numpy as np
import pytest

from semifields import (FamilyConditionError, FamilySParams, albert, b3, b4, bh, cg, cm_dy, dickson,
                        family_s, family_s_count_bounds, ganley, make_field, predicted_nuclei, zhou_pott,
                        zkw)
from semifields.families import b4_violations


def test_family_s_smallest_instance():
    pair, P = family_s(p=3, m=6, k=2)
    F = pair.ctx
    assert (pair.q, pair.r) == (9, 243)
    assert pair.left == (1, 0, 0, F.generator)
    assert pair.right == (0, 1, F.div(1, F.generator), 0)
    assert P.family == "S" and P.n == 12 and P.is_commutative()


@pytest.mark.parametrize("kw,msg", [
    (dict(p=3, m=6, k=3), "m/e odd violated"),
    (dict(p=3, m=6, k=2, B=9), "B must be a non-square"),
    (dict(p=3, m=6, k=2, a=3), r"a must lie in L\^x"),
])
def test_family_s_rejections(kw, msg):
    with pytest.raises(FamilyConditionError, match=msg):
        family_s(**kw)


def test_family_s_parameter_identities():
    # gcd(k + m/2, m) = gcd(k, m) / 2 for every admissible (p, m, k) with m <= 12
    for m in range(2, 13, 2):
        for k in range(1, m):
            sp = FamilySParams(3, m, k)
            if not sp.violations():
                assert gcd(k + m // 2, m) * 2 == gcd(k, m)
                assert (m // gcd(k, m)) % 2 == 1


def test_minus_one_not_a_q_minus_one_power():
    # -1 lies outside (M^x)^(q-1) at (3, 6, 2): exhaustive over M^x
    F = make_field(3, 6)
    powers = set(F.pow(F.units(), 8).tolist())
    assert F.neg(1) not in powers


def test_dickson_and_albert():
    pair, _ = dickson(3, 2, 1)
    g = pair.ctx.generator
    assert (pair.k, pair.l, pair.left, pair.right) == (0, 1, (1, 0, 0, g), (0, 1, 0, 0))
    f, P = albert(3, 3, 1)
    assert f.exponents() == [4] and P.family == "A"
    pair, P = albert(3, 6, 2)
    assert isinstance(pair.k, int) and P.n == 6
    with pytest.raises(FamilyConditionError):
        albert(3, 2, 1)


def test_zhou_pott_and_bh_conditions():
    with pytest.raises(FamilyConditionError, match="m/gcd"):
        zhou_pott(3, 2, 1, 1)
    pair, P = zhou_pott(3, 3, 1, 1)
    assert P.params["d"] == 1
    pair, P = bh(3, 6, 1)
    assert P.family == "BH"


def test_table2_constructors():
    f, _ = cm_dy(5)
    assert sorted(f.exponents()) == [2, 6, 10]
    f, _ = cm_dy(5, literal=True)
    assert sorted(f.exponents()) == [1, 6, 10]
    F = make_field(5, 4)
    f, _ = b4(5, 1, 2)
    a = F.generator
    coeff = {e: c for (c, i, j), e in zip(f.terms, f.exponents())}
    assert set(coeff) == {26, 250}
    assert coeff[26] == 1 and coeff[250] == F.neg(F.pow(a, 4))
    with pytest.raises(FamilyConditionError, match="m >= 3 odd"):
        cg(2)
    with pytest.raises(FamilyConditionError):
        b4(5, 1, 1)
    assert b4_violations(5, 1, 2) == []
    assert ganley(3)[1].n == 6
    assert zkw(3, 1, 2)[1].family == "ZKW"
    assert b3(7, 1, 1)[1].family == "B3"


def test_predicted_nuclei():
    _, P = family_s(p=3, m=6, k=2)
    assert predicted_nuclei("S", P.params) == (3, 9, 3)
    _, P = dickson(3, 2, 1)
    assert predicted_nuclei("D", P.params) == (3, 9, 3)
    _, P = albert(3, 3, 1)
    assert predicted_nuclei("A", P.params) == (3, 3, 3)


def test_count_bounds():
    lo, hi = family_s_count_bounds(3, 12)
    assert lo == pytest.approx(13 / 6) and hi == 26
    assert int(np.ceil(lo)) == 3
