"""Two planarity certifiers and how they agree."""

from __future__ import annotations

import time

from semifields import BiprojPair, certify, cm_dy, family_s, is_planar_biproj, make_field

F = make_field(3, 6)
L = [int(a) for a in F.subfield(3).elements if a]
t0 = time.perf_counter()
print("all 26 a planar:", all(is_planar_biproj(family_s(p=3, m=6, k=2, a=a)[0]) for a in L),
      f"({time.perf_counter() - t0:.2f} s)")

_, P = family_s(p=3, m=6, k=2)
cert = certify(P)
print("certificate:", cert.to_dict(timings=True))

bad = BiprojPair(make_field(3, 2), 0, 1, (0, 1, 1, 1), (0, 1, 0, 1))
res = is_planar_biproj(bad, detail=True)
print("zero leading coefficients -> planar:", res.planar, "witness:", res.witness)

for literal in (False, True):
    f, Q = cm_dy(5, literal=literal)
    print("X^10 + X^6 - " + ("X" if literal else "X^2"), "over GF(3^5) planar:", certify(Q).planar)
