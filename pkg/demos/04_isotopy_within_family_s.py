"""Orbits of a, the q-bar identification and the class census."""

from __future__ import annotations

from semifields import count_classes_family_s, make_field, orbit_of_a, qbar_isotopism

F = make_field(3, 6)
rep = orbit_of_a(3, 6, 2)
print("orbit of a = 1 (discrete logs):", sorted(int(F.log[a]) for a in rep.orbit))
for e in rep.entries[:4]:
    print(f"  a' = g^{int(F.log[e.a_prime])}: t={e.t} case={e.case} sign={e.sign} verified={e.iso.verified}")

iso, a2 = qbar_isotopism(3, 6, 2)
print("q-bar flip sends a = 1 to a' = g^%d, verified %s" % (F.log[a2], iso.verified))

census = count_classes_family_s(3, 6)
print(f"\n{census.count} classes, bounds {census.bounds}")
for c in census.classes:
    k, a = c["rep"]
    print(f"  representative k={k} a=g^{int(F.log[a])}: {len(c['members'])} members, "
          f"nuclei {c['nuclei']}, |C_P| = {c['centralizer']}")
