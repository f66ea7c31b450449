"""Nuclei by exact linear algebra and the torus centralizer."""

from __future__ import annotations

from semifields import albert, certify, centralizer_enumerate, dickson, family_s, nuclei_of

for label, (pair, P) in (("S(3,6,2)", family_s(p=3, m=6, k=2)), ("Dickson(3,2,1)", dickson(3, 2, 1)),
                         ("X^4 over GF(27)", albert(3, 3, 1))):
    certify(P)
    rep = nuclei_of(P)
    print(f"{label:16s} nuclei {rep.orders}  predicted {rep.prediction}  match {rep.match}")

_, P = family_s(p=3, m=6, k=2)
certify(P, bruteforce=False)
rep = centralizer_enumerate(P, audit=True)
print("\ncentralizer:", rep.to_dict())
