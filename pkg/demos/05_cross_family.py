"""Separating Family S from the older families, with labelled evidence."""

from __future__ import annotations

from semifields import albert, bh, certify, compare, dickson, dickson_reduction_q1, family_s, zhou_pott
from semifields.isotopy import Verdict

_, P = family_s(p=3, m=6, k=2)
certify(P, bruteforce=False)
for label, build in (("Dickson(3,6,1)", lambda: dickson(3, 6, 1)), ("Albert(3,12,4)", lambda: albert(3, 12, 4)),
                     ("BH(3,6,1)", lambda: bh(3, 6, 1)), ("ZP(3,6,2,5)", lambda: zhou_pott(3, 6, 2, 5))):
    v = compare(P, build()[1])
    print(f"S vs {label:15s} {v.verdict:13s} evidence ({v.evidence}) {Verdict.EVIDENCE_NAMES.get(v.evidence, '')}: "
          f"{v.reason}")

red = dickson_reduction_q1(3, 2)
print("\nq = 1 shape is isotopic to Dickson:", red.iso.verified, "bijectivity value", red.bijectivity_value)
