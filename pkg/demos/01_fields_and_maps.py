"""Finite fields, biprojective maps and their polarizations."""

from __future__ import annotations

import numpy as np

from semifields import family_s, make_field, polarize
from semifields.gf import is_square

F = make_field(3, 6)
print(F, "generator code", F.generator)
g = F.gen
print("g^28 lies in GF(27):", F.in_subfield((g ** 28).code, 3))
print("g is a square:", is_square(g))
for name, d in (("Fp", 1), ("E", 2), ("L", 3)):
    print(f"subfield {name} = GF(3^{d}) has {F.subfield(d).elements.size} elements")

pair, P = family_s(p=3, m=6, k=2)
print("\nFamily S pair:", pair.left, pair.right, "q =", pair.q, "r =", pair.r)
x, y, u, v = 5, 17, 101, 333
print("closed-form product (x,y)*(u,v):", pair.mult((x, y), (u, v)))
vx = np.concatenate([F.digits[x], F.digits[y]])
vu = np.concatenate([F.digits[u], F.digits[v]])
w = P.mult(vx, vu)
print("same product from the structure tensor:", (int(F.from_vec(w[:6])), int(F.from_vec(w[6:]))))
print("commutative:", P.is_commutative(), " tensor shape:", P.tensor.shape)
