"""
Equivariant bilinear forms
==========================

Symmetric and antisymmetric forms V x V -> Lambda^2 V that commute with
Aut^c(pi) are found as a nullspace over F_p.
"""

import numpy as np

from multihol import forms
from multihol.pigroup import catalog

for label, p in [("a", 5), ("b", 3), ("c", 5), ("d", 3), ("e", 5)]:
    spec = catalog(label, p)
    s = forms.solve_S(spec).dim
    sp = forms.solve_Sprime(spec).dim
    print(f"{label} p={p}: dim S = {s}, dim S' = {sp}")

# in case e the second antisymmetric form swaps v1^v2 with v3^v4
spec = catalog("e", 5)
star = forms.delta_star(spec, 1)
v = np.eye(4, dtype=np.int64)
print("Delta*(v1, v2) =", star(v[0], v[1]))
print(forms.star_sigma(5, 1))

# any form splits into symmetric and antisymmetric parts
sym, anti = forms.split(forms.delta_lambda(spec, 2))
print("symmetric part zero:", sym.is_zero())
