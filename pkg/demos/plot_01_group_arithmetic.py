"""
Arithmetic in G_pi
==================

Elements are pairs (v, w) with v in F_p^n and w in Lambda^2 F_p^n.  The
generators x_1..x_n commute up to central wedges and their p-th powers land
on pi(v_i).
"""

import random

from multihol.pigroup import catalog, g_comm, g_mul, g_pow, verify_presentation

# case (b) at p = 3: pi sends v_1 to v_2 ^ v_3 and kills v_2, v_3
spec = catalog("b", 3)
print(spec.pi)
print("|G| =", spec.order)

x1, x2, x3 = (spec.generator(i) for i in range(3))
print("x1 x2      =", g_mul(spec, x1, x2))
print("x2 x1      =", g_mul(spec, x2, x1))
print("[x2, x3]   =", g_comm(spec, x2, x3))
print("x1^3       =", g_pow(spec, x1, 3))

# a random element raised to p lands in the centre, on pi of its image
rng = random.Random(0)
x = spec.random_element(rng)
print(x, "->", g_pow(spec, x, 3))

# the defining relations, checked one by one
for line in verify_presentation(spec).lines():
    print(line)
