"""
Computing T(G)
==============

The admissible tau = 1 + 2 sigma in the commutant, together with their
composition law, give res(S'); with S trivial this is all of T(G).
"""

from multihol import holo
from multihol.pigroup import catalog

for label, p in [("a", 5), ("b", 3), ("b", 5), ("c", 5), ("d", 3), ("d", 5), ("e", 5)]:
    rep = holo.t_g_report(catalog(label, p))
    print(f"{label} p={p}: |T(G)| = {rep.t_order:3d}  {rep.t_structure:10s}  ok={rep.ok}")

# the tau's for case b at p = 5: scalars 1 + 2 lambda, with lambda = 2 missing
for adm in holo.admissible_taus(catalog("b", 5)):
    print(adm.tau.a[0, 0], adm.pair.eta.a[0, 0])

# the power map x -> x^kappa realises each scalar class
print(holo.power_map_check(catalog("b", 5)).ok)

# outside the classification the numbers are still produced, with no comparison
out = holo.t_g_report(catalog("e", 3))
print(out.t_structure, out.assumption_ok, out.checks)
