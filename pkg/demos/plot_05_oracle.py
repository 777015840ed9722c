"""
A brute-force check at order p^3
================================

For n = 2 the group has order 27 or 125, small enough to build Aut(G), list
every equivariant gamma and test each regular subgroup for isomorphism.
"""

from multihol import oracle
from multihol.pigroup import catalog

for p in (3, 5):
    g = oracle.build_small_group(catalog("n2", p))
    aut = oracle.aut_group(g)
    gammas = oracle.enumerate_gamma(g, aut)
    print(f"p={p}: |G|={g.order}  |Aut|={aut.order}  gammas={len(gammas)}")
    x1, x2 = g.gens
    for gm in gammas:
        lam = g.coords[oracle.gamma_delta(g, aut, gm, x1, x2)][2]
        iso = oracle.isomorphic_to_g(g, oracle.circle_table(oracle.n_gamma(g, aut, gm)))
        print(f"   lambda={lam}  isomorphic to G: {iso}")
    print("   |T(G)| =", oracle.count_t(g, gammas, aut))
