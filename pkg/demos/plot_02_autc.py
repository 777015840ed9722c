"""
The group Aut^c(pi)
===================

Aut^c(pi) is the set of alpha in GL_n with pi alpha-hat = alpha pi.  For small
p it can be enumerated outright; for larger p we work from generators.
"""

from multihol.autc import closure, enumerate_autc, generator_catalog, is_autc
from multihol.fp import FpMatrix
from multihol.pigroup import catalog

spec = catalog("a", 3)
members = enumerate_autc(spec)
print("case a, p=3:", len(members), "elements")

gens = generator_catalog(spec)
print(len(gens.p_gens), "unipotent generators,", len(gens.q_gens), "torus generators")
print("closure matches enumeration:",
      closure(gens.matrices()) == {m.key() for m in members})

# the torus diag(s, 1, t) lies inside, diag(1, 2, 1) does not
print(is_autc(spec, FpMatrix.diag([2, 1, 2], 3)), is_autc(spec, FpMatrix.diag([1, 2, 1], 3)))

# at p = 5 and n = 4 the search space has 5^16 points, so only generators are used
big = catalog("e", 5)
print("case e, p=5:", len(generator_catalog(big).all), "generators")
