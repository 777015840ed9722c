"""Brute-force ground truth for groups of order p^3 (n = 2).

Everything here works on explicit tables: the multiplication table of G,
automorphisms as permutations of element indices, and the candidate maps
gamma: G -> Aut(G).  Nothing from the forms/holo pipeline is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, TooLarge
from .fp import DEFAULT_BUDGET
from .pigroup import PiSpec, g_mul


@dataclass
class SmallGroup:
    spec: PiSpec
    elements: list
    mult: np.ndarray
    inv: np.ndarray
    gens: tuple
    coords: np.ndarray          # (order, 3): v1, v2, w for each index

    @property
    def order(self) -> int:
        return len(self.elements)


def build_small_group(spec: PiSpec) -> SmallGroup:
    if spec.n != 2 or spec.p > 5:
        raise TooLarge(f"oracle handles n = 2 and p <= 5 only (got n={spec.n}, p={spec.p})")
    elems = list(spec.elements())
    index = {x: i for i, x in enumerate(elems)}
    size = len(elems)
    mult = np.empty((size, size), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            mult[i, j] = index[g_mul(spec, x, y)]
    ident = index[spec.identity()]
    if ident != 0 or not (mult[0] == np.arange(size)).all() or not (mult[:, 0] == np.arange(size)).all():
        raise AssertionError("identity row/column is not the identity permutation")
    left = mult[mult[:, :, None], np.arange(size)[None, None, :]]     # (ab)c
    right = mult[np.arange(size)[:, None, None], mult[None, :, :]]    # a(bc)
    if not (left == right).all():
        raise AssertionError("multiplication table is not associative")
    inv = np.argmax(mult == 0, axis=1)
    if not (mult[np.arange(size), inv] == 0).all():
        raise AssertionError("missing inverses")
    gens = (index[spec.generator(0)], index[spec.generator(1)])
    coords = np.array([list(x.v) + list(x.w) for x in elems], dtype=np.int64)
    return SmallGroup(spec, elems, mult, inv, gens, coords)


# -- generic table helpers -------------------------------------------------

def _power_table(mult: np.ndarray, top: int) -> np.ndarray:
    """pw[x, k] = x^k for 0 <= k <= top."""
    size = mult.shape[0]
    pw = np.zeros((size, top + 1), dtype=np.int64)
    for k in range(1, top + 1):
        pw[:, k] = mult[pw[:, k - 1], np.arange(size)]
    return pw


def _inverses(mult: np.ndarray, ident: int) -> np.ndarray:
    return np.argmax(mult == ident, axis=1)


def presentation_images(g: SmallGroup, table: np.ndarray, ident: int, first_only: bool = False,
                        bijective: bool = True, orders_from=None):
    """Pairs (a, b) in the group ``table`` satisfying the relations of G.

    Relations: c = [a, b] central in <a, b>, c^p = 1, a^p = c^pi_1, b^p = c^pi_2.
    Returns (a, b, phi) with phi[x] the image of element x of G under
    x1 -> a, x2 -> b; with ``bijective`` only isomorphisms onto the table are kept.
    """
    p = g.spec.p
    pi1, pi2 = int(g.spec.pi.a[0, 0]), int(g.spec.pi.a[1, 0])
    size = table.shape[0]
    inv = _inverses(table, ident)
    pw = _power_table(table, p * p)
    allb = np.arange(size)
    order_a = order_b = None
    if orders_from is not None:
        ords = element_orders(pw, ident)
        order_a, order_b = orders_from
    else:
        ords = None
    v1, v2, w = g.coords[:, 0], g.coords[:, 1], g.coords[:, 2]
    found = []
    for a in range(size):
        if ords is not None and ords[a] != order_a:
            continue
        bs = allb if ords is None else allb[ords == order_b]
        cs = table[table[inv[a], inv[bs]], table[a, bs]]
        ok = (table[cs, a] == table[a, cs]) & (table[cs, bs] == table[bs, cs])
        ok &= pw[cs, p] == ident
        ok &= pw[a, p] == pw[cs, pi1]
        ok &= pw[bs, p] == pw[cs, pi2]
        for b, c in zip(bs[ok], cs[ok]):
            phi = table[table[pw[a, v1], pw[b, v2]], pw[c, w]]
            if bijective and len(np.unique(phi)) != g.order:
                continue
            x1, x2 = g.gens
            if not ((phi[g.mult[x1]] == table[phi[x1], phi]).all()
                    and (phi[g.mult[x2]] == table[phi[x2], phi]).all()):
                continue
            found.append((a, int(b), phi))
            if first_only:
                return found
    return found


def element_orders(pw: np.ndarray, ident: int) -> np.ndarray:
    hits = pw[:, 1:] == ident
    return np.argmax(hits, axis=1) + 1


# -- automorphisms ---------------------------------------------------------

@dataclass
class AutGroup:
    perms: np.ndarray           # (m, |G|): perms[i][x] = x^alpha_i
    table: np.ndarray           # table[i, j] = index of alpha_i alpha_j (i first)
    inv: np.ndarray
    identity: int
    gens: list

    @property
    def order(self) -> int:
        return len(self.perms)


def enumerate_aut(g: SmallGroup) -> np.ndarray:
    """Automorphisms as permutations (array of shape (|Aut|, |G|))."""
    found = presentation_images(g, g.mult, 0)
    return np.array([phi for _, _, phi in found], dtype=np.int64)


def _generating_subset(table, ident):
    gens, reach = [], {ident}
    for i in range(table.shape[0]):
        if i in reach:
            continue
        gens.append(i)
        frontier = list(reach)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(table[x, s])
                    if y not in reach:
                        reach.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def aut_group(g: SmallGroup, perms: np.ndarray | None = None) -> AutGroup:
    perms = enumerate_aut(g) if perms is None else perms
    keys = {row.tobytes(): i for i, row in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        comp = perms[:, perms[i]]           # row j: apply alpha_i then alpha_j
        for j in range(m):
            table[i, j] = keys[comp[j].tobytes()]
    ident = keys[np.arange(g.order, dtype=np.int64).tobytes()]
    return AutGroup(perms, table, _inverses(table, ident), ident, _generating_subset(table, ident))


# -- equivariant anti-homomorphisms ----------------------------------------

@dataclass
class GammaMap:
    values: np.ndarray          # values[x] = index in Aut of gamma(x)


def enumerate_gamma(g: SmallGroup, aut: AutGroup, budget: int = DEFAULT_BUDGET) -> list[GammaMap]:
    """All gamma with gamma(xy) = gamma(y) gamma(x) and gamma(x^beta) = gamma(x)^beta.

    delta(x) = gamma(x)^-1 is then a homomorphism G -> Aut(G), so candidates
    are pairs (delta(x1), delta(x2)) satisfying the relations of G.
    """
    if aut.order ** 2 > budget:
        raise BudgetExceeded(aut.order ** 2, budget)
    found = presentation_images(g, aut.table, aut.identity, bijective=False)
    x1, x2 = g.gens
    T, ai, perms = aut.table, aut.inv, aut.perms
    out = []
    for _, _, delta in found:
        good = all(delta[perms[b, x]] == T[T[ai[b], delta[x]], b]
                   for b in aut.gens for x in (x1, x2))
        if not good:
            continue
        gamma = ai[delta]
        # full checks: anti-homomorphism on all pairs, equivariance under all of Aut
        if not (gamma[g.mult] == T[gamma[None, :], gamma[:, None]]).all():
            continue
        if not (gamma[perms] == T[T[ai[:, None], gamma[None, :]], np.arange(aut.order)[:, None]]).all():
            continue
        out.append(GammaMap(gamma))
    return out


# -- the regular subgroups N_gamma -----------------------------------------

def n_gamma(g: SmallGroup, aut: AutGroup, gamma: GammaMap) -> np.ndarray:
    """perm[y, x] = x^{gamma(y)} y, the permutation gamma(y) rho(y)."""
    return g.mult[aut.perms[gamma.values], np.arange(g.order)[:, None]]


def check_regular_normal(g: SmallGroup, aut: AutGroup, perm: np.ndarray) -> bool:
    size = g.order
    if len(np.unique(perm[:, 0])) != size:
        return False
    # closed under composition: perm_y then perm_z is perm_{perm_z(y)}
    for y in range(size):
        if not (perm[:, perm[y]] == perm[perm[:, y]]).all():
            return False
    # normalised by translations by generators and by automorphism generators
    movers = [g.mult[:, s] for s in g.gens] + [aut.perms[b] for b in aut.gens]
    for s in movers:
        s_inv = np.argsort(s)
        conj = s[perm[:, s_inv]]            # apply s^-1, perm_y, s
        if not (conj == perm[conj[:, 0]]).all():
            return False
    return True


def circle_table(perm: np.ndarray) -> np.ndarray:
    """y o z = image of y under perm_z."""
    return perm.T.copy()


def isomorphic_to_g(g: SmallGroup, circ: np.ndarray) -> bool:
    pw = _power_table(g.mult, g.spec.p ** 2)
    ords = element_orders(pw, 0)
    want = (int(ords[g.gens[0]]), int(ords[g.gens[1]]))
    return bool(presentation_images(g, circ, 0, first_only=True, orders_from=want))


def count_t(g: SmallGroup, gammas: list[GammaMap], aut: AutGroup | None = None) -> int:
    aut = aut or aut_group(g)
    total = 0
    for gamma in gammas:
        perm = n_gamma(g, aut, gamma)
        if not check_regular_normal(g, aut, perm):
            raise AssertionError("N_gamma is not a normal regular subgroup")
        if isomorphic_to_g(g, circle_table(perm)):
            total += 1
    return total


def gamma_delta(g: SmallGroup, aut: AutGroup, gamma: GammaMap, x: int, y: int) -> int:
    """x^-1 x^{gamma(y)}, an element of the centre."""
    return int(g.mult[g.inv[x], aut.perms[gamma.values[y], x]])


@dataclass
class OracleResult:
    p: int
    group_order: int
    aut_order: int
    gammas: int
    t_order: int


def run_oracle(spec: PiSpec) -> OracleResult:
    g = build_small_group(spec)
    aut = aut_group(g)
    gammas = enumerate_gamma(g, aut)
    return OracleResult(spec.p, g.order, aut.order, len(gammas), count_t(g, gammas, aut))
