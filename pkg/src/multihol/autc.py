"""Aut^c(pi) = {alpha in GL(V) : pi alpha-hat = alpha pi}.

Generators come in two families per catalog case: one-parameter unipotents
spanning P and a reductive part Q (diagonal torus and, where present, a GL_2
block).  Exhaustive enumeration is only used at small p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BudgetExceeded, NotRankOne, Singular, UnknownLabel
from .fp import (DEFAULT_BUDGET, FpMatrix, batch_det, enumerate_matrix_batches, inverse,
                 nullspace, primitive_root, rank, row_space_basis)
from .pigroup import PiSpec, canonical_rank_one, catalog
from .wedge import batch_hat, induced_hat


@dataclass(frozen=True)
class AutcElement:
    alpha: FpMatrix

    @cached_property
    def hat(self) -> FpMatrix:
        return induced_hat(self.alpha)


@dataclass
class GeneratorSet:
    p_gens: list = field(default_factory=list)
    q_gens: list = field(default_factory=list)

    @property
    def all(self) -> list:
        return self.p_gens + self.q_gens

    def matrices(self) -> list[FpMatrix]:
        return [g.alpha for g in self.all]


def is_autc(spec: PiSpec, alpha: FpMatrix) -> bool:
    if alpha.det() == 0:
        raise Singular("alpha is not invertible")
    return spec.pi @ induced_hat(alpha) == alpha @ spec.pi


# -- catalog generators ----------------------------------------------------

def gl2_generators(p: int) -> list[np.ndarray]:
    g = primitive_root(p)
    return [np.array([[g, 0], [0, 1]]), np.array([[1, 1], [0, 1]]), np.array([[0, 1], [1, 0]])]


def _det2(a):
    return int(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def _unipotent(n, cells, p):
    """Identity plus each (row, col, sign) cell set to sign (parameter = 1)."""
    m = np.eye(n, dtype=np.int64)
    for i, j, s in cells:
        m[i, j] = s
    return FpMatrix(m, p)


def _block(n, head, a, p):
    """diag(head..., A) with the 2x2 block A in the last two slots."""
    m = np.zeros((n, n), dtype=np.int64)
    for i, h in enumerate(head):
        m[i, i] = h
    m[n - 2:, n - 2:] = a
    return FpMatrix(m, p)


# P parameters as lists of (row, col, sign) cells, 0-based
_P_CELLS = {
    "a": [[(0, 1, 1)], [(2, 1, 1)]],
    "b": [[(0, 1, 1)], [(0, 2, 1)]],
    "c": [[(0, 1, 1)], [(2, 1, 1)], [(3, 1, 1)]],
    "d": [[(0, 1, 1)], [(0, 2, 1)], [(1, 2, 1)], [(0, 3, 1)], [(1, 3, 1)]],
    # b, c, d with c at (1,4),(3,2) and d at (4,2) with -d at (1,3)
    "e": [[(0, 1, 1)], [(0, 3, 1), (2, 1, 1)], [(0, 2, -1), (3, 1, 1)]],
    "n2": [[(0, 1, 1)]],
}


def _q_generators(label, p):
    g = primitive_root(p)
    if label == "a":
        return [FpMatrix.diag([g, 1, 1], p), FpMatrix.diag([1, 1, g], p)]
    if label == "n2":
        return [FpMatrix.diag([g, 1], p)]
    out = []
    for a in gl2_generators(p):
        d = _det2(a)
        if label == "b":
            out.append(_block(3, [d], a, p))
        elif label == "c":
            out.append(_block(4, [1, 1], a, p))
        elif label == "d":
            out.append(_block(4, [d, 1], a, p))
        elif label == "e":
            out.append(_block(4, [d, 1], a, p))
    if label == "c":
        out.insert(0, FpMatrix.diag([g, 1, 1, 1], p))
    if label == "d":
        out.insert(0, FpMatrix.diag([1, g, 1, 1], p))
    return out


def _gl_generators(n, p):
    g = primitive_root(p)
    out = [FpMatrix.diag([g] + [1] * (n - 1), p), _unipotent(n, [(0, 1, 1)], p)]
    swap = np.eye(n, dtype=np.int64)
    swap[[0, 1]] = swap[[1, 0]]
    out.append(FpMatrix(swap, p))
    out.append(FpMatrix(np.roll(np.eye(n, dtype=np.int64), 1, axis=1), p))
    return out


def _catalog_generators(label, p):
    if label.startswith("zero"):
        n = int(label[-1])
        return GeneratorSet([], [AutcElement(m) for m in _gl_generators(n, p)])
    if label not in _P_CELLS:
        raise UnknownLabel(label)
    n = catalog(label, p).n
    p_gens = [AutcElement(_unipotent(n, cells, p)) for cells in _P_CELLS[label]]
    return GeneratorSet(p_gens, [AutcElement(m) for m in _q_generators(label, p)])


def generator_catalog(spec: PiSpec, budget: int = DEFAULT_BUDGET) -> GeneratorSet:
    """Generators of Aut^c(pi).

    Catalog labels use the parametrised P and Q families.  A custom rank-one
    pi is moved to its catalog form and the generators conjugated back; any
    other custom pi falls back to exhaustive enumeration when affordable.
    """
    if spec.label != "custom":
        return _catalog_generators(spec.label, spec.p)
    if not spec.pi.is_zero():
        try:
            label, m = canonical_rank_one(spec)
        except NotRankOne:
            label = None
        if label is not None:
            ref = _catalog_generators(label, spec.p)
            mi = inverse(m)

            def conj(gs):
                return [AutcElement(mi @ g.alpha @ m) for g in gs]
            return GeneratorSet(conj(ref.p_gens), conj(ref.q_gens))
    else:
        return GeneratorSet([], [AutcElement(m) for m in _gl_generators(spec.n, spec.p)])
    return GeneratorSet([], [AutcElement(m) for m in enumerate_autc(spec, budget)])


# -- exhaustive enumeration ------------------------------------------------

def _kernel_shape_mask(spec: PiSpec):
    """Zero first column below row 1 when ker(pi) = <e_2, ..., e_n>."""
    std = np.eye(spec.n, dtype=np.int64)[1:]
    kern = spec.kernel
    if len(kern) == spec.n - 1 and rank(FpMatrix(np.vstack(kern + list(std)), spec.p)) == spec.n - 1:
        return {(i, 0): 0 for i in range(1, spec.n)}
    return {}


def autc_batches(spec: PiSpec, budget: int = DEFAULT_BUDGET):
    """Yield stacks of all Aut^c(pi) members, searched over the kernel-stable shape."""
    p, n = spec.p, spec.n
    pi = spec.pi.a
    support = np.nonzero(pi.any(axis=0))[0]     # only these rows of alpha-hat meet pi
    for batch in enumerate_matrix_batches(n, n, p, _kernel_shape_mask(spec), budget):
        hats = batch_hat(batch, p, support)
        lhs = np.einsum("ic,kcd->kid", pi[:, support], hats) % p
        rhs = np.einsum("kij,jc->kic", batch, pi) % p
        batch = batch[(lhs == rhs).all(axis=(1, 2))]
        batch = batch[batch_det(batch, p) != 0]
        if len(batch):
            yield batch


def enumerate_autc(spec: PiSpec, budget: int = DEFAULT_BUDGET) -> list[FpMatrix]:
    return [FpMatrix(a, spec.p) for batch in autc_batches(spec, budget) for a in batch]


def closure(gens: list[FpMatrix], limit: int = 10**6) -> set:
    """All products of the generators, as matrix keys (breadth first)."""
    if not gens:
        return set()
    ident = FpMatrix.identity(gens[0].rows, gens[0].p)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = y.key()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        if len(seen) > limit:
            raise BudgetExceeded(len(seen), limit)
        frontier = nxt
    return set(seen)


# -- the equivariant-homomorphism check ------------------------------------

def p_family(spec: PiSpec) -> list[FpMatrix]:
    """Every element of the unipotent part P, from the parameter cells."""
    label = spec.label
    if label.startswith("zero"):
        return [FpMatrix.identity(spec.n, spec.p)]
    cells = _P_CELLS.get(label)
    if cells is None:
        raise UnknownLabel(label)
    p, n = spec.p, spec.n
    out = []
    for params in itertools.product(range(p), repeat=len(cells)):
        m = np.eye(n, dtype=np.int64)
        for t, group in zip(params, cells):
            for i, j, s in group:
                m[i, j] += s * t
        out.append(FpMatrix(m, p))
    return out


def _log(x: FpMatrix) -> np.ndarray:
    # every P here has N^3 = 0, so log(1 + N) = N - N^2/2
    p = x.p
    nmat = (x.a - np.eye(x.rows, dtype=np.int64)) % p
    n2 = nmat @ nmat % p
    assert not (n2 @ nmat % p).any()
    return (nmat - n2 * pow(2, -1, p)) % p


def _exp(a: np.ndarray, p: int) -> FpMatrix:
    return FpMatrix(np.eye(a.shape[0], dtype=np.int64) + a + (a @ a % p) * pow(2, -1, p), p)


def _direct_equivariant(spec, images, gens) -> bool:
    """gamma(e_i alpha) = alpha^-1 gamma(e_i) alpha for gamma given on the basis."""
    p, n = spec.p, spec.n

    def gamma(v):
        out = FpMatrix.identity(n, p)
        for c, img in zip(v, images):
            out = out @ (img ** int(c))
        return out

    for g in gens:
        gi = inverse(g)
        for i in range(n):
            if gamma(g.a[i]) != gi @ images[i] @ g:
                return False
    return True


def equivariant_p_homs(spec: PiSpec, gens: GeneratorSet | None = None) -> list[list[FpMatrix]]:
    """All equivariant homomorphisms V -> P, as lists of basis images.

    Writing gamma = exp(L), a homomorphism with commuting images is a linear
    map L: V -> Lie(P) with commuting values, and equivariance becomes
    L(e_i alpha) = alpha^-1 L(e_i) alpha.  The linear part is solved as a
    nullspace; commutativity and the group-level conditions are then checked
    on each solution.
    """
    p, n = spec.p, spec.n
    gens = gens or generator_catalog(spec)
    members = p_family(spec)
    logs = [_log(x).reshape(-1) for x in members]
    basis = row_space_basis(logs, p) if any(v.any() for v in logs) else []
    if not basis:
        return [[FpMatrix.identity(n, p)] * n]
    if p ** len(basis) != len(members):
        raise AssertionError("log(P) is not a subspace")
    lie = np.array(basis, dtype=np.int64).reshape(len(basis), n, n)
    d = len(basis)
    nu = n * d                                  # unknown c[i, k]: L(e_i) = sum_k c[i,k] lie[k]
    rows = []
    for g in gens.matrices():
        a, ai = g.a, inverse(g).a
        conj = np.einsum("ab,kbc,cd->kad", ai, lie, a) % p
        for i in range(n):
            block = np.zeros((n * n, nu), dtype=np.int64)
            for j in range(n):
                block[:, j * d:(j + 1) * d] += a[i, j] * lie.reshape(d, -1).T
            block[:, i * d:(i + 1) * d] -= conj.reshape(d, -1).T
            rows.append(block % p)
    sols = nullspace(FpMatrix(np.vstack(rows), p))
    found = []
    for coeffs in itertools.product(range(p), repeat=len(sols)):
        c = sum((k * s for k, s in zip(coeffs, sols)), np.zeros(nu, dtype=np.int64)) % p
        ls = [np.einsum("k,kab->ab", c[i * d:(i + 1) * d], lie) % p for i in range(n)]
        if any(((x @ y - y @ x) % p).any() for x in ls for y in ls):
            continue
        images = [_exp(x, p) for x in ls]
        if _direct_equivariant(spec, images, gens.matrices()):
            found.append(images)
    return found


def _exhaustive_homs(spec, gens, budget):
    """Belt-and-braces search over all of Aut^c(pi) (small p only)."""
    p, n = spec.p, spec.n
    ident = FpMatrix.identity(n, p)
    group = [m for m in enumerate_autc(spec, budget) if m ** p == ident]
    diag = [g for g in gens.matrices() if not (g.a - np.diag(np.diag(g.a))).any()]
    cands = []
    for i in range(n):
        ok = []
        for x in group:
            if all(x ** int(g.a[i, i]) == inverse(g) @ x @ g for g in diag):
                ok.append(x)
        cands.append(ok)
    total = int(np.prod([len(c) for c in cands]))
    if total > budget:
        raise BudgetExceeded(total, budget)
    found = []
    for images in itertools.product(*cands):
        if any(x @ y != y @ x for x in images for y in images):
            continue
        if _direct_equivariant(spec, list(images), gens.matrices()):
            found.append(list(images))
    return found


def check_no_equivariant_hom(spec: PiSpec, exhaustive: bool = False,
                             budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the trivial map is the only equivariant homomorphism V -> Aut^c(pi).

    The default search is over P-valued maps; ``exhaustive`` widens it to the
    whole of Aut^c(pi) by enumeration.
    """
    gens = generator_catalog(spec)
    homs = _exhaustive_homs(spec, gens, budget) if exhaustive else equivariant_p_homs(spec, gens)
    ident = FpMatrix.identity(spec.n, spec.p)
    return all(all(x == ident for x in images) for images in homs)
