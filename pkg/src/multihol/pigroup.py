"""The class-two p-groups G_pi built from a linear map pi: V -> Lambda^2 V.

An element is stored in normal form x_1^{v_1} ... x_n^{v_n} * c with
0 <= v_i < p and c in G' = Lambda^2 V written additively.  Commutators of
generators land on wedge basis vectors, [x_j, x_k] = v_j ^ v_k for j < k, and
the p-th power of x_i is row i of pi.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Callable, Iterable

import numpy as np

from .errors import NotRankOne, ParseError, SpecMismatch, UnknownLabel
from .fp import FpMatrix, check_odd_prime, inverse, nullspace, rank, row_space_basis
from .wedge import decompose_two_vector, induced_hat, to_antisymmetric, wedge, wedge_basis

CASE_LABELS = ("a", "b", "c", "d", "e")
CATALOG_LABELS = CASE_LABELS + ("zero3", "zero4", "n2")


@dataclass(frozen=True)
class PiSpec:
    p: int
    n: int
    pi: FpMatrix
    label: str = "custom"

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.n < 2:
            raise SpecMismatch("need n >= 2")
        if self.pi.shape != (self.n, comb(self.n, 2)) or self.pi.p != self.p:
            raise SpecMismatch(f"pi must be an {self.n} x {comb(self.n, 2)} matrix mod {self.p}")

    @property
    def dim_wedge(self) -> int:
        return comb(self.n, 2)

    @property
    def order(self) -> int:
        return self.p ** (self.n + self.dim_wedge)

    @cached_property
    def pi_rows(self) -> tuple:
        return tuple(tuple(r) for r in self.pi.tolist())

    @cached_property
    def kernel(self) -> list[np.ndarray]:
        """Basis of ker(pi) as row vectors."""
        return nullspace(self.pi.T)

    def identity(self) -> "GElement":
        return GElement((0,) * self.n, (0,) * self.dim_wedge)

    def generator(self, i: int) -> "GElement":
        v = [0] * self.n
        v[i] = 1
        return GElement(tuple(v), (0,) * self.dim_wedge)

    def central(self, w) -> "GElement":
        return GElement((0,) * self.n, tuple(int(x) % self.p for x in w))

    def element(self, v, w=None) -> "GElement":
        w = (0,) * self.dim_wedge if w is None else w
        return GElement(tuple(int(x) % self.p for x in v), tuple(int(x) % self.p for x in w))

    def elements(self):
        """Every element, in lexicographic order of (v, w)."""
        import itertools
        for v in itertools.product(range(self.p), repeat=self.n):
            for w in itertools.product(range(self.p), repeat=self.dim_wedge):
                yield GElement(v, w)

    def random_element(self, rng: random.Random) -> "GElement":
        return GElement(tuple(rng.randrange(self.p) for _ in range(self.n)),
                        tuple(rng.randrange(self.p) for _ in range(self.dim_wedge)))


@dataclass(frozen=True)
class GElement:
    v: tuple
    w: tuple

    def __repr__(self):
        return f"GElement(v={list(self.v)}, w={list(self.w)})"


def catalog(label: str, p: int) -> PiSpec:
    """Built-in specs: the five rank-one cases, pi = 0 for n = 3, 4, and rank one at n = 2."""
    n = {"a": 3, "b": 3, "c": 4, "d": 4, "e": 4, "zero3": 3, "zero4": 4, "n2": 2}.get(label)
    if n is None:
        raise UnknownLabel(label)
    basis = wedge_basis(n)
    rows = np.zeros((n, basis.dim), dtype=np.int64)
    top = {
        "a": [(0, 1)], "b": [(1, 2)], "c": [(0, 1)], "d": [(2, 3)],
        "e": [(0, 1), (2, 3)], "n2": [(0, 1)], "zero3": [], "zero4": [],
    }[label]
    for pair in top:
        rows[0, basis.index[pair]] = 1
    return PiSpec(p, n, FpMatrix(rows, p), label)


# -- arithmetic ---------------------------------------------------------------

def _check(spec: PiSpec, *xs: GElement):
    for x in xs:
        if len(x.v) != spec.n or len(x.w) != spec.dim_wedge:
            raise SpecMismatch(f"element {x} does not belong to a group with n={spec.n}")


def g_mul(spec: PiSpec, x: GElement, y: GElement) -> GElement:
    _check(spec, x, y)
    p = spec.p
    w = [a + b for a, b in zip(x.w, y.w)]
    xv, yv = x.v, y.v
    # moving x_j^{y_j} left past x_k^{x_k} (j < k) costs [x_k, x_j]^{x_k y_j}
    for m, (j, k) in enumerate(wedge_basis(spec.n).pairs):
        w[m] -= xv[k] * yv[j]
    v = []
    for i in range(spec.n):
        s = xv[i] + yv[i]
        if s >= p:
            s -= p
            w = [a + b for a, b in zip(w, spec.pi_rows[i])]
        v.append(s)
    return GElement(tuple(v), tuple(a % p for a in w))


def _pow_with(mul, ident, x, k):
    result = ident
    base = x
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def g_inv(spec: PiSpec, x: GElement) -> GElement:
    _check(spec, x)
    # every element has order dividing p^2
    return _pow_with(lambda a, b: g_mul(spec, a, b), spec.identity(), x, spec.p ** 2 - 1)


def g_pow(spec: PiSpec, x: GElement, k: int) -> GElement:
    if k < 0:
        return g_pow(spec, g_inv(spec, x), -k)
    _check(spec, x)
    return _pow_with(lambda a, b: g_mul(spec, a, b), spec.identity(), x, k)


def g_comm(spec: PiSpec, x: GElement, y: GElement) -> GElement:
    """[x, y] = x^-1 y^-1 x y."""
    return g_mul(spec, g_inv(spec, g_mul(spec, y, x)), g_mul(spec, x, y))


def g_order(spec: PiSpec, x: GElement) -> int:
    ident = spec.identity()
    k, y = 1, x
    while y != ident:
        y = g_mul(spec, y, x)
        k += 1
    return k


def pi_apply(spec: PiSpec, v) -> tuple:
    return tuple(int(c) for c in (np.asarray(v, dtype=np.int64) @ spec.pi.a) % spec.p)


# -- presentation check -------------------------------------------------------

@dataclass
class CheckReport:
    title: str = ""
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list:
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def extend(self, other: "CheckReport"):
        self.checks.extend(other.checks)

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
                for name, ok, detail in self.checks]


def verify_presentation(spec: PiSpec,
                        mul: Callable[[PiSpec, GElement, GElement], GElement] | None = None) -> CheckReport:
    """Check the defining relations of G_pi against a multiplication routine.

    ``mul`` defaults to :func:`g_mul`; passing another routine lets the same
    relations be checked against an alternative (or deliberately broken) law.
    """
    mul = mul or g_mul
    p, n = spec.p, spec.n
    ident = spec.identity()

    def m(a, b):
        return mul(spec, a, b)

    def pw(a, k):
        return _pow_with(m, ident, a, k)

    def inv(a):
        return pw(a, p * p - 1)

    def comm(a, b):
        return m(inv(m(b, a)), m(a, b))

    report = CheckReport(f"presentation of G_pi ({spec.label}, p={p})")
    gens = [spec.generator(i) for i in range(n)]
    bad = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)
           if comm(comm(gens[i], gens[j]), gens[k]) != ident]
    report.add("[[x_i,x_j],x_k] = 1", not bad, f"failures {bad[:3]}" if bad else "")

    bad = [i for i in range(n) if pw(gens[i], p) != spec.central(spec.pi_rows[i])]
    report.add("x_i^p = pi(v_i)", not bad, f"failures at {bad}" if bad else "")

    central_ok = True
    for j in range(n):
        for k in range(n):
            c = comm(gens[j], gens[k])
            if any(m(c, g) != m(g, c) for g in gens):
                central_ok = False
    report.add("commutators central", central_ok)

    basis = wedge_basis(n)
    bad = []
    for mm in range(basis.dim):
        e = [0] * basis.dim
        e[mm] = 1
        if pw(spec.central(e), p) != ident:
            bad.append(mm)
    report.add("G' elementary abelian", not bad)

    bad = []
    for mm, (j, k) in enumerate(basis.pairs):
        e = [0] * basis.dim
        e[mm] = 1
        if comm(gens[j], gens[k]) != spec.central(e):
            bad.append((j + 1, k + 1))
    report.add("[x_j,x_k] = v_j^v_k", not bad, f"failures at {bad}" if bad else "")
    return report


# -- rank-one canonical forms -------------------------------------------------

def transport(spec_pi: FpMatrix, m: FpMatrix) -> FpMatrix:
    """Matrix of pi in the basis given by the rows of m."""
    return m @ spec_pi @ inverse(induced_hat(m))


def _in_span(v, basis, p):
    if not len(basis):
        return not np.any(np.asarray(v) % p)
    return rank(FpMatrix(np.vstack(list(basis) + [v]), p)) == rank(FpMatrix(np.vstack(basis), p))


def _solve_coords(rows, x, p):
    """Coordinates c with c @ rows = x for an invertible square ``rows``."""
    return (np.asarray(x, dtype=np.int64) @ inverse(FpMatrix(rows, p)).a) % p


def _ratio(x, y, p):
    """The scalar c with x = c * y (y nonzero)."""
    i = int(np.nonzero(y % p)[0][0])
    c = int(x[i]) * pow(int(y[i]), -1, p) % p
    if np.any((x - c * y) % p):
        raise NotRankOne("vectors are not proportional")
    return c


def _intersection(a_basis, b_basis, p):
    """Basis of span(a) & span(b) for row-vector bases."""
    if not len(a_basis) or not len(b_basis):
        return []
    stacked = FpMatrix(np.vstack(list(a_basis) + [(-np.asarray(b)) % p for b in b_basis]), p)
    a = np.vstack(a_basis)
    vecs = [(r[: len(a_basis)] @ a) % p for r in nullspace(stacked.T)]
    return row_space_basis(vecs, p)


def _complete_within(space, current, p):
    """A vector of ``space`` independent of ``current``."""
    for x in space:
        if not _in_span(x, list(current), p):
            return np.asarray(x, dtype=np.int64) % p
    raise NotRankOne("cannot extend basis inside the kernel")


def canonical_rank_one(spec: PiSpec) -> tuple[str, FpMatrix]:
    """Classify a rank-one pi for n in {3, 4}.

    Returns a catalog label and a change of basis m (new basis = rows of m)
    with ``transport(spec.pi, m) == catalog(label, p).pi``.  The label is
    decided by how the plane of the image 2-vector meets ker(pi), or by the
    image needing two wedges.
    """
    p, n = spec.p, spec.n
    if n not in (3, 4):
        raise NotRankOne(f"classification is only available for n = 3, 4 (got n={n})")
    r = rank(spec.pi)
    if r != 1:
        raise NotRankOne(f"pi has rank {r}")
    kernel = spec.kernel
    v1 = next(e for e in np.eye(n, dtype=np.int64) if not _in_span(e, kernel, p))
    omega = np.asarray(pi_apply(spec, v1), dtype=np.int64)
    pieces = decompose_two_vector(omega, n, p)

    if len(pieces) == 2:
        label = "e"
        # v2 = contraction of omega with the functional f, f(v1) = 1, f(ker) = 0
        f = _solve_coords(np.vstack(kernel + [v1]), np.eye(n, dtype=np.int64), p)[:, -1]
        v2 = (f @ to_antisymmetric(omega, n, p)) % p
        (v3, v4), = decompose_two_vector((omega - wedge(v1, v2, p)) % p, n, p)
        basis = [v1, v2, v3, v4]
    else:
        (a, b), = pieces
        plane = row_space_basis([a, b], p)
        inter = _intersection(plane, kernel, p)
        if len(inter) == 2:
            label = "b" if n == 3 else "d"
            basis = [v1, a, b] if n == 3 else [v1, _complete_within(kernel, [a, b], p), a, b]
        elif len(inter) == 1:
            label = "a" if n == 3 else "c"
            u1 = next(x for x in plane if not _in_span(x, kernel, p))
            k2 = inter[0]
            scale = _ratio(np.asarray(pi_apply(spec, u1), dtype=np.int64), wedge(u1, k2, p), p)
            basis = [u1, (scale * k2) % p]
            while len(basis) < n:
                basis.append(_complete_within(kernel, basis[1:], p))
        else:
            raise NotRankOne("image plane does not meet ker(pi)")
    m = FpMatrix(np.vstack(basis), p)
    if rank(m) != n or transport(spec.pi, m) != catalog(label, p).pi:
        raise NotRankOne("failed to transport pi to its canonical form")
    return label, m


# -- textual spec format ------------------------------------------------------

def parse_pi_spec(text: str) -> PiSpec:
    """Parse ``p n`` followed by n rows of C(n,2) integers."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty spec")
    try:
        head = [int(t) for t in lines[0].split()]
        if len(head) != 2:
            raise ParseError("first line must be 'p n'")
        p, n = head
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from exc
    if len(rows) != n or any(len(r) != comb(n, 2) for r in rows):
        raise ParseError(f"expected {n} rows of {comb(n, 2)} integers")
    try:
        return relabel(PiSpec(p, n, FpMatrix(rows, p), "custom"))
    except (ValueError, SpecMismatch) as exc:
        raise ParseError(str(exc)) from exc


def format_pi_spec(spec: PiSpec) -> str:
    lines = [f"{spec.p} {spec.n}"]
    lines += [" ".join(str(x) for x in row) for row in spec.pi.tolist()]
    return "\n".join(lines) + "\n"


def relabel(spec: PiSpec) -> PiSpec:
    """Attach the catalog label when pi is literally a catalog matrix."""
    for label in CATALOG_LABELS:
        try:
            ref = catalog(label, spec.p)
        except UnknownLabel:
            continue
        if ref.n == spec.n and ref.pi == spec.pi:
            return ref
    return spec


def all_vectors(n: int, p: int) -> Iterable[tuple]:
    import itertools
    return itertools.product(range(p), repeat=n)
