"""Equivariant bilinear forms V x V -> Lambda^2 V.

A form is stored as a coefficient tensor T[i, j, m]: the coordinate of wedge
basis vector m in Delta(v_i, v_j).  Equivariance under alpha reads

    sum_{k,l} alpha[i,k] alpha[j,l] T[k,l,:] = T[i,j,:] @ alpha-hat

and is imposed only for a generating set of Aut^c(pi); the constraint is
linear in T, so it propagates to the generated group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .autc import GeneratorSet, generator_catalog
from .errors import DimMismatch, EmptyGenerators, LabelMismatch, NotInB
from .fp import FpMatrix, inv_mod, nullspace, rank
from .pigroup import GElement, PiSpec
from .wedge import induced_hat, wedge_basis

SYMMETRIES = ("none", "symmetric", "antisymmetric")


@dataclass(frozen=True, eq=False)
class BilinearForm:
    n: int
    p: int
    coeffs: np.ndarray
    symmetry: str = "none"

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.p
        if c.shape != (self.n, self.n, comb(self.n, 2)):
            raise DimMismatch(f"coefficient tensor has shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        swapped = c.transpose(1, 0, 2)
        if self.symmetry == "symmetric" and (c != swapped).any():
            raise ValueError("form is not symmetric")
        if self.symmetry == "antisymmetric" and (c != (-swapped) % self.p).any():
            raise ValueError("form is not antisymmetric")

    def __call__(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("i,j,ijm->m", u, v, self.coeffs) % self.p

    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        sym = self.symmetry if self.symmetry == other.symmetry else "none"
        return BilinearForm(self.n, self.p, self.coeffs + other.coeffs, sym)

    def scale(self, c: int) -> "BilinearForm":
        return BilinearForm(self.n, self.p, self.coeffs * int(c), self.symmetry)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.p == other.p \
            and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs.tobytes()))

    def transformed(self, eta: FpMatrix, zeta: FpMatrix) -> "BilinearForm":
        """(u, v) -> Delta(u eta^-1, v eta^-1) zeta."""
        ei = eta.inverse().a
        t = np.einsum("ik,jl,klm->ijm", ei, ei, self.coeffs) % self.p
        return BilinearForm(self.n, self.p, t @ zeta.a, self.symmetry)


@dataclass
class FormSpace:
    basis: list
    symmetry: str

    @property
    def dim(self) -> int:
        return len(self.basis)


def zero_form(spec: PiSpec) -> BilinearForm:
    return BilinearForm(spec.n, spec.p, np.zeros((spec.n, spec.n, spec.dim_wedge), dtype=np.int64))


# -- constraint assembly ---------------------------------------------------

def _reps(n, symmetry):
    if symmetry == "symmetric":
        return [(i, j) for i in range(n) for j in range(i, n)]
    if symmetry == "antisymmetric":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if symmetry == "none":
        return [(i, j) for i in range(n) for j in range(n)]
    raise ValueError(f"unknown symmetry {symmetry!r}")


def expansion(n: int, c: int, symmetry: str) -> np.ndarray:
    """Matrix taking free unknowns (one C-block per representative pair) to the full tensor."""
    reps = _reps(n, symmetry)
    e = np.zeros((n * n * c, len(reps) * c), dtype=np.int64)
    for r, (i, j) in enumerate(reps):
        for m in range(c):
            e[(i * n + j) * c + m, r * c + m] = 1
            if symmetry == "symmetric" and i != j:
                e[(j * n + i) * c + m, r * c + m] = 1
            elif symmetry == "antisymmetric":
                e[(j * n + i) * c + m, r * c + m] = -1
    return e


def assemble_system(spec: PiSpec, gens: GeneratorSet | list, symmetry: str) -> FpMatrix:
    mats = gens.matrices() if isinstance(gens, GeneratorSet) else list(gens)
    if not mats:
        raise EmptyGenerators("no generators supplied")
    n, c, p = spec.n, spec.dim_wedge, spec.p
    reps = _reps(n, symmetry)
    exp = expansion(n, c, symmetry)
    keep = np.array([(i * n + j) * c + m for i, j in reps for m in range(c)], dtype=np.intp)
    blocks = []
    for g in mats:
        a = g.a
        op = np.kron(np.kron(a, a), np.eye(c, dtype=np.int64)) \
            - np.kron(np.eye(n * n, dtype=np.int64), induced_hat(g).a.T)
        blocks.append((op[keep] % p) @ exp % p)
    return FpMatrix(np.vstack(blocks), p)


def solve_forms(spec: PiSpec, symmetry: str, gens: GeneratorSet | None = None) -> FormSpace:
    gens = gens or generator_catalog(spec)
    system = assemble_system(spec, gens, symmetry)
    exp = expansion(spec.n, spec.dim_wedge, symmetry)
    shape = (spec.n, spec.n, spec.dim_wedge)
    basis = [BilinearForm(spec.n, spec.p, (exp @ x % spec.p).reshape(shape), symmetry)
             for x in nullspace(system)]
    return FormSpace(basis, symmetry)


def solve_S(spec: PiSpec, gens: GeneratorSet | None = None) -> FormSpace:
    return solve_forms(spec, "symmetric", gens)


def solve_Sprime(spec: PiSpec, gens: GeneratorSet | None = None) -> FormSpace:
    return solve_forms(spec, "antisymmetric", gens)


def is_equivariant(form: BilinearForm, alpha: FpMatrix) -> bool:
    a = alpha.a
    lhs = np.einsum("ik,jl,klm->ijm", a, a, form.coeffs) % form.p
    return bool((lhs == form.coeffs @ induced_hat(alpha).a % form.p).all())


def span_rank(forms: list[BilinearForm]) -> int:
    if not forms:
        return 0
    return rank(FpMatrix(np.vstack([f.vector() for f in forms]), forms[0].p))


# -- named forms -----------------------------------------------------------

def delta_sigma(spec: PiSpec, sigma: FpMatrix) -> BilinearForm:
    """(u, v) -> (u ^ v) sigma."""
    n, c = spec.n, spec.dim_wedge
    if sigma.shape != (c, c):
        raise DimMismatch(f"sigma must be {c} x {c}")
    t = np.zeros((n, n, c), dtype=np.int64)
    for m, (j, k) in enumerate(wedge_basis(n).pairs):
        t[j, k] = sigma.a[m]
        t[k, j] = -sigma.a[m]
    return BilinearForm(n, spec.p, t, "antisymmetric")


def delta_lambda(spec: PiSpec, lam: int) -> BilinearForm:
    return delta_sigma(spec, FpMatrix.identity(spec.dim_wedge, spec.p).scale(lam))


def star_sigma(p: int, kappa: int) -> FpMatrix:
    """Endomorphism of Lambda^2 F_p^4 with Delta_[star_sigma] = Delta*_[kappa]."""
    s = np.diag([0, -1, -1, -1, -1, 0]).astype(np.int64)
    s[0, 5] = s[5, 0] = 1
    return FpMatrix(s * kappa, p)


def delta_star(spec: PiSpec, kappa: int) -> BilinearForm:
    if spec.label != "e":
        raise LabelMismatch(f"Delta* is defined for case e, not {spec.label!r}")
    return delta_sigma(spec, star_sigma(spec.p, kappa))


def sigma_of(form: BilinearForm) -> FpMatrix:
    """Read sigma back off an antisymmetric form (rows are Delta(v_j, v_k))."""
    rows = [form.coeffs[j, k] for j, k in wedge_basis(form.n).pairs]
    return FpMatrix(np.array(rows, dtype=np.int64), form.p)


def split(form: BilinearForm) -> tuple[BilinearForm, BilinearForm]:
    half = inv_mod(2, form.p)
    c, ct = form.coeffs, form.coeffs.transpose(1, 0, 2)
    sym = BilinearForm(form.n, form.p, (c + ct) * half, "symmetric")
    anti = BilinearForm(form.n, form.p, (c - ct) * half, "antisymmetric")
    return sym, anti


# -- from forms to maps gamma ----------------------------------------------

class DeltaGamma:
    """gamma(y): x -> x * Delta(x mod G', y mod G'), an automorphism of G_pi."""

    def __init__(self, spec: PiSpec, form: BilinearForm):
        self.spec = spec
        self.form = form

    def __call__(self, y: GElement):
        return lambda x: self.apply(y, x)

    def apply(self, y: GElement, x: GElement) -> GElement:
        shift = self.form(x.v, y.v)
        p = self.spec.p
        return GElement(x.v, tuple(int(a + b) % p for a, b in zip(x.w, shift)))


def delta_to_gamma(spec: PiSpec, form: BilinearForm, gens: GeneratorSet | None = None) -> DeltaGamma:
    gens = gens or generator_catalog(spec)
    for g in gens.matrices():
        if not is_equivariant(form, g):
            raise NotInB("form is not equivariant under Aut^c(pi)")
    return DeltaGamma(spec, form)
