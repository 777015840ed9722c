"""Exact arithmetic and linear algebra over the prime field F_p.

Matrices are small (dimension at most 6, or a few dozen for the constraint
systems), so everything here is plain Gaussian elimination on int64 numpy
arrays reduced mod p after every operation.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, DimMismatch, ModulusMismatch, Singular, ZeroInverse

DEFAULT_BUDGET = 10**8


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_odd_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 3 or not is_prime(int(p)):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")
    return int(p)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    check_odd_prime(p)
    q = p - 1
    factors = [d for d in range(2, q + 1) if q % d == 0 and is_prime(d)]
    for g in range(2, p):
        if all(pow(g, q // f, p) != 1 for f in factors):
            return g
    return 1  # unreachable for odd p


class FpScalar:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = int(p)
        self.value = int(value) % self.p

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * fp_inv(FpScalar(o, self.p))

    def __pow__(self, k: int):
        if k < 0:
            return fp_inv(self) ** (-k)
        return FpScalar(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpScalar({self.value}, {self.p})"


def fp_inv(a: FpScalar) -> FpScalar:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return FpScalar(pow(a.value, -1, a.p), a.p)


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


class FpMatrix:
    """Immutable matrix over F_p backed by a read-only int64 array."""

    __slots__ = ("a", "p", "_hash")

    def __init__(self, entries, p: int):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DimMismatch("matrices must have positive dimensions")
        arr %= p
        arr.setflags(write=False)
        self.a = arr
        self.p = int(p)
        self._hash = None

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def diag(cls, values: Sequence[int], p: int) -> "FpMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.int64)), p)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, idx):
        out = self.a[idx]
        return int(out) if np.ndim(out) == 0 else out

    def _check(self, other: "FpMatrix"):
        if not isinstance(other, FpMatrix):
            raise TypeError(f"expected FpMatrix, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimMismatch(f"{self.shape} + {other.shape}")
        return FpMatrix(self.a + other.a, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimMismatch(f"{self.shape} - {other.shape}")
        return FpMatrix(self.a - other.a, self.p)

    def __neg__(self):
        return FpMatrix(-self.a, self.p)

    def scale(self, c) -> "FpMatrix":
        if isinstance(c, FpScalar):
            if c.p != self.p:
                raise ModulusMismatch(f"mod {self.p} vs mod {c.p}")
            c = c.value
        return FpMatrix(self.a * int(c), self.p)

    def __pow__(self, k: int) -> "FpMatrix":
        if k < 0:
            return inverse(self) ** (-k)
        result = FpMatrix.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.a.T, self.p)

    def is_zero(self) -> bool:
        return not self.a.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.a, np.eye(self.rows, dtype=np.int64))

    def tolist(self):
        return self.a.tolist()

    def key(self) -> tuple:
        return tuple(self.a.ravel().tolist())

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.shape, self.a.tobytes()))
        return self._hash

    def __repr__(self):
        return f"FpMatrix({self.a.tolist()}, p={self.p})"

    def det(self) -> FpScalar:
        return det(self)

    def inverse(self) -> "FpMatrix":
        return inverse(self)

    def rank(self) -> int:
        return rank(self)


def mat_mul(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    a._check(b)
    if a.cols != b.rows:
        raise DimMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return FpMatrix((a.a @ b.a) % a.p, a.p)


def rref(m: FpMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    p = m.p
    r = m.a.copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, p)) % p
        others = np.nonzero(r[:, col])[0]
        for i in others:
            if i != row:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: FpMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: FpMatrix) -> list[np.ndarray]:
    """Canonical basis of {x : m x = 0}, one vector per free column."""
    r, pivots = rref(m)
    p = m.p
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = np.zeros(m.cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-r[i, f]) % p
        basis.append(x)
    return basis


def row_space_basis(vectors: Iterable[Sequence[int]], p: int) -> list[np.ndarray]:
    rows = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not rows:
        return []
    r, pivots = rref(FpMatrix(np.vstack(rows), p))
    return [r[i].copy() for i in range(len(pivots))]


def det(m: FpMatrix) -> FpScalar:
    if m.rows != m.cols:
        raise DimMismatch(f"determinant of non-square {m.shape}")
    p = m.p
    r = m.a.copy()
    n = m.rows
    d = 1
    for col in range(n):
        nz = np.nonzero(r[col:, col])[0]
        if nz.size == 0:
            return FpScalar(0, p)
        piv = col + int(nz[0])
        if piv != col:
            r[[col, piv]] = r[[piv, col]]
            d = -d
        d = d * int(r[col, col]) % p
        inv = pow(int(r[col, col]), -1, p)
        for i in range(col + 1, n):
            if r[i, col]:
                r[i] = (r[i] - (r[i, col] * inv % p) * r[col]) % p
    return FpScalar(d, p)


def inverse(m: FpMatrix) -> FpMatrix:
    if m.rows != m.cols:
        raise DimMismatch(f"inverse of non-square {m.shape}")
    n = m.rows
    aug = FpMatrix(np.hstack([m.a, np.eye(n, dtype=np.int64)]), m.p)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is not invertible")
    return FpMatrix(r[:, n:], m.p)


def solve(m: FpMatrix, b: Sequence[int]) -> np.ndarray | None:
    """One solution x of m x = b, or None."""
    col = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = FpMatrix(np.hstack([m.a, col]), m.p)
    r, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, -1]
    return x


# -- bounded enumeration ----------------------------------------------------

def _free_cells(rows: int, cols: int, fixed: Mapping[tuple[int, int], int] | None):
    fixed = dict(fixed or {})
    for (i, j) in fixed:
        if not (0 <= i < rows and 0 <= j < cols):
            raise DimMismatch(f"masked cell {(i, j)} outside {rows}x{cols}")
    return [(i, j) for i in range(rows) for j in range(cols) if (i, j) not in fixed], fixed


def enumeration_count(rows: int, cols: int, p: int, shape_mask=None) -> int:
    free, _ = _free_cells(rows, cols, shape_mask)
    return p ** len(free)


def enumerate_matrix_batches(rows: int, cols: int, p: int, shape_mask=None,
                             budget: int = DEFAULT_BUDGET,
                             chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield arrays of shape (k, rows, cols) covering the family in lexicographic order.

    ``shape_mask`` maps (row, col) -> fixed value; all other cells range over F_p.
    """
    free, fixed = _free_cells(rows, cols, shape_mask)
    total = p ** len(free)
    if total > budget:
        raise BudgetExceeded(total, budget)
    base = np.zeros((rows, cols), dtype=np.int64)
    for (i, j), val in fixed.items():
        base[i, j] = val % p
    fi = np.array([c[0] for c in free], dtype=np.intp)
    fj = np.array([c[1] for c in free], dtype=np.intp)
    weights = p ** np.arange(len(free) - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        out = np.broadcast_to(base, (idx.size, rows, cols)).copy()
        if len(free):
            digits = (idx[:, None] // weights[None, :]) % p
            out[:, fi, fj] = digits
        yield out


def enumerate_matrices(rows: int, cols: int, p: int, shape_mask=None,
                       budget: int = DEFAULT_BUDGET) -> Iterator[FpMatrix]:
    for batch in enumerate_matrix_batches(rows, cols, p, shape_mask, budget):
        for arr in batch:
            yield FpMatrix(arr, p)


# -- batched helpers for vectorised searches ---------------------------------

@lru_cache(maxsize=None)
def _perm_signs(n: int):
    perms = list(itertools.permutations(range(n)))
    signs = []
    for perm in perms:
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        signs.append(-1 if inv % 2 else 1)
    return np.array(perms, dtype=np.intp), np.array(signs, dtype=np.int64)


def batch_det(arr: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of n x n matrices (Leibniz, n <= 6)."""
    n = arr.shape[-1]
    perms, signs = _perm_signs(n)
    total = np.zeros(arr.shape[0], dtype=np.int64)
    rows = np.arange(n)
    for perm, sign in zip(perms, signs):
        term = np.ones(arr.shape[0], dtype=np.int64)
        for i, j in zip(rows, perm):
            term = term * arr[:, i, j] % p
        total = (total + sign * term) % p
    return total
