"""Exterior square of V = F_p^n.

The basis of Lambda^2 V is v_j ^ v_k for j < k in lexicographic order, so for
n = 4 it reads v1^v2, v1^v3, v1^v4, v2^v3, v2^v4, v3^v4.  Indices are 0-based
in code.  Maps act on row vectors from the right: x^alpha = x @ alpha, and the
row of alpha-hat at (j, k) holds the coordinates of (v_j alpha) ^ (v_k alpha).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .errors import DimMismatch
from .fp import FpMatrix, inv_mod


@dataclass(frozen=True)
class WedgeBasis:
    n: int
    pairs: tuple = field(init=False)
    index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        pairs = tuple((j, k) for j in range(self.n) for k in range(j + 1, self.n))
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "index", {pk: m for m, pk in enumerate(pairs)})

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def label(self, m: int) -> str:
        j, k = self.pairs[m]
        return f"v{j + 1}^v{k + 1}"


@lru_cache(maxsize=None)
def wedge_basis(n: int) -> WedgeBasis:
    return WedgeBasis(n)


@lru_cache(maxsize=None)
def _pair_arrays(n: int):
    pairs = wedge_basis(n).pairs
    j = np.array([a for a, _ in pairs], dtype=np.intp)
    k = np.array([b for _, b in pairs], dtype=np.intp)
    return j, k


def basis_vector(n: int, j: int, k: int, p: int) -> np.ndarray:
    """Coordinates of v_j ^ v_k (0-based, any order) in the wedge basis."""
    out = np.zeros(comb(n, 2), dtype=np.int64)
    if j == k:
        return out
    sign = 1
    if j > k:
        j, k, sign = k, j, -1
    out[wedge_basis(n).index[(j, k)]] = sign % p
    return out


def wedge(u: Sequence[int], v: Sequence[int], p: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.ndim != 1:
        raise DimMismatch(f"wedge of vectors with shapes {u.shape} and {v.shape}")
    j, k = _pair_arrays(u.size)
    return (u[j] * v[k] - u[k] * v[j]) % p


def induced_hat(alpha: FpMatrix) -> FpMatrix:
    n = alpha.rows
    if alpha.cols != n:
        raise DimMismatch(f"induced map needs a square matrix, got {alpha.shape}")
    return FpMatrix(batch_hat(alpha.a[None], alpha.p)[0], alpha.p)


def batch_hat(arr: np.ndarray, p: int, rows=None) -> np.ndarray:
    """alpha-hat for a stack of n x n matrices, shape (k, C, C).

    ``rows`` restricts the output to those wedge-basis rows.
    """
    n = arr.shape[-1]
    j, k = _pair_arrays(n)
    rj = arr[:, j if rows is None else j[rows], :]
    rk = arr[:, k if rows is None else k[rows], :]
    return (rj[:, :, j] * rk[:, :, k] - rj[:, :, k] * rk[:, :, j]) % p


def to_antisymmetric(w: Sequence[int], n: int, p: int) -> np.ndarray:
    """The n x n alternating matrix W with w = sum_{j<k} W[j,k] v_j ^ v_k."""
    w = np.asarray(w, dtype=np.int64)
    if w.size != comb(n, 2):
        raise DimMismatch(f"expected {comb(n, 2)} wedge coordinates, got {w.size}")
    mat = np.zeros((n, n), dtype=np.int64)
    j, k = _pair_arrays(n)
    mat[j, k] = w % p
    mat[k, j] = (-w) % p
    return mat


def from_antisymmetric(mat: np.ndarray, p: int) -> np.ndarray:
    j, k = _pair_arrays(mat.shape[0])
    return np.asarray(mat, dtype=np.int64)[j, k] % p


def decompose_two_vector(w: Sequence[int], n: int, p: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Write w as a sum of rank(W)/2 decomposable wedges (u, v).

    Repeatedly peels off (-row_k / W_jk) ^ row_j for the first nonzero entry
    W_jk of the alternating matrix, which drops the rank by exactly two and
    returns (v_j, v_k) for a basis wedge.
    """
    if n > 4:
        raise DimMismatch("decomposition is only provided for n <= 4")
    mat = to_antisymmetric(w, n, p)
    out = []
    while mat.any():
        j, k = (int(x) for x in np.argwhere(mat)[0])
        c = inv_mod(int(mat[j, k]), p)
        u = (-mat[k] * c) % p
        v = mat[j].copy()
        out.append((u, v))
        mat = (mat - to_antisymmetric(wedge(u, v, p), n, p)) % p
    return out
