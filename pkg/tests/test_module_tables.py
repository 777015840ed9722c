"""Action of the reductive part Q on the components of S^2 V and Lambda^2 V, at p = 5.

Each row lists a basis of one Q-invariant component and the expected action
in that basis (row-vector convention, so a 2-dimensional block reads as A).
"""

import itertools

import numpy as np
import pytest

from multihol.fp import FpMatrix
from multihol.wedge import induced_hat, wedge_basis

P = 5


def sym_pairs(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_hat(alpha, p):
    """Induced action on S^2 V in the basis v_i * v_j, i <= j."""
    a = alpha.a
    n = a.shape[0]
    pairs = sym_pairs(n)
    idx = {pr: m for m, pr in enumerate(pairs)}
    out = np.zeros((len(pairs), len(pairs)), dtype=np.int64)
    for r, (i, j) in enumerate(pairs):
        for k, l in itertools.product(range(n), repeat=2):
            out[r, idx[min(k, l), max(k, l)]] += a[i, k] * a[j, l]
    return out % p


def det2(a):
    return int(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]) % P


def q_element(label, s, t, a):
    d = det2(a)
    head = {"a": None, "b": [d], "c": [s, 1], "d": [d, s], "e": [d, 1]}[label]
    if label == "a":
        return FpMatrix.diag([s, 1, t], P)
    n = len(head) + 2
    m = np.zeros((n, n), dtype=np.int64)
    m[range(len(head)), range(len(head))] = head
    m[n - 2:, n - 2:] = a
    return FpMatrix(m, P)


def scalar(x):
    return lambda s, t, a: np.array([[x(s, t, a)]])


def block(f):
    return lambda s, t, a: f(s, t, a) * a


D = det2
LAMBDA2 = {
    "a": [([(0, 1)], scalar(lambda s, t, a: s)), ([(0, 2)], scalar(lambda s, t, a: s * t)),
          ([(1, 2)], scalar(lambda s, t, a: t))],
    "b": [([(0, 1), (0, 2)], block(lambda s, t, a: D(a))), ([(1, 2)], scalar(lambda s, t, a: D(a)))],
    "c": [([(0, 1)], scalar(lambda s, t, a: s)), ([(0, 2), (0, 3)], block(lambda s, t, a: s)),
          ([(1, 2), (1, 3)], block(lambda s, t, a: 1)), ([(2, 3)], scalar(lambda s, t, a: D(a)))],
    "d": [([(0, 1)], scalar(lambda s, t, a: s * D(a))), ([(0, 2), (0, 3)], block(lambda s, t, a: D(a))),
          ([(1, 2), (1, 3)], block(lambda s, t, a: s)), ([(2, 3)], scalar(lambda s, t, a: D(a)))],
    "e": [([(0, 1)], scalar(lambda s, t, a: D(a))), ([(0, 2), (0, 3)], block(lambda s, t, a: D(a))),
          ([(1, 2), (1, 3)], block(lambda s, t, a: 1)), ([(2, 3)], scalar(lambda s, t, a: D(a)))],
}
SYM2 = {
    "a": [([(0, 0)], scalar(lambda s, t, a: s * s)), ([(0, 1)], scalar(lambda s, t, a: s)),
          ([(0, 2)], scalar(lambda s, t, a: s * t)), ([(1, 1)], scalar(lambda s, t, a: 1)),
          ([(1, 2)], scalar(lambda s, t, a: t)), ([(2, 2)], scalar(lambda s, t, a: t * t))],
    "b": [([(0, 0)], scalar(lambda s, t, a: D(a) ** 2)), ([(0, 1), (0, 2)], block(lambda s, t, a: D(a)))],
    "c": [([(0, 0)], scalar(lambda s, t, a: s * s)), ([(0, 1)], scalar(lambda s, t, a: s)),
          ([(0, 2), (0, 3)], block(lambda s, t, a: s)), ([(1, 1)], scalar(lambda s, t, a: 1)),
          ([(1, 2), (1, 3)], block(lambda s, t, a: 1))],
    "d": [([(0, 0)], scalar(lambda s, t, a: D(a) ** 2)), ([(0, 1)], scalar(lambda s, t, a: s * D(a))),
          ([(0, 2), (0, 3)], block(lambda s, t, a: D(a))), ([(1, 1)], scalar(lambda s, t, a: s * s)),
          ([(1, 2), (1, 3)], block(lambda s, t, a: s))],
    "e": [([(0, 0)], scalar(lambda s, t, a: D(a) ** 2)), ([(0, 1)], scalar(lambda s, t, a: D(a))),
          ([(0, 2), (0, 3)], block(lambda s, t, a: D(a))), ([(1, 1)], scalar(lambda s, t, a: 1)),
          ([(1, 2), (1, 3)], block(lambda s, t, a: 1))],
}


def samples():
    rng = np.random.default_rng(41)
    out = [(2, 3, np.array([[1, 0], [0, 1]])), (4, 2, np.array([[0, 1], [1, 0]]))]
    while len(out) < 12:
        a = rng.integers(0, P, (2, 2))
        if det2(a):
            out.append((int(rng.integers(1, P)), int(rng.integers(1, P)), a))
    return out


def _check(hat, index, rows, expected):
    cols = [index[r] for r in rows]
    sub = hat[np.ix_(cols, cols)]
    assert (sub % P == expected % P).all()
    # the span of these rows is invariant: nothing leaks to other basis vectors
    others = [c for c in range(hat.shape[1]) if c not in cols]
    assert not hat[np.ix_(cols, others)].any()


@pytest.mark.parametrize("label", ["a", "b", "c", "d", "e"])
def test_exterior_square_components(label):
    for s, t, a in samples():
        alpha = q_element(label, s, t, a)
        hat = induced_hat(alpha).a
        index = wedge_basis(alpha.rows).index
        for rows, f in LAMBDA2[label]:
            _check(hat, index, rows, f(s, t, a))


@pytest.mark.parametrize("label", ["a", "b", "c", "d", "e"])
def test_symmetric_square_components(label):
    for s, t, a in samples():
        alpha = q_element(label, s, t, a)
        hat = sym_hat(alpha, P)
        index = {pr: m for m, pr in enumerate(sym_pairs(alpha.rows))}
        for rows, f in SYM2[label]:
            _check(hat, index, rows, f(s, t, a))


def test_case_a_diagonal_example():
    assert induced_hat(FpMatrix.diag([2, 1, 3], P)) == FpMatrix.diag([2, 6, 3], P)
