import itertools

import numpy as np
import pytest

from multihol import forms, holo
from multihol.autc import AutcElement, GeneratorSet, generator_catalog
from multihol.errors import AssumptionFailed, NotInCommutant, NotInvertible, UnknownAdmissibility
from multihol.fp import FpMatrix
from multihol.pigroup import catalog

HYP = [("a", 5), ("b", 3), ("b", 5), ("c", 5), ("d", 3), ("d", 5), ("e", 5)]


def tau_e(lam, kap, p=5):
    return FpMatrix.identity(6, p) + (FpMatrix.identity(6, p).scale(lam)
                                      + forms.star_sigma(p, kap)).scale(2)


def test_commutant_dims():
    assert len(holo.commutant(catalog("zero3", 3))) == 1
    assert len(holo.commutant(catalog("c", 5))) == 1
    assert len(holo.commutant(catalog("e", 5))) == 2
    assert len(holo.commutant(catalog("a", 5))) == 1


def test_zero3_commutant_exhaustive():
    s = catalog("zero3", 3)
    gens = generator_catalog(s)
    hits = [m for m in itertools.product(range(3), repeat=9)
            if holo.in_commutant(s, FpMatrix(np.array(m).reshape(3, 3), 3), gens)]
    assert len(hits) == 3


def test_criterion_examples():
    a = catalog("a", 5)
    res = holo.criterion_solve(a, FpMatrix.identity(3, 5))
    assert res.eta.is_identity()
    res = holo.criterion_solve(a, FpMatrix.identity(3, 5).scale(3))
    assert res.eta == FpMatrix.identity(3, 5).scale(2)
    e = catalog("e", 5)
    tau = FpMatrix.identity(6, 5) + forms.star_sigma(5, 2)
    res = holo.criterion_solve(e, tau)
    # pi eta-hat tau = eta pi
    assert e.pi @ holo.induced_hat(res.eta) @ tau == res.eta @ e.pi
    assert holo._solves(e, FpMatrix.diag([3, 2, 1, 1], 5), tau)


def test_criterion_errors():
    a = catalog("a", 5)
    with pytest.raises(NotInvertible):
        holo.criterion_solve(a, FpMatrix.zeros(3, 3, 5))
    off = FpMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 5)
    with pytest.raises(NotInCommutant):
        holo.criterion_solve(a, off)


def test_unknown_is_surfaced(monkeypatch):
    e = catalog("e", 5)
    trivial = GeneratorSet([], [AutcElement(FpMatrix.identity(4, 5))])
    tau = FpMatrix.identity(6, 5)
    tau = FpMatrix(tau.a + np.eye(6, k=1, dtype=np.int64), 5)
    # no scalar solves this tau, and the budget stops both the diagonal sweep and the search
    assert holo.criterion_solve(e, tau, trivial, budget=10) is holo.UNKNOWN
    monkeypatch.setattr(holo, "criterion_solve", lambda *a, **k: holo.UNKNOWN)
    with pytest.raises(UnknownAdmissibility):
        holo.admissible_taus(e)


def test_exhaustive_rules_out():
    # n = 3, p = 3 is small enough that "no solution" is a proof, not a guess
    a = catalog("a", 3)
    trivial = GeneratorSet([], [AutcElement(FpMatrix.identity(3, 3))])
    # tau swaps v1^v2 and v2^v3, which would force the (1,1) entry of eta to vanish
    tau = FpMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]], 3)
    assert holo.criterion_solve(a, tau, trivial) is None
    assert holo.criterion_solve(a, FpMatrix.identity(3, 3).scale(2)).eta == FpMatrix.identity(3, 3).scale(2)


@pytest.mark.parametrize("label,p", HYP)
def test_admissible_counts(label, p):
    adm = holo.admissible_taus(catalog(label, p))
    assert len(adm) == ((p - 1) ** 2 if label == "e" else p - 1)


@pytest.mark.parametrize("label,p", [("a", 5), ("b", 3), ("b", 5), ("c", 5), ("d", 3)])
def test_excluded_scalar_is_minus_half(label, p):
    s = catalog(label, p)
    got = {a.tau.key() for a in holo.admissible_taus(s)}
    c = s.dim_wedge
    lam_bad = (p - 1) // 2          # -1/2 mod p
    for lam in range(p):
        tau = FpMatrix.identity(c, p).scale(1 + 2 * lam)
        assert (tau.key() in got) == (lam != lam_bad)


def test_b3_taus():
    adm = holo.admissible_taus(catalog("b", 3))
    assert {a.tau.key() for a in adm} == {FpMatrix.identity(3, 3).scale(k).key() for k in (1, 2)}


def test_coset_equal():
    a = catalog("a", 5)
    two = holo.criterion_solve(a, FpMatrix.identity(3, 5).scale(3))
    three = holo.criterion_solve(a, FpMatrix.identity(3, 5).scale(2))
    assert holo.coset_equal(a, two, two)
    assert not holo.coset_equal(a, two, three)
    g = FpMatrix.diag([2, 1, 3], 5)
    moved = holo.ResPair(g @ two.eta, holo.induced_hat(g) @ two.zeta)
    assert holo.coset_equal(a, two, moved)


def test_coset_found_is_unique_p3():
    # every exhaustive solution of the criterion lies in the same coset
    s = catalog("b", 3)
    tau = FpMatrix.identity(3, 3).scale(2)
    rep = holo.criterion_solve(s, tau)
    for entries in itertools.product(range(3), repeat=9):
        eta = FpMatrix(np.array(entries).reshape(3, 3), 3)
        if eta.det() != 0 and holo._solves(s, eta, tau):
            other = holo.ResPair(eta, holo.induced_hat(eta) @ tau)
            assert holo.coset_equal(s, rep, other)


def test_case_e_group_law():
    s = catalog("e", 5)
    gens = generator_catalog(s)
    adm = holo.admissible_taus(s, gens)
    assert len(adm) == 16
    basis = holo.commutant(s, gens)
    assert len(basis) == 2

    def lam_kap(sigma):
        for lam, kap in itertools.product(range(5), repeat=2):
            if FpMatrix.identity(6, 5).scale(lam) + forms.star_sigma(5, kap) == sigma:
                return lam, kap
        raise AssertionError("sigma outside the expected family")

    params = [lam_kap(a.sigma) for a in adm]
    count = 0
    for a, (l1, k1) in zip(adm, params):
        for b, (l2, k2) in zip(adm, params):
            sigma, _ = holo.sprime_compose(s, (a.sigma, a.pair), (b.sigma, b.pair), gens)
            # tau multiplies: (1 + 2 sigma) = (1 + 2 sigma1)(1 + 2 sigma2) in (lambda, kappa) terms
            t1l, t1k, t2l, t2k = 1 + 2 * l1, 2 * k1, 1 + 2 * l2, 2 * k2
            want_l = (t1l * t2l + t1k * t2k) % 5
            want_k = (t1l * t2k + t2l * t1k) % 5
            got_l, got_k = lam_kap(sigma)
            assert ((1 + 2 * got_l) % 5, 2 * got_k % 5) == (want_l, want_k)
            count += 1
    assert count == 256


def test_scalar_law():
    s = catalog("a", 5)
    adm = {a.tau.a[0, 0]: a for a in holo.admissible_taus(s)}
    for x, y in itertools.product(adm, repeat=2):
        sigma, _ = holo.sprime_compose(s, (adm[x].sigma, adm[x].pair), (adm[y].sigma, adm[y].pair))
        assert (1 + 2 * sigma.a[0, 0]) % 5 == x * y % 5


@pytest.mark.parametrize("label,p", HYP + [("b", 7)])
def test_t_g_structures(label, p):
    rep = holo.t_g_report(catalog(label, p))
    assert rep.ok, rep.checks
    assert rep.t_structure == holo.expected_structure(label, p)
    assert rep.t_order == ((p - 1) ** 2 if label == "e" else p - 1)
    assert rep.dim_s == 0 and rep.group_order == p ** (rep.n + rep.n * (rep.n - 1) // 2)


def test_outside_hypotheses():
    rep = holo.t_g_report(catalog("e", 3))
    assert not rep.assumption_ok
    assert [name for name, _ in rep.checks] == ["res group axioms"]
    with pytest.raises(AssumptionFailed) as info:
        holo.t_g_report(catalog("a", 3), strict=True)
    assert info.value.report.case == "a"


def test_report_dict_fields():
    d = holo.t_g_report(catalog("b", 3)).to_dict()
    assert list(d) == ["case", "p", "n", "group_order", "dim_s", "dim_sprime", "admissible",
                       "t_order", "t_structure", "assumption_ok", "checks"]
    assert d["t_order"] == 2 and d["group_order"] == 3 ** 6


def test_abelian_invariants():
    assert holo.abelian_invariants([1]) == []
    assert holo.abelian_invariants([1, 2, 4, 4]) == [4]
    assert holo.abelian_invariants([1, 2, 2, 2]) == [2, 2]
    c4c4 = [int(np.lcm(4 // np.gcd(4, i), 4 // np.gcd(4, j))) for i in range(4) for j in range(4)]
    assert holo.structure_string(holo.abelian_invariants(c4c4)) == "C4 x C4"
    c6 = [6 // int(np.gcd(6, i)) for i in range(6)]
    assert holo.abelian_invariants(c6) == [6]


@pytest.mark.parametrize("label,p", [("a", 5), ("e", 5), ("n2", 3), ("b", 7)])
def test_power_maps(label, p):
    rep = holo.power_map_check(catalog(label, p), samples=100)
    assert rep.ok, rep.failures()
    assert len(rep.checks) == 2 * (p - 1) + 1
