import numpy as np
import pytest

from multihol import oracle
from multihol.errors import TooLarge
from multihol.holo import t_g_report
from multihol.autc import check_no_equivariant_hom
from multihol.pigroup import catalog


@pytest.fixture(scope="module", params=[3, 5])
def setup(request):
    p = request.param
    g = oracle.build_small_group(catalog("n2", p))
    aut = oracle.aut_group(g)
    return p, g, aut, oracle.enumerate_gamma(g, aut)


def test_orders(setup):
    p, g, aut, _ = setup
    assert g.order == p ** 3
    assert aut.order == {3: 54, 5: 500}[p]


def test_aut_table_is_a_group(setup):
    _, g, aut, _ = setup
    k = aut.order
    assert (aut.table[aut.identity] == np.arange(k)).all()
    assert (aut.table[np.arange(k), aut.inv] == aut.identity).all()
    # every element is an automorphism of the multiplication table
    for perm in aut.perms[:20]:
        assert (perm[g.mult] == g.mult[perm[:, None], perm[None, :]]).all()


def test_gamma_count_and_identity(setup):
    p, _, aut, gammas = setup
    assert len(gammas) == p
    assert any((gm.values == aut.identity).all() for gm in gammas)


def test_gammas_are_delta_lambda(setup):
    p, g, aut, gammas = setup
    x1, x2 = g.gens
    lams = []
    for gm in gammas:
        def d(x, y):
            return g.coords[oracle.gamma_delta(g, aut, gm, x, y)]
        assert not d(x1, x1).any() and not d(x2, x2).any()
        assert not d(x1, x2)[:2].any()
        assert (d(x1, x2)[2] + d(x2, x1)[2]) % p == 0
        lam = int(d(x1, x2)[2])
        iso = oracle.isomorphic_to_g(g, oracle.circle_table(oracle.n_gamma(g, aut, gm)))
        assert iso == ((1 + 2 * lam) % p != 0)
        lams.append(lam)
    assert sorted(lams) == list(range(p))


def test_count_t(setup):
    p, g, aut, gammas = setup
    assert oracle.count_t(g, gammas, aut) == p - 1


def test_circle_table_identity_gamma(setup):
    _, g, aut, gammas = setup
    trivial = next(gm for gm in gammas if (gm.values == aut.identity).all())
    assert (oracle.circle_table(oracle.n_gamma(g, aut, trivial)) == g.mult).all()


def test_pipeline_agreement_p5():
    spec = catalog("n2", 5)
    assert check_no_equivariant_hom(spec)
    assert t_g_report(spec).t_order == oracle.run_oracle(spec).t_order == 4


def test_pipeline_assumption_fails_p3():
    # the pipeline is not applicable here, so the oracle alone decides
    assert not check_no_equivariant_hom(catalog("n2", 3))
    assert oracle.run_oracle(catalog("n2", 3)).t_order == 2


def test_too_large():
    with pytest.raises(TooLarge):
        oracle.build_small_group(catalog("a", 3))
    with pytest.raises(TooLarge):
        oracle.build_small_group(catalog("n2", 7))
