"""Property decision procedures: flags, normality, connectedness, Gamma/B^n."""
import random

import pytest

from reslat.builders import godel, lukasiewicz, ordinal_sum
from reslat.properties import (GAMMA_CAP, basic_properties, gamma_set,
                               is_gamma_connected, is_normal,
                               is_weakly_well_connected, is_well_connected,
                               satisfies_Bn, satisfies_G_quasi, satisfies_Gnk)
from reslat.terms import builtin, satisfies_all


def is_commutative(alg):
    return bool(satisfies_all(alg, builtin("commutative")))


def test_lukasiewicz_flags(l4):
    r = basic_properties(l4)
    assert r.integral and r.commutative and r.divisible and r.prelinear
    assert r.representable and r.normal
    assert not r.idempotent and not r.cancellative
    assert r.well_connected and r.weakly_well_connected
    assert r.one_distributive
    assert r.witnesses["idempotent"]["x"] in range(1, 4)


def test_godel_flags(g3):
    r = basic_properties(g3)
    assert r.idempotent and r.divisible and r.integral and r.commutative


def test_as_dict_shape(l2):
    d = basic_properties(l2).as_dict()
    assert set(d) == {"flags", "witnesses"}
    assert d["flags"]["integral"] is True
    assert "idempotent" in d["witnesses"]


def test_non_prelinear_size4_witness(rl_by_size):
    hits = []
    for alg in rl_by_size[4]:
        r = basic_properties(alg)
        if not r.prelinear:
            hits.append((alg, r.witnesses["prelinear"]))
    assert hits
    alg, w = hits[0]
    x, y = w["x"], w["y"]
    # the witness pair really does break (x/y) \/ (y/x) >= 1
    lhs = alg.join[alg.rdiv[x][y]][alg.rdiv[y][x]]
    assert not alg.le(alg.unit, lhs)


def test_commutative_implies_normal(rl_upto4):
    for alg in rl_upto4:
        if is_commutative(alg):
            assert is_normal(alg), alg.name
    assert is_normal(godel(3))


def test_non_normal_witness_exists(rl_upto4):
    non_normal = [a for a in rl_upto4 if not is_normal(a)]
    assert non_normal
    assert all(not is_commutative(a) for a in non_normal)
    sizes = sorted(a.size for a in non_normal)
    assert sizes[0] == 4  # smallest non-normal algebra needs 4 elements


def test_chains_are_well_connected(rl_upto4, l6, g3):
    for alg in list(rl_upto4) + [l6, g3]:
        if alg.is_chain():
            assert is_well_connected(alg)
            for n in range(GAMMA_CAP + 1):
                assert is_gamma_connected(alg, n)


def test_product_is_not_weakly_well_connected(l2xl2):
    assert not is_weakly_well_connected(l2xl2)
    assert not is_well_connected(l2xl2)
    assert not is_gamma_connected(l2xl2, 0)


def test_wc_implies_wwc(rl_upto4):
    for alg in rl_upto4:
        if is_well_connected(alg):
            assert is_weakly_well_connected(alg), alg.name


def test_gamma0_is_meet_with_one(g3, l3, rl_by_size):
    for alg in [g3, l3] + rl_by_size[4][:6]:
        g0 = gamma_set(alg, 0)
        assert len(g0) == 1
        (table,) = list(g0)
        assert table == tuple(alg.meet[x][alg.unit] for x in range(alg.size))


def test_gamma_sizes_on_g2(g2):
    # conjugation by the bottom produces the constant-unit table, so even
    # a commutative chain has several distinct iterated-conjugate tables
    assert [len(gamma_set(g2, n)) for n in range(4)] == [1, 3, 3, 3]


def test_gamma_grows_on_noncommutative(rl_upto4):
    noncomm = [a for a in rl_upto4 if not is_commutative(a)]
    assert noncomm
    for alg in noncomm:
        assert len(gamma_set(alg, 1)) >= 2


def test_bn_at_unit(g2, l3):
    for alg in (g2, l3):
        for n in range(3):
            assert satisfies_Bn(alg, alg.unit, alg.unit, n)


def test_b0_on_a_chain_needs_a_unit(g2):
    for a in range(3):
        for b in range(3):
            want = a == g2.unit or b == g2.unit
            assert satisfies_Bn(g2, a, b, 0) == want


def test_b0_counterexample_in_product(l2xl2):
    # (2,0) and (0,2): join is the unit but neither component is
    a, b = 6, 2
    assert satisfies_Bn(l2xl2, a, b, 0)
    assert not l2xl2.le(l2xl2.unit, a) and not l2xl2.le(l2xl2.unit, b)


def test_gamma0_connected_iff_wwc(rl_upto4, l2xl2):
    for alg in list(rl_upto4) + [l2xl2]:
        assert is_gamma_connected(alg, 0) == is_weakly_well_connected(alg)


def test_gnk_reflexive(rl_by_size):
    for alg in rl_by_size[3] + rl_by_size[4][:6]:
        for n in range(2):
            assert satisfies_Gnk(alg, n, n)


def test_gnk_ladder(rl_upto4):
    # (G_{n,n+1}) implies (G_{n,n+2})
    for alg in rl_upto4:
        for n in (0, 1):
            if satisfies_Gnk(alg, n, n + 1):
                assert satisfies_Gnk(alg, n, n + 2), (alg.name, n)


def test_bn_monotone(rl_upto4):
    for alg in rl_upto4:
        for n in (1, 2):
            for a in range(alg.size):
                for b in range(alg.size):
                    if satisfies_Bn(alg, a, b, n):
                        assert satisfies_Bn(alg, a, b, n - 1), \
                            (alg.name, a, b, n)


def test_g_quasi_on_commutative_and_normal(rl_upto4):
    for alg in rl_upto4:
        if is_commutative(alg) or is_normal(alg):
            assert satisfies_G_quasi(alg), alg.name


def test_products_of_joins(l2xl2, rl_upto4):
    """If a_i \\/ b_j = 1 for all i, j then products of the a's and of the
    b's still join to 1."""
    rng = random.Random(11)
    noncomm = [a for a in rl_upto4 if not is_commutative(a)]
    for alg in [l2xl2, noncomm[0], noncomm[-1]]:
        n = alg.size
        one = alg.unit
        for _ in range(200):
            r = rng.randrange(1, 4)
            s = rng.randrange(1, 4)
            a_tup = [rng.randrange(n) for _ in range(r)]
            b_tup = [rng.randrange(n) for _ in range(s)]
            if not all(alg.join[a][b] == one for a in a_tup for b in b_tup):
                continue
            pa = a_tup[0]
            for a in a_tup[1:]:
                pa = alg.prod[pa][a]
            pb = b_tup[0]
            for b in b_tup[1:]:
                pb = alg.prod[pb][b]
            assert alg.join[pa][pb] == one


def test_one_distributive_collapses_wc_and_wwc(rl_upto4):
    for alg in rl_upto4:
        if basic_properties(alg).one_distributive:
            assert is_well_connected(alg) == is_weakly_well_connected(alg)


def test_g_quasi_can_fail(rl5):
    # the quasi-equation (G) is not a theorem of all residuated lattices
    assert any(not satisfies_G_quasi(a) for a in rl5)


def test_gamma_set_rejects_negative(g2):
    with pytest.raises(ValueError):
        gamma_set(g2, -1)
