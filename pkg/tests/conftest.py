"""Shared fixtures: standard small algebras and enumerated catalogs.

The enumerated catalogs are session-scoped because several test modules
(and the acceptance gate) sweep the same universes of small residuated
lattices.
"""
import pytest

from reslat.builders import godel, lukasiewicz, ordinal_sum, rotate, trivial
from reslat.enumeration import SearchConstraints, enumerate_rl, naive_enumerate_rl
from reslat.finalg import direct_product


@pytest.fixture(scope="session")
def two():
    # the two-element Boolean algebra; same thing as lukasiewicz(1) / godel(1)
    return lukasiewicz(1, name="2")


@pytest.fixture(scope="session")
def l2():
    return lukasiewicz(2)


@pytest.fixture(scope="session")
def l3():
    return lukasiewicz(3)


@pytest.fixture(scope="session")
def l4():
    return lukasiewicz(4)


@pytest.fixture(scope="session")
def l6():
    return lukasiewicz(6)


@pytest.fixture(scope="session")
def g2():
    return godel(2)


@pytest.fixture(scope="session")
def g3():
    return godel(3)


@pytest.fixture(scope="session")
def triv():
    return trivial()


@pytest.fixture(scope="session")
def l2xl2():
    return direct_product(lukasiewicz(2), lukasiewicz(2), name="L2xL2")


@pytest.fixture(scope="session")
def rot4():
    # 4-element involutive chain: identity rotation of the Boolean algebra
    return rotate(lukasiewicz(1, name="2"), 2, "id")


@pytest.fixture(scope="session")
def rl_by_size():
    """All residuated lattices of sizes 1..4 up to isomorphism."""
    return {n: list(enumerate_rl(SearchConstraints(size=n))) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def rl_upto4(rl_by_size):
    return [a for n in (1, 2, 3, 4) for a in rl_by_size[n]]


@pytest.fixture(scope="session")
def rl5():
    return list(enumerate_rl(SearchConstraints(size=5)))


@pytest.fixture(scope="session")
def naive_by_size():
    """Validate-filtered brute force generator output, sizes 1..4."""
    return {n: naive_enumerate_rl(n) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def sum_pool():
    """All ordinal sums of <= 3 components drawn from {2, L2, L3, L4},
    paired with the component lists they were built from."""
    parts = [lukasiewicz(1, name="2"), lukasiewicz(2), lukasiewicz(3),
             lukasiewicz(4)]
    pool = []
    for a in parts:
        pool.append(((a,), ordinal_sum([a])))
        for b in parts:
            pool.append(((a, b), ordinal_sum([a, b])))
            for c in parts:
                pool.append(((a, b, c), ordinal_sum([a, b, c])))
    return pool
