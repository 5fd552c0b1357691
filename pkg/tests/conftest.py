import pytest

from ilrc.codecore import ReedSolomonCode
from ilrc.galois import get_field
from ilrc.lrc import tamo_barg_code
from ilrc.pmds import pmds_random_search

# committed seed for the verified random-search instances
PMDS_SEED = 1


@pytest.fixture(scope="session")
def f16():
    return get_field(2, 4)


@pytest.fixture(scope="session")
def f256():
    return get_field(2, 8)


@pytest.fixture(scope="session")
def f2_16():
    return get_field(2, 16)


@pytest.fixture(scope="session")
def tb15(f16):
    """The [15,8,4,2] Tamo-Barg code of distance 7 over GF(16)."""
    return tamo_barg_code(f16, 15, 8, 4, 2)


@pytest.fixture(scope="session")
def rs15_9(f16):
    """The [15,9,7] Reed-Solomon code on the nonzero elements of GF(16)."""
    return ReedSolomonCode(f16, list(range(1, 16)), 9)


@pytest.fixture(scope="session")
def pmds15(f2_16):
    """Verified [15,8,4,2] partial-MDS instance over GF(2^16)."""
    return pmds_random_search(f2_16, 15, 8, 4, 2, seed=PMDS_SEED)


@pytest.fixture(scope="session")
def pmds6(f2_16):
    """Verified [6,3] partial-MDS instance with two groups, r=2, rho=2."""
    return pmds_random_search(f2_16, 6, 3, 2, 2, seed=PMDS_SEED)
