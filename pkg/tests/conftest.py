import numpy as np
import pytest

from bergerconn.algebra import MVec


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_mvec(rng, n):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return MVec(n, z, 1j * rng.standard_normal())
