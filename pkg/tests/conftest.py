import numpy as np
import pytest
from mpmath import mp


@pytest.fixture(scope="session")
def mp40():
    """mpmath context at 40 digits for oracle computations."""
    old = mp.dps
    mp.dps = 40
    yield mp
    mp.dps = old


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
