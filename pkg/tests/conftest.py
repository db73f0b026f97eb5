"""Shared field contexts (session scope: table building dominates)."""

import numpy as np
import pytest

from bent3 import ctx_new
from bent3.families import QUARTIC_ORDER16


@pytest.fixture(scope="session")
def ctx1():
    return ctx_new(1)


@pytest.fixture(scope="session")
def ctx2():
    return ctx_new(2)


@pytest.fixture(scope="session")
def ctx3():
    return ctx_new(3)


@pytest.fixture(scope="session")
def ctx4():
    return ctx_new(4)


@pytest.fixture(scope="session")
def ctx4b():
    # same field, different modulus: catches basis-dependence bugs
    return ctx_new(4, QUARTIC_ORDER16)


@pytest.fixture(scope="session")
def ctx6():
    return ctx_new(6)


@pytest.fixture(scope="session")
def ctx8():
    return ctx_new(8)


@pytest.fixture(scope="session")
def ctx10():
    return ctx_new(10)


@pytest.fixture(scope="session")
def ctx12():
    return ctx_new(12)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
