import random

import pytest

from aibeir import core
from aibeir.config import SCALES
from aibeir.pairing import generate_params


@pytest.fixture(scope="session")
def toy_params():
    return generate_params(SCALES["toy"], b"toy-fixture")


@pytest.fixture(scope="session")
def desk_params():
    return generate_params(SCALES["desk"], b"desk-fixture")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def deployment(desk_params):
    """One composed-scheme setup shared by the core tests: (mpk, msk, irm)."""
    return core.setup(desk_params, 32, b"IRM", random.Random(7))
