import pytest
from hypothesis import HealthCheck, settings

from config.session import SessionConfig
from lattice.prime_sets import PrimeIndexing

# first growth of the prime cache can exceed the default deadline
settings.register_profile(
    "typelattice",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("typelattice")


@pytest.fixture
def ix4():
    return PrimeIndexing(4)


@pytest.fixture
def ix16():
    return PrimeIndexing(16)


@pytest.fixture
def session():
    return SessionConfig()
