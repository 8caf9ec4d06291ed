import pytest
from hypothesis import HealthCheck, settings

from relend import registry as R

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def c2():
    return R.hopf("c2")


@pytest.fixture(scope="session")
def s3():
    return R.hopf("s3")


@pytest.fixture(scope="session")
def sw():
    return R.hopf("sweedler")


@pytest.fixture(scope="session")
def sw_to_c2():
    return R.pair("sweedler/c2")


@pytest.fixture(scope="session")
def s3_by_a3():
    return R.pair("s3/A3")
