import pytest

from spheremin import make_catenoid_fixture, make_double_vase, make_vase


@pytest.fixture(scope="session")
def catenoid():
    return make_catenoid_fixture()


@pytest.fixture(scope="session")
def vase2():
    return make_vase(2, 0.5)


@pytest.fixture(scope="session")
def vase3():
    return make_vase(3, 0.5)


@pytest.fixture(scope="session")
def dvase2():
    return make_double_vase(2, 0.5)
