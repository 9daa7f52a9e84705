import pytest

from supercluster import field_make


@pytest.fixture(scope="session")
def F2():
    return field_make(2, 1)


@pytest.fixture(scope="session")
def F3():
    return field_make(3, 1)


@pytest.fixture(scope="session")
def F4():
    return field_make(2, 2)
