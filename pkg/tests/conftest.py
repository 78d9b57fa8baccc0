import pytest

from states.squeezed_vacuum import squeezed_vacuum


@pytest.fixture(scope="session")
def table_r1():
    return squeezed_vacuum(1.0)


@pytest.fixture(scope="session")
def table_r075():
    return squeezed_vacuum(0.75)


@pytest.fixture(scope="session")
def table_r05():
    return squeezed_vacuum(0.5)


@pytest.fixture(scope="session")
def vacuum():
    return squeezed_vacuum(0.0)
