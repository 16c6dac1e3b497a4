import pytest

from homlie.algebra import Window, builtin


@pytest.fixture(scope="session")
def w22q():
    return builtin("w22q")


@pytest.fixture(scope="session")
def wittq():
    return builtin("wittq")


@pytest.fixture(scope="session")
def wittsuperq():
    return builtin("wittsuperq")


@pytest.fixture(scope="session")
def example49():
    return builtin("example49")


@pytest.fixture(scope="session")
def small_window():
    return Window(-3, 3)
