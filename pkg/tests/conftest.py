import pytest

from skeintorus import SausageGraph, SigmaTable


@pytest.fixture(scope="session")
def g1b():
    return SausageGraph(1, False)


@pytest.fixture(scope="session")
def g2c():
    return SausageGraph(2, True)


@pytest.fixture(scope="session")
def g2b():
    return SausageGraph(2, False)


@pytest.fixture(scope="session")
def g3c():
    return SausageGraph(3, True)


@pytest.fixture(scope="session")
def t1b(g1b):
    return SigmaTable(g1b)


@pytest.fixture(scope="session")
def t2c(g2c):
    return SigmaTable(g2c)


@pytest.fixture(scope="session")
def t2b(g2b):
    return SigmaTable(g2b)


@pytest.fixture(scope="session")
def t3c(g3c):
    return SigmaTable(g3c)
