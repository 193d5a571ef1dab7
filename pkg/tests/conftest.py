import pytest

from tiltkit.algfile import load_fixture
from tiltkit.complexes import TwoTermComplex
from tiltkit.linalg import GF


@pytest.fixture(scope="session")
def ex310():
    return load_fixture("ex310.alg")


@pytest.fixture(scope="session")
def E(ex310):
    return ex310.algebra


@pytest.fixture(scope="session")
def P310(ex310):
    return ex310.complex("P")


@pytest.fixture(scope="session")
def a2():
    return load_fixture("a2.alg")


@pytest.fixture(scope="session")
def A2(a2):
    return a2.algebra


@pytest.fixture(scope="session")
def a2f2():
    return load_fixture("a2.alg", GF(2))


@pytest.fixture(scope="session")
def kdoc():
    return load_fixture("k.alg")


@pytest.fixture(scope="session")
def a3():
    return load_fixture("a3.alg")


def free(A):
    return TwoTermComplex.free(A, name="free")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
