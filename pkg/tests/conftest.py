import pytest
from hypothesis import settings

from samples import make_a3, make_ch1, make_ch2, make_kst, make_kt, make_nont0, make_v
from specorder.morphisms import SpaceMap

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def a3():
    return make_a3()


@pytest.fixture
def ch2():
    return make_ch2()


@pytest.fixture
def ch1():
    return make_ch1()


@pytest.fixture
def kst():
    return make_kst()


@pytest.fixture
def kt():
    return make_kt()


@pytest.fixture
def nont0():
    return make_nont0()


@pytest.fixture
def vee():
    return make_v()


@pytest.fixture
def proj(kst, kt):
    return SpaceMap.build(kst, kt, {"e2": "e1", "hs": "e1", "ht": "p", "m": "p"})


@pytest.fixture
def kst_to_ch2(kst, ch2):
    return SpaceMap.build(kst, ch2, {"e2": "x0", "ht": "x1", "hs": "x1", "m": "x2"})


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.line(number))
