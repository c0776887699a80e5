import pytest

from loopgen import Analysis, make_cyclic, make_paige_2, make_s3


@pytest.fixture(scope="session")
def s3():
    return Analysis(make_s3())


@pytest.fixture(scope="session")
def paige():
    return Analysis(make_paige_2())


@pytest.fixture(scope="session")
def c4():
    return Analysis(make_cyclic(4))


def orbit_of_label(an, label):
    return an.orbits.by_label(label)


def rep(an, label):
    return an.lattice[an.orbits.reps[an.orbits.by_label(label)]]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
