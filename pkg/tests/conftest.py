import pytest

from regform.fixtures import load_fixture
from regform.spine_graph import extend_to_regular_form


@pytest.fixture(scope="session")
def G0():
    return load_fixture("G0")


@pytest.fixture(scope="session")
def G1():
    return load_fixture("G1")


@pytest.fixture(scope="session")
def G1x(G1):
    return extend_to_regular_form(G1)[0]

from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
