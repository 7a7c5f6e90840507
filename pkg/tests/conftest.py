import pathlib

import pytest

from spechom.corpus import octahedron_complex, small_corpus

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# lines collected by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture(scope="session")
def octahedron():
    return octahedron_complex()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
