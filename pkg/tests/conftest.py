import pytest

from rapoly.corpus import admissible_corpus, corpus, cube, dodecahedron, negatives, prism, tetrahedron


@pytest.fixture(scope="session")
def admissible_members():
    return admissible_corpus()


@pytest.fixture(scope="session")
def all_members():
    return corpus()


@pytest.fixture
def cube_p():
    return cube()


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
