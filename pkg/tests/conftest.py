import numpy as np
import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance check; shown in the summary."""
    def log(criterion, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def regular_triangle_gram():
    g = -0.5 * np.ones((3, 3))
    np.fill_diagonal(g, 1.0)
    return g


@pytest.fixture
def orthant():
    from simplexorder.models import Geometry
    from simplexorder.simplex import Simplex

    return Simplex(Geometry.SPHERICAL, np.eye(3))
