import numpy as np
import pytest

from dilutedgt import ContactMatrix, DesignMeta

# worked example: three agents, six people, persons 3 and 4 infected
PAPER_CONTACT = np.array(
    [
        [1, 0, 1, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 1, 1],
    ],
    dtype=bool,
)
PAPER_SAMPLING = np.array(
    [
        [1, 0, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 1, 0, 0, 1, 1],
    ],
    dtype=bool,
)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def paper_contact():
    return ContactMatrix(PAPER_CONTACT, DesignMeta("explicit"))


def column_sets(dense):
    dense = np.asarray(dense, dtype=bool)
    return [frozenset(np.flatnonzero(dense[:, j]).tolist()) for j in range(dense.shape[1])]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
