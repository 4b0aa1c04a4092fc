import numpy as np
import pytest

from guoindex.guo import EigenMatrix

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}" + (f" ({detail})" if detail else ""))
        return ok
    return record


# worked-example grids
E_EX1 = [[23.9, 1j, -1j], [-3, 1 - 7j, 1 + 7j], [0, -3 + 1j, -3 - 1j]]
E_EX2 = [[5, -3, -2, -3], [2, 1, 2, 1]]
E_EX3 = [[2.5, 0.25j, 0, -0.25j], [-1, 0.5 - 1j, 0, 0.5 + 1j]]
E_EX4 = [[4, 1, 1], [-1, -2.5, -2.5]]


@pytest.fixture
def ex1():
    return EigenMatrix(E_EX1)


@pytest.fixture
def ex2():
    return EigenMatrix(E_EX2)


@pytest.fixture
def ex3():
    return EigenMatrix(E_EX3)


@pytest.fixture
def ex4():
    return EigenMatrix(E_EX4)


def random_valid_E(rng, n, m, margin=None):
    """Random grid with real first column, conjugate column pairs and a real
    middle column for even m; the Perron entry is left at 0."""
    E = np.zeros((n, m), dtype=complex)
    E[:, 0] = rng.uniform(-5, 5, n)
    for l in range(1, (m - 1) // 2 + 1):
        col = rng.uniform(-5, 5, n) + 1j * rng.uniform(-5, 5, n)
        E[:, l] = col
        E[:, m - l] = col.conj()
    if m % 2 == 0 and m > 1:
        E[:, m // 2] = rng.uniform(-5, 5, n)
    E[0, 0] = 0.0
    return E
