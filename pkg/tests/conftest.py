import numpy as np
import pytest

TEST1 = (5.0, 2.0, 4.0, 1.0, 3.0)
TEST2 = (1.0, 0.2, 0.1, 0.2, 0.5)
TEST3 = (28.0, 19.0, 17.0, 21.0, 25.0)
ALL_PARAMS = {"test1": TEST1, "test2": TEST2, "test3": TEST3}


def dense_oracle(n, bands):
    """Element-by-element construction, independent of ``densify``."""
    sigma, lam, alpha, beta, gamma = bands
    by_offset = {-2: sigma, -1: lam, 0: alpha, 1: beta, 2: gamma}
    M = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if j - i in by_offset:
                M[i, j] = by_offset[j - i]
    return M


def dense_upper_oracle(m, bands):
    M = np.zeros((m, m))
    for i in range(m):
        for k, value in enumerate(bands):
            if i + k < m:
                M[i, i + k] = value
    return M


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
