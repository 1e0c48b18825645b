import numpy as np
import pytest
from hypothesis import strategies as st


def disk_points(r_max=0.95):
    """Hypothesis strategy for points with modulus at most ``r_max``."""
    return st.builds(
        lambda r, t: complex(r_max * np.sqrt(r) * np.cos(t), r_max * np.sqrt(r) * np.sin(t)),
        st.floats(0, 1),
        st.floats(0, 2 * np.pi),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
