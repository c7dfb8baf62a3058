import math
import sys

import hypothesis.strategies as st
from hypothesis import assume
import numpy as np
import pytest

from deficitx.state import XMatrix, from_matrix


@st.composite
def x_states(draw, min_weight=1e-3):
    """Valid X states: positive diagonal weights, coherences inside the 2x2 bounds."""
    w = np.array([draw(st.floats(min_weight, 1.0)) for _ in range(4)])
    assume(w.sum() > 0)
    a, b, c, d = w / w.sum()
    u = draw(st.floats(-1.0, 1.0))
    v = draw(st.floats(-1.0, 1.0))
    return from_matrix(XMatrix(a, b, c, d, u * math.sqrt(b * c), v * math.sqrt(a * d)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
