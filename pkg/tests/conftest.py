import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from a1lab.weights import PiecewiseConstantWeight

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: list[str] = []


def record_criterion(number, name, ok, detail=""):
    _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def two_piece():
    return PiecewiseConstantWeight([0.0, 0.5, 1.0], [2.0, 1.0])


@st.composite
def step_weights(draw, max_pieces=8, lo=0.25, hi=16.0):
    k = draw(st.integers(1, max_pieces))
    cuts = draw(
        st.lists(st.floats(0.001, 0.999), min_size=k - 1, max_size=k - 1, unique=True).map(sorted)
    )
    x = np.array([0.0, *cuts, 1.0])
    if np.any(np.diff(x) < 1e-6):
        x = np.linspace(0.0, 1.0, k + 1)
    vals = draw(st.lists(st.floats(lo, hi), min_size=k, max_size=k))
    return PiecewiseConstantWeight(x, vals)
