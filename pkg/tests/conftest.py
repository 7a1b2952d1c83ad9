from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from exclgraph.graph import from_edge_list

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10, weighted=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    weights = None
    if weighted:
        weights = draw(
            st.lists(st.fractions(Fraction(1, 8), 5, max_denominator=8), min_size=n, max_size=n)
        )
    return from_edge_list(n, edges, weights)


def random_weighted_graph(rng: np.random.Generator, n: int, p: float = 0.5, weighted: bool = True):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [e for e in pairs if rng.random() < p]
    weights = [Fraction(int(k), 4) for k in rng.integers(4, 21, size=n)] if weighted else None
    return from_edge_list(n, edges, weights)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
