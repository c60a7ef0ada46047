import sys
import itertools
import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gbsdual.graphs import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def graphs(draw, min_order=1, max_order=6, weighted=True, loops=False):
    """Random symmetric rational graphs (or 0/1 simple graphs)."""
    m = draw(st.integers(min_order, max_order))
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            if i == j and not loops:
                continue
            w = draw(small_rationals) if weighted else draw(st.integers(0, 1))
            rows[i][j] = rows[j][i] = w
    return Graph.from_matrix(rows)


def random_graph(rng, m, density=0.6, weighted=True, loops=False):
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            if i == j and not loops:
                continue
            if rng.random() < density:
                w = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if weighted else 1
                rows[i][j] = rows[j][i] = w
    return Graph.from_matrix(rows)


def all_simple_graphs(m):
    """Every labelled simple graph on ``m`` vertices."""
    pairs = list(itertools.combinations(range(m), 2))
    for bits in range(1 << len(pairs)):
        rows = [[0] * m for _ in range(m)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rows[i][j] = rows[j][i] = 1
        yield Graph.from_matrix(rows)


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
