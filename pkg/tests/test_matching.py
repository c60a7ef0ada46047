import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gbsdual.algebra import BiPoly, UniPoly, parse_unipoly
from gbsdual.errors import BudgetExceededError, SizeLimitError
from gbsdual.formats import load_fixture
from gbsdual.gbs import gbs_by_definition
from gbsdual.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_edge_list,
    path_graph,
    prism,
    reduced_kronecker,
    tensor_with_loops_complete,
)
from gbsdual.matching import (
    MatchingPolynomial,
    blocked_matching_counts,
    match_count,
    matching_counts,
    matching_signed,
    matching_signless,
    matching_signless_bivariate,
    matching_signless_oracle,
)

from conftest import graphs, random_graph

Z = UniPoly((0, 1))


def test_small_examples():
    assert matching_signless(path_graph(3)).signless == Z**3 + 2 * Z
    assert matching_signless(from_edge_list(2, [(0, 1, 3)])).signless == Z**2 + 3
    assert matching_signless(cycle_graph(4)).signless == Z**4 + 4 * Z**2 + 2
    assert matching_signless(empty_graph(3)).signless == Z**3
    assert str(matching_signless(path_graph(3))) == "z^3 + 2*z"


@pytest.mark.parametrize("m", range(1, 9))
def test_complete_graph_hermite_coefficients(m):
    expect = [math.factorial(m) // (math.factorial(m - 2 * r) * math.factorial(r) * 2**r) for r in range(m // 2 + 1)]
    assert list(matching_signless(complete_graph(m)).counts) == expect


def test_cospectral_pair_matching_polynomials():
    target = parse_unipoly("x^10 - 20*x^8 + 130*x^6 - 312*x^4 + 229*x^2 - 24")
    for name in ("cospectral10_a.edges", "cospectral10_b.edges"):
        assert matching_signed(load_fixture(name)) == target


def test_tree_matching_polynomial_is_characteristic_polynomial():
    p4 = path_graph(4)
    char = np.poly(np.asarray(p4.rows, dtype=float))
    assert matching_signed(p4) == UniPoly([int(round(c)) for c in reversed(char)])
    assert matching_signed(p4) == parse_unipoly("x^4 - 3*x^2 + 1")


def test_collision_graph_difference():
    a = tensor_with_loops_complete(load_fixture("cospectral10_a.edges"), 2)
    b = tensor_with_loops_complete(load_fixture("cospectral10_b.edges"), 2)
    diff = matching_signed(a) - matching_signed(b)
    assert diff == parse_unipoly("-1536*x^4 + 3840*x^2 - 768")


def test_match_count_examples():
    assert match_count(cycle_graph(5), 0) == 1
    assert match_count(cycle_graph(4), 2) == 2
    assert match_count(complete_graph(6), 3) == 15
    with pytest.raises(ValueError):
        match_count(cycle_graph(4), 3)


def test_oracle_agrees_on_random_graphs():
    rng = random.Random(21)
    for _ in range(500):
        g = random_graph(rng, rng.randint(0, 8), density=rng.random())
        assert matching_signless(g) == matching_signless_oracle(g)


def test_oracle_size_limit():
    with pytest.raises(SizeLimitError):
        matching_signless_oracle(empty_graph(17))


@given(graphs(max_order=5), graphs(max_order=5))
def test_multiplicativity(g, h):
    assert matching_signless(disjoint_union(g, h)).signless == (
        matching_signless(g).signless * matching_signless(h).signless
    )


@given(graphs(min_order=0, max_order=8))
def test_structure_invariants(g):
    mp = matching_signless(g)
    p = mp.signless
    assert p.degree == g.order and p.coeff(g.order) == 1
    assert all(c == 0 for d, c in enumerate(p.coeffs) if (g.order - d) % 2)
    assert mp.signed == matching_signed(g)


def random_tree(rng, m):
    return from_edge_list(m, [(v, rng.randrange(v)) for v in range(1, m)])


def test_graphs_without_even_cycles_have_equal_matching_and_gbs():
    rng = random.Random(4)
    cases = [random_tree(rng, rng.randint(1, 10)) for _ in range(30)]
    cases += [cycle_graph(n) for n in (3, 5, 7, 9)]
    for g in cases:
        assert matching_signed(g) == gbs_by_definition(g).signed


def test_bivariate_on_prism():
    bp = matching_signless_bivariate(prism(empty_graph(1)))
    assert bp == BiPoly({(0, 2): 1, (1, 0): 1})
    plain = matching_signless_bivariate(cycle_graph(4))
    assert plain == BiPoly({(0, 4): 1, (0, 2): 4, (0, 0): 2})


def test_signless_rejects_poly_graph():
    with pytest.raises(TypeError):
        matching_signless(prism(path_graph(2)))


def test_matching_polynomial_evaluate():
    mp = MatchingPolynomial((1, 4, 2), 4)
    assert mp.evaluate(0.5, 0.1) == pytest.approx(0.5**4 + 4 * 0.1 * 0.25 + 2 * 0.01)


@given(graphs(max_order=4, loops=True), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_blocked_counts_match_reduced_kronecker(g, pattern):
    pattern = pattern[: g.order]
    if not any(pattern):
        pattern[0] = 1
    red = reduced_kronecker(g, pattern)
    got = blocked_matching_counts(g.weights, pattern)
    want = matching_counts(red.weights)
    assert list(got) + [0] * (len(want) - len(got)) == list(want) + [0] * (len(got) - len(want))


def test_blocked_counts_scale_to_large_blocks():
    g = Graph.from_matrix([[1, 1], [1, 1]])
    counts = blocked_matching_counts(g.weights, (30, 29))
    # residual is K_59: pick the unmatched vertex, then a perfect matching of K_58
    assert counts[29] == 59 * math.prod(range(1, 58, 2))


def test_budget_is_enforced(monkeypatch):
    monkeypatch.setenv("GBS_WORK_BUDGET", "10")
    with pytest.raises(BudgetExceededError):
        matching_signless(complete_graph(10))
    with pytest.raises(BudgetExceededError):
        matching_counts(complete_graph(10).weights, budget=5)
