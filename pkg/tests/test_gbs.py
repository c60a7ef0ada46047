import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gbsdual.algebra import BiPoly, UniPoly, parse_bipoly, parse_unipoly
from gbsdual.errors import DimensionError, SizeLimitError
from gbsdual.formats import load_fixture
from gbsdual.gbs import (
    closed_form_gbs,
    dgbs_by_definition,
    dgbs_by_duality,
    gbs_by_definition,
    gbs_by_prism,
    gbs_coefficient,
    induced_gbs,
    mdgbs_by_definition,
    mdgbs_by_duality,
    prism_evaluations,
    recover_gbs_from_evaluations,
    signed_difference,
)
from gbsdual.graphs import (
    book_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    path_graph,
    split_blocks,
    tensor_with_loops_complete,
)
from gbsdual.matching import matching_signed, matching_signless

from conftest import graphs, small_rationals

X = UniPoly((0, 1))


def square_matrices(m):
    return st.lists(st.lists(small_rationals, min_size=m, max_size=m), min_size=m, max_size=m)


# -- GBS ------------------------------------------------------------------------

def test_gbs_definition_examples():
    c5 = cycle_graph(5)
    assert gbs_by_definition(c5).signed == matching_signed(c5)
    c6 = cycle_graph(6)
    assert gbs_by_definition(c6).signed == matching_signed(c6) - 2
    g1 = load_fixture("cospectral10_a.edges")
    assert gbs_by_definition(g1).signed == parse_unipoly("x^10 - 20*x^8 + 150*x^6 - 588*x^4 + 1233*x^2 - 576")


def test_gbs_prism_examples():
    assert gbs_by_prism(empty_graph(1)).signless == X
    assert gbs_by_prism(complete_graph(3)).signless == X**3 + 3 * X
    assert gbs_by_prism(path_graph(2)).signless == X**2 + 1
    assert str(gbs_by_prism(path_graph(2))) == "x^2 + 1"


def test_gbs_definition_cap():
    with pytest.raises(SizeLimitError):
        gbs_by_definition(empty_graph(21))
    with pytest.raises(SizeLimitError):
        gbs_by_definition(empty_graph(6), cap=5)


def test_gbs_coefficient_examples():
    g = cycle_graph(7)
    assert gbs_coefficient(g, 0) == 1
    assert gbs_coefficient(g, 1) == g.edge_count
    six = load_fixture("six_vertex.edges")
    assert gbs_coefficient(tensor_with_loops_complete(six, 3), 4) == 384912
    with pytest.raises(ValueError):
        gbs_coefficient(g, 4)


def test_gbs_coefficient_enumeration_path_matches_table(monkeypatch):
    import gbsdual.gbs as gbs_mod

    g = tensor_with_loops_complete(cycle_graph(5), 2)
    table = [gbs_coefficient(g, r) for r in range(6)]
    monkeypatch.setattr(gbs_mod, "TABLE_LIMIT", 0)
    assert [gbs_coefficient(g, r) for r in range(6)] == table
    big = tensor_with_loops_complete(cycle_graph(5), 5)
    assert big.order == 25
    assert gbs_coefficient(big, 1) == big.edge_count


@given(graphs(max_order=8))
def test_gbs_coefficients_agree(g):
    poly = gbs_by_definition(g)
    assert poly.coefficients() == [gbs_coefficient(g, r) for r in range(g.order // 2 + 1)]
    assert poly.coefficient(1) == sum(w * w for _, _, w in g.edges())


@given(graphs(max_order=7))
def test_gbs_definition_equals_prism_hafnian(g):
    assert gbs_by_definition(g) == gbs_by_prism(g)


@given(graphs(max_order=5), graphs(max_order=4))
def test_gbs_multiplicative(g, h):
    assert gbs_by_definition(disjoint_union(g, h)).signless == (
        gbs_by_definition(g).signless * gbs_by_definition(h).signless
    )
    assert gbs_by_definition(disjoint_union(g, h)).signed == (
        gbs_by_definition(g).signed * gbs_by_definition(h).signed
    )


@given(graphs(max_order=7))
def test_gbs_derivative_identity(g):
    m = g.order
    rest = [induced_subgraph(g, [u for u in range(m) if u != v]) for v in range(m)]
    for attr in ("signed", "signless"):
        lhs = getattr(gbs_by_definition(g), attr).derivative()
        rhs = sum((getattr(gbs_by_definition(h), attr) for h in rest), UniPoly())
        assert lhs == rhs


def test_induced_gbs_and_signed_difference():
    g = cycle_graph(6)
    assert induced_gbs(g, [0, 1, 2]) == gbs_by_definition(path_graph(3))
    p = gbs_by_definition(g)
    assert signed_difference(p, p) == 0


# -- recovery from evaluations ----------------------------------------------------

def test_recover_examples():
    k3 = complete_graph(3)
    assert recover_gbs_from_evaluations(3, prism_evaluations(k3, [1, 2])).signless == X**3 + 3 * X
    single = empty_graph(1)
    assert recover_gbs_from_evaluations(1, prism_evaluations(single, [1])).signless == X
    p2 = path_graph(2)
    assert recover_gbs_from_evaluations(2, prism_evaluations(p2, [1, 2, 3])).signless == X**2 + 1


def test_recover_errors():
    k3 = complete_graph(3)
    with pytest.raises(ValueError):
        recover_gbs_from_evaluations(3, prism_evaluations(k3, [1, -1]))
    with pytest.raises(ValueError):
        recover_gbs_from_evaluations(3, prism_evaluations(k3, [1]))
    with pytest.raises(ValueError):
        recover_gbs_from_evaluations(3, [(0, 0), (1, 4)])
    with pytest.raises(ArithmeticError):
        recover_gbs_from_evaluations(2, [(1, 2), (2, 5), (3, 11)])


@given(graphs(max_order=7), st.data())
def test_recover_is_exact(g, data):
    need = g.order // 2 + 1
    nodes = data.draw(st.lists(st.fractions(Fraction(1, 4), 5, max_denominator=4), min_size=need,
                               max_size=need + 1, unique_by=lambda v: v * v))
    assert recover_gbs_from_evaluations(g.order, prism_evaluations(g, nodes)) == gbs_by_definition(g)


# -- closed forms -----------------------------------------------------------------

def test_closed_form_examples():
    signed = lambda *a: closed_form_gbs(*a).signed  # noqa: E731
    assert signed("complete_bipartite", 2, 2) == parse_unipoly("x^4 - 4*x^2 + 4")
    assert signed("book", 2) == (X**2 - 1) * (X**2 - 3) ** 2
    assert signed("cycle", 4) == signed("complete_bipartite", 2, 2)
    with pytest.raises(ValueError):
        closed_form_gbs("cycle", 2)
    with pytest.raises(ValueError):
        closed_form_gbs("petersen", 10)
    with pytest.raises(ValueError):
        closed_form_gbs("complete", 0)


def test_closed_forms_match_definition_up_to_order_12():
    for n in range(3, 13):
        assert closed_form_gbs("cycle", n) == gbs_by_definition(cycle_graph(n))
    for n in range(1, 13):
        assert closed_form_gbs("complete", n) == gbs_by_definition(complete_graph(n))
    for m in range(1, 12):
        for n in range(1, 13 - m):
            assert closed_form_gbs("complete_bipartite", m, n) == gbs_by_definition(complete_bipartite(m, n))
    for n in range(1, 6):
        assert closed_form_gbs("book", n) == gbs_by_definition(book_graph(n))


# -- displaced GBS ----------------------------------------------------------------

def test_dgbs_examples():
    single = empty_graph(1)
    expect = parse_bipoly("x + z^2")
    assert dgbs_by_definition(single).poly == dgbs_by_duality(single).poly == expect
    k2 = path_graph(2)
    assert dgbs_by_definition(k2).poly == dgbs_by_duality(k2).poly
    assert dgbs_by_duality(k2).poly == matching_signless_k2_prism()


def matching_signless_k2_prism():
    # 4-cycle with edges 1, x, 1, x: two perfect matchings (1*1 and x*x)
    return parse_bipoly("z^4 + 2*x*z^2 + 2*z^2 + x^2 + 1")


@pytest.mark.parametrize("m", range(1, 6))
def test_dgbs_complete_graph_coefficients(m):
    d = dgbs_by_definition(complete_graph(m))
    for s in range(m + 1):
        mu = matching_signless(complete_graph(s)).signless if s else UniPoly((1,))
        assert d.coefficient(s) == math.comb(m, s) * mu * mu


def test_dgbs_witness_pair():
    a = load_fixture("cospectral10_a.edges")
    b = load_fixture("cospectral10_b.edges")
    want = parse_bipoly("32*x^3*z^2 + 16*x^2*z^2 + 32*x^2*z^4 + 32*x*z^2")
    assert dgbs_by_duality(a).poly - dgbs_by_duality(b).poly == want
    assert dgbs_by_definition(a).poly - dgbs_by_definition(b).poly == want


@given(graphs(max_order=6))
def test_dgbs_at_zero_displacement_is_gbs(g):
    assert dgbs_by_definition(g).at_z_zero() == gbs_by_definition(g).signless


@given(graphs(max_order=6))
def test_dgbs_duality(g):
    d = dgbs_by_definition(g)
    assert d.poly == dgbs_by_duality(g).poly
    assert d.poly.terms.get((g.order, 0)) == 1


@given(graphs(max_order=4), graphs(max_order=3))
def test_dgbs_multiplicative(g, h):
    assert dgbs_by_duality(disjoint_union(g, h)).poly == dgbs_by_duality(g).poly * dgbs_by_duality(h).poly


# -- mixed displaced GBS --------------------------------------------------------

def mixed_example():
    return split_blocks(load_fixture("mixed6.json"))


def test_mdgbs_worked_example():
    a, b = mixed_example()
    want = parse_bipoly("z^6 + 10*z^4 + 3*x*z^4 + 21*z^2 + 11*x*z^2 + 3*x^2*z^2 + 5 + 4*x + x^2 + x^3")
    d1 = mdgbs_by_definition(a, b)
    d2 = mdgbs_by_duality(a, b)
    assert d1.poly == d2.poly == want
    z = UniPoly((0, 1))
    assert d1.coefficient(0) == 1
    assert d1.coefficient(1) == 1 + 3 * z**2
    assert d1.coefficient(2) == 4 + 11 * z**2 + 3 * z**4
    assert d1.coefficient(3) == 5 + 21 * z**2 + 10 * z**4 + z**6


def test_mdgbs_small_examples():
    zero = empty_graph(1)
    assert mdgbs_by_definition(zero, zero).poly == parse_bipoly("x + z^2")
    k2 = path_graph(2)
    assert mdgbs_by_duality(k2, empty_graph(2)).poly == dgbs_by_duality(k2).poly
    with pytest.raises(DimensionError):
        mdgbs_by_definition(k2, empty_graph(3))


@given(graphs(max_order=5))
def test_mdgbs_with_zero_b_is_dgbs(g):
    assert mdgbs_by_definition(g, empty_graph(g.order)).poly == dgbs_by_definition(g).poly


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(graphs(min_order=m, max_order=m, loops=True),
                                                      square_matrices(m))))
def test_mdgbs_duality_with_arbitrary_b(pair):
    a, b = pair
    assert mdgbs_by_definition(a, b).poly == mdgbs_by_duality(a, b).poly


def test_dgbs_coefficient_range():
    with pytest.raises(ValueError):
        dgbs_by_definition(path_graph(2)).coefficient(3)
    assert isinstance(dgbs_by_duality(path_graph(2)).poly, BiPoly)
