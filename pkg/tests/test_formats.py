from fractions import Fraction

import pytest
from hypothesis import given

from gbsdual.errors import GraphFormatError
from gbsdual.formats import (
    detect_format,
    load_fixture,
    load_graph,
    parse_edge_list,
    parse_graph6,
    parse_json_graph,
    to_edge_list,
    to_graph6,
    to_json_graph,
)
from gbsdual.graphs import Graph, complete_graph, empty_graph, from_edge_list

from conftest import graphs


def test_graph6_smallest_examples():
    assert parse_graph6("A_").weights == ((0, 1), (1, 0))
    assert parse_graph6("A?") == empty_graph(2)
    assert parse_graph6(">>graph6<<A_").edge_count == 1


def test_graph6_five_vertices():
    g = parse_graph6("D?{")
    # body bytes '?' and '{' carry 0b000000 and 0b111100: four set bits
    bits = bin(ord("?") - 63).count("1") + bin(ord("{") - 63).count("1")
    assert g.order == 5 and g.edge_count == bits == 4
    assert [(i, j) for i, j, _ in g.edges()] == [(0, 4), (1, 4), (2, 4), (3, 4)]


def test_graph6_large_header_round_trip():
    g = from_edge_list(70, [(0, 69), (5, 6)])
    s = to_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s) == g


def test_graph6_errors_name_offsets():
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("D?")
    assert err.value.offset == 2
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("A`")  # padding bit set
    assert err.value.offset == 1
    with pytest.raises(GraphFormatError):
        parse_graph6("A \x01")
    with pytest.raises(GraphFormatError):
        parse_graph6("")
    with pytest.raises(GraphFormatError):
        parse_graph6("~??")


def test_to_graph6_rejects_weighted():
    with pytest.raises(ValueError):
        to_graph6(Graph.from_matrix([[0, 2], [2, 0]]))


@given(graphs(min_order=0, max_order=12, weighted=False))
def test_graph6_round_trip(g):
    s = to_graph6(g)
    back = parse_graph6(s)
    assert back == g
    assert back.edge_count == g.edge_count


def test_edge_list_parse():
    text = "# demo\norder 3\n1 2\n2 3 1/2  # weighted\n3 3 4\n"
    g = parse_edge_list(text)
    assert g.weights == ((0, 1, 0), (1, 0, Fraction(1, 2)), (0, Fraction(1, 2), 4))


def test_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_edge_list("1 2\n")
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list("order 2\n1 3\n")
    assert err.value.offset == len("order 2\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("order 3\n1 2\n2 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("order 3\n1 2 x\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("")


@given(graphs(min_order=0, max_order=7, loops=True))
def test_edge_list_round_trip(g):
    assert parse_edge_list(to_edge_list(g)) == g


@given(graphs(min_order=0, max_order=7, loops=True))
def test_json_round_trip(g):
    assert parse_json_graph(to_json_graph(g)) == g


def test_json_errors():
    with pytest.raises(GraphFormatError):
        parse_json_graph("{")
    with pytest.raises(GraphFormatError):
        parse_json_graph('{"order": 3, "weights": [[0, 1], [1, 0]]}')
    with pytest.raises(GraphFormatError):
        parse_json_graph('{"weights": [[0, 1], [2, 0]]}')


def test_detect_format():
    assert detect_format("a.g6") == "graph6"
    assert detect_format("a.json") == "json"
    assert detect_format("a.edges") == "edges"


def test_fixtures_load():
    assert load_fixture("k3.edges") == complete_graph(3)
    assert load_fixture("p2.edges") == complete_graph(2)
    for name in ("cospectral10_a.edges", "cospectral10_b.edges"):
        g = load_fixture(name)
        assert g.order == 10 and g.edge_count == 20
        assert all(sum(r) == 4 for r in g.weights)
    assert load_fixture("mixed6.json").order == 6


def test_load_graph_falls_back_to_bundled_fixture(tmp_path):
    assert load_graph("fixtures/k3.edges") == complete_graph(3)
    with pytest.raises(FileNotFoundError):
        load_graph(tmp_path / "missing.edges")
    p = tmp_path / "g.g6"
    p.write_text("A_\n")
    assert load_graph(p).edge_count == 1
