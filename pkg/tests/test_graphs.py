import pytest
from hypothesis import given, strategies as st

from zfgrundy import (Bipartition, Graph, Hypergraph, ParseError,
                      caterpillar_graph, complete_graph, cycle_graph,
                      gnp_graph, iter_bits, mask_of, neighborhood,
                      parse_graph, parse_hypergraph, path_graph, write_graph,
                      write_hypergraph)


def test_basic_adjacency():
    g = Graph(4, [(0, 1), (1, 2)])
    assert g.neighbors(1) == [0, 2]
    assert g.degree(1) == 2 and g.degree(3) == 0
    assert g.m == 2
    assert g.has_isolated_vertices()
    assert neighborhood(g, 1) == 0b101
    assert neighborhood(g, 1, closed=True) == 0b111


def test_add_edge_rejects_junk():
    g = Graph(3)
    with pytest.raises(ValueError):
        g.add_edge(1, 1)
    with pytest.raises(ValueError):
        g.add_edge(0, 3)
    g.add_edge(0, 1)
    g.add_edge(1, 0)  # duplicate collapses
    assert g.m == 1


def test_connectivity():
    assert path_graph(5).is_connected()
    assert not Graph(3, [(0, 1)]).is_connected()
    assert Graph(0).is_connected()


def test_iter_bits_mask_of_roundtrip():
    vs = [0, 3, 5]
    assert list(iter_bits(mask_of(vs))) == vs


def test_constructors():
    assert path_graph(1).m == 0
    assert cycle_graph(3).m == 3
    assert complete_graph(5).m == 10
    with pytest.raises(ValueError):
        cycle_graph(2)
    cat = caterpillar_graph(12, seed=7)
    assert cat.n == 12 and cat.m == 11 and cat.is_connected()
    # same seed, same graph; different seed, (almost surely) different legs
    assert caterpillar_graph(12, seed=7) == cat
    g1, g2 = gnp_graph(9, 0.5, 11), gnp_graph(9, 0.5, 11)
    assert g1 == g2


def test_parse_pace_and_plain():
    pace = "c comment\np tw 3 2\n1 2\n2 3\n"
    plain = "3\n0 1\n1 2\n"
    assert parse_graph(pace) == parse_graph(plain)


def test_parse_rejects_malformed():
    for bad in ("", "p tw x y\n", "p tw 2 1\n1 5\n", "2\n0 0\n", "2\n0 2\n"):
        with pytest.raises(ParseError):
            parse_graph(bad)


@given(st.integers(1, 9), st.integers(0, 2 ** 32 - 1))
def test_graph_roundtrip(n, seed):
    g = gnp_graph(n, 0.4, seed)
    assert parse_graph(write_graph(g)) == g


def test_bipartition():
    g = Graph(4, [(0, 2), (0, 3), (1, 2)])
    bp = Bipartition(4, [0, 1])
    assert bp.is_valid_for(g)
    assert bp.side_b() == [2, 3]
    g.add_edge(0, 1)
    assert not bp.is_valid_for(g)


def test_hypergraph_roundtrip():
    h = Hypergraph(4, [[0, 1], [], [1, 2, 3]])
    h2 = parse_hypergraph(write_hypergraph(h))
    assert h2 == h
    with pytest.raises(ValueError):
        Hypergraph(2, [[0, 5]])
    with pytest.raises(ParseError):
        parse_hypergraph("2 2\n0 1\n")  # promises two edges, has one
