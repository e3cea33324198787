"""Shared fixtures: canonical graph enumerations and conversion helpers.

The isomorphism-free catalogue (every graph up to 8 vertices, one labeled
representative per class) is cached in tests/data/graphs_upto8.g6 and
regenerated on the fly when the cache is missing or fails its count check.
The known class counts double as a self-test of the enumeration.
"""

import pathlib

import networkx as nx
import pytest

from zfgrundy import Graph

DATA = pathlib.Path(__file__).parent / "data"

# graphs on 1..8 vertices up to isomorphism
ISO_CLASS_COUNTS = [1, 2, 4, 11, 34, 156, 1044, 12346]
CONNECTED_COUNTS = [1, 1, 2, 6, 21, 112, 853, 11117]


def from_nx(h):
    g = Graph(h.number_of_nodes())
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    for u, v in h.edges():
        g.add_edge(idx[u], idx[v])
    return g


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _nx_invariant(g):
    degs = sorted(d for _, d in g.degree())
    tri = sorted(nx.triangles(g).values())
    prof = sorted(tuple(sorted(g.degree(u) for u in g[v])) for v in g)
    return (g.number_of_nodes(), g.number_of_edges(),
            tuple(degs), tuple(tri), tuple(map(tuple, prof)))


def _enumerate_isofree(max_n):
    """One representative per isomorphism class, by vertex extension.

    Every n-vertex graph minus its last vertex is an (n-1)-vertex graph, so
    extending each class representative by one vertex with every possible
    neighborhood covers all classes; duplicates are filtered inside cheap
    invariant buckets with VF2.
    """
    levels = {1: [nx.empty_graph(1)]}
    for n in range(2, max_n + 1):
        buckets = {}
        new = n - 1
        for parent in levels[n - 1]:
            for bits in range(1 << new):
                h = parent.copy()
                h.add_node(new)
                for u in range(new):
                    if (bits >> u) & 1:
                        h.add_edge(u, new)
                reps = buckets.setdefault(_nx_invariant(h), [])
                if not any(nx.is_isomorphic(h, r) for r in reps):
                    reps.append(h)
        levels[n] = [g for reps in buckets.values() for g in reps]
    return levels


def _load_catalogue():
    path = DATA / "graphs_upto8.g6"
    if path.exists():
        by_n = {n: [] for n in range(1, 9)}
        for line in path.read_bytes().splitlines():
            if line:
                h = nx.from_graph6_bytes(line)
                by_n[h.number_of_nodes()].append(from_nx(h))
        if [len(by_n[n]) for n in range(1, 9)] == ISO_CLASS_COUNTS:
            return by_n
    levels = _enumerate_isofree(8)
    path.parent.mkdir(exist_ok=True)
    with path.open("wb") as fh:
        for n in range(1, 9):
            for h in levels[n]:
                fh.write(nx.to_graph6_bytes(h, header=False))
    by_n = {n: [from_nx(h) for h in levels[n]] for n in range(1, 9)}
    assert [len(by_n[n]) for n in range(1, 9)] == ISO_CLASS_COUNTS
    return by_n


@pytest.fixture(scope="session")
def isofree():
    """dict n -> all graphs on n vertices, one per isomorphism class."""
    return _load_catalogue()


@pytest.fixture(scope="session")
def connected(isofree):
    """dict n -> connected members of the catalogue, counts verified."""
    out = {n: [g for g in isofree[n] if g.is_connected()]
           for n in range(1, 9)}
    assert [len(out[n]) for n in range(1, 9)] == CONNECTED_COUNTS
    return out


ALL_RULE_SETS = ("z", "t", "d", "zt", "zd", "td", "ztd")
