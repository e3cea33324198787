import pytest
from hypothesis import given, settings, strategies as st

from zfgrundy import (BudgetError, Graph, complete_graph, cycle_graph,
                      gnp_graph, heuristic_decomposition, make_nice,
                      min_forcing_bruteforce, path_graph, replay_trace, solve,
                      solve_by_solution_size)
from conftest import ALL_RULE_SETS


def popcount(mask):
    return bin(mask).count("1")


# frozen from the brute-force search (and by hand for the paths)
@pytest.mark.parametrize("g,rules,want", [
    (path_graph(6), "z", 1),
    (cycle_graph(6), "z", 2),
    (complete_graph(5), "z", 4),
    (complete_graph(5), "zd", 4),
    (path_graph(4), "d", 2),
    (path_graph(4), "zt", 0),
    (cycle_graph(5), "d", 3),
    (Graph(3, []), "d", 0),
    (Graph(3, []), "z", 3),
])
def test_solve_known_values(g, rules, want):
    res = solve(g, rules)
    assert res.k == want
    assert popcount(res.s_mask) == want
    final, bad = replay_trace(g, res.s_mask, res.trace, frozenset(rules))
    assert bad is None and final == g.full_mask()


def test_single_vertex():
    res = solve(Graph(1), "z")
    assert res.k == 1 and res.s_mask == 1 and res.trace == []


def test_stats_shape():
    res = solve(cycle_graph(6), "zt")
    assert res.stats["rules"] == "zt"
    assert res.stats["width"] >= 2
    assert res.stats["tables"] > 0 and res.stats["stored"] > 0


def test_rules_argument_forms():
    g = cycle_graph(5)
    assert solve(g, "zd").k == solve(g, frozenset("dz")).k
    with pytest.raises(ValueError):
        solve(g, "")
    with pytest.raises(ValueError):
        solve(g, frozenset("zq"))


def test_supplied_decompositions_agree():
    g = gnp_graph(9, 0.35, seed=5)
    want = solve(g, "zd").k
    td = heuristic_decomposition(g, "min_degree")
    assert solve(g, "zd", ntd=td).k == want
    assert solve(g, "zd", ntd=make_nice(g, td)).k == want


def test_matches_bruteforce_on_small_catalogue(connected):
    for n in range(2, 6):
        for g in connected[n]:
            for rules in ALL_RULE_SETS:
                want, _, _ = min_forcing_bruteforce(g, frozenset(rules))
                assert solve(g, rules).k == want, (n, rules, g.edges())


# n stops at 6: the t-rule state space on dense 7-vertex graphs makes
# single dp calls take tens of seconds, which is acceptance-test territory
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10 ** 6),
       st.sampled_from(ALL_RULE_SETS))
def test_matches_bruteforce_random(n, seed, rules):
    g = gnp_graph(n, 0.4, seed=seed)
    want, _, _ = min_forcing_bruteforce(g, frozenset(rules))
    res = solve(g, rules)
    assert res.k == want
    final, bad = replay_trace(g, res.s_mask, res.trace, frozenset(rules))
    assert bad is None and final == g.full_mask()


def test_budget():
    with pytest.raises(BudgetError):
        solve(complete_graph(9), "zt", budget=200)


def test_long_path_stays_cheap():
    res = solve(path_graph(300), "z")
    assert res.k == 1 and len(res.trace) == 299


def test_size_decision_rejects_unbounded_rule_sets():
    g = path_graph(4)
    for rules in ("t", "zt", "ztd", "td", "d"):
        with pytest.raises(ValueError):
            solve_by_solution_size(g, 1, rules)


def test_size_decision_outcomes():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert solve_by_solution_size(star, -1, "z").reason == "nothing fits"

    # width exceeds the bound, so no decomposition is ever built
    dec = solve_by_solution_size(complete_graph(5), 2, "z")
    assert not dec.yes and dec.reason == "treewidth" and dec.k_min is None

    # width fits but the optimum does not
    dec = solve_by_solution_size(star, 1, "z")
    assert not dec.yes and dec.reason == "dp" and dec.k_min == 2

    dec = solve_by_solution_size(star, 2, "z")
    assert dec.yes and dec.reason == "dp" and dec.k_min == 2
    final, bad = replay_trace(star, dec.s_mask, dec.trace, frozenset("z"))
    assert bad is None and final == star.full_mask()


def test_size_decision_matches_bruteforce(connected):
    for g in connected[5]:
        for rules in ("z", "zd"):
            want, _, _ = min_forcing_bruteforce(g, frozenset(rules))
            for k in (want - 1, want):
                dec = solve_by_solution_size(g, k, rules)
                assert dec.yes == (k >= want)
