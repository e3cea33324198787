import pytest
from hypothesis import given, settings, strategies as st

from zfgrundy import (BudgetError, Graph, GuardError, RuleApplication, apply_rule,
                      applicable_rules, complete_graph, cycle_graph, gnp_graph,
                      greedy_closure, is_applicable, is_forcing_set,
                      min_forcing_bruteforce, parse_rules, path_graph,
                      replay_trace, rules_label)


def test_parse_rules():
    assert parse_rules("ztd") == frozenset("ztd")
    assert rules_label(parse_rules("dz")) == "zd"
    for bad in ("", "q", "zq"):
        with pytest.raises(ValueError):
            parse_rules(bad)


def test_applicability_by_hand():
    # path 0-1-2, vertex 0 blue: Z at 0 colors 1, and both whites have
    # exactly one white neighbor so each hosts a T
    g = path_graph(3)
    apps = applicable_rules(g, 0b001, parse_rules("ztd"))
    assert apps == [RuleApplication("z", 0, 1), RuleApplication("t", 1, 2),
                    RuleApplication("t", 2, 1)]
    assert is_applicable(g, 0b001, RuleApplication("z", 0, 1))
    assert not is_applicable(g, 0b011, RuleApplication("z", 0, 1))
    # D fires only for a white vertex whose whole neighborhood is blue
    assert is_applicable(g, 0b101, RuleApplication("d", 1, 1))
    assert not is_applicable(g, 0b001, RuleApplication("d", 1, 1))


def test_isolated_vertex_needs_d():
    g = Graph(2, [])
    assert not is_forcing_set(g, 0, parse_rules("zt")).forced
    res = is_forcing_set(g, 0, parse_rules("d"))
    assert res.forced and len(res.trace) == 2


def test_apply_rule_checks():
    g = path_graph(3)
    with pytest.raises(ValueError):
        apply_rule(g, 0b010, RuleApplication("z", 0, 1))
    assert apply_rule(g, 0b001, RuleApplication("z", 0, 1)) == 0b011


def test_greedy_closure_monotone_fixpoint():
    g = path_graph(6)
    final, trace = greedy_closure(g, 1, parse_rules("z"))
    assert final == g.full_mask() and len(trace) == 5
    final2, _ = greedy_closure(g, 0b000100, parse_rules("z"))
    assert final2 != g.full_mask()


def test_replay_rejects_bad_step():
    g = path_graph(3)
    trace = [RuleApplication("z", 0, 1), RuleApplication("z", 0, 2)]
    final, bad = replay_trace(g, 0b001, trace)
    assert bad == 1 and final == 0b011


# minimum forcing sizes frozen from the standard families: one endpoint
# forces a path, two adjacent vertices force a cycle, and a clique needs
# all but one vertex under the plain rule
@pytest.mark.parametrize("g,rules,want", [
    (path_graph(6), "z", 1),
    (cycle_graph(6), "z", 2),
    (complete_graph(5), "z", 4),
    (complete_graph(5), "zd", 4),
    (path_graph(4), "d", 2),     # vertex cover of P4
    (cycle_graph(5), "d", 3),    # vertex cover of C5
])
def test_min_forcing_known_values(g, rules, want):
    k, s, trace = min_forcing_bruteforce(g, parse_rules(rules))
    assert k == want
    final, bad = replay_trace(g, s, trace, parse_rules(rules))
    assert bad is None and final == g.full_mask()


def test_forcing_non_monotone_rule_search():
    # 0-1-2 path: {} with T only gets one step in, then the actor is stuck white
    g = path_graph(3)
    res = is_forcing_set(g, 0, parse_rules("t"))
    assert not res.forced
    assert res.maximal_blue  # reachable frontier is reported


def test_guards():
    with pytest.raises(GuardError):
        min_forcing_bruteforce(gnp_graph(25, 0.3, 1), parse_rules("z"))
    with pytest.raises(BudgetError):
        min_forcing_bruteforce(complete_graph(12), parse_rules("zt"),
                               budget=50)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2 ** 32 - 1),
       st.sampled_from(["z", "zd", "ztd", "zt", "td"]))
def test_min_forcing_witness_always_replays(n, seed, rules):
    g = gnp_graph(n, 0.45, seed)
    rs = parse_rules(rules)
    k, s, trace = min_forcing_bruteforce(g, rs)
    assert s.bit_count() == k
    final, bad = replay_trace(g, s, trace, rs)
    assert bad is None and final == g.full_mask()
