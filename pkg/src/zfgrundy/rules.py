"""Color-change rules (Z, T, D) and forcing-set machinery.

A coloring is an int bitmask of blue vertices. The three rules:

* Z: a blue actor with exactly one white neighbor colors that neighbor.
* T: a white actor with exactly one white neighbor colors that neighbor.
* D: a white actor all of whose neighbors are blue colors itself.

Z and D are monotone (an applicable rule stays applicable until its target
gets colored), so for rule sets without T a single greedy fixpoint decides
forcing. T-rules die when their actor is colored, so with T in the rule set
the engine searches over reachable blue sets with memoization.
"""

from collections import namedtuple

from .errors import BudgetError, GuardError

Z, T, D = "z", "t", "d"
_KIND_ORDER = {Z: 0, T: 1, D: 2}

RuleApplication = namedtuple("RuleApplication", ["kind", "actor", "target"])

ForcingResult = namedtuple("ForcingResult", ["forced", "trace", "maximal_blue"])


def parse_rules(s):
    """Normalize a rule set given as a string like "ztd" or an iterable."""
    rs = frozenset(s)
    if not rs or not rs <= {Z, T, D}:
        raise ValueError(f"rule set must be a non-empty subset of z/t/d, got {s!r}")
    return rs


def rules_label(rules):
    return "".join(k for k in (Z, T, D) if k in rules)


def applicable_rules(g, blue, rules):
    """All applications legal at this coloring, ordered by actor id.

    Per actor at most one rule fires (Z needs a blue actor; T and D need a
    white actor with exactly one resp. zero white neighbors), so ordering by
    actor already realizes the z < t < d greedy priority.
    """
    white = g.full_mask() & ~blue
    adj = g.adj
    out = []
    use_z, use_t, use_d = Z in rules, T in rules, D in rules
    for v in range(g.n):
        wn = adj[v] & white
        if (blue >> v) & 1:
            if use_z and wn and wn & (wn - 1) == 0:
                out.append(RuleApplication(Z, v, wn.bit_length() - 1))
        else:
            if wn == 0:
                if use_d:
                    out.append(RuleApplication(D, v, v))
            elif use_t and wn & (wn - 1) == 0:
                out.append(RuleApplication(T, v, wn.bit_length() - 1))
    return out


def is_applicable(g, blue, app, rules=None):
    if rules is not None and app.kind not in rules:
        return False
    white = g.full_mask() & ~blue
    wn = g.adj[app.actor] & white
    if app.kind == Z:
        return bool((blue >> app.actor) & 1) and wn == 1 << app.target
    if app.kind == T:
        return not (blue >> app.actor) & 1 and wn == 1 << app.target
    if app.kind == D:
        return (app.actor == app.target and not (blue >> app.actor) & 1
                and wn == 0)
    raise ValueError(f"unknown rule kind {app.kind!r}")


def apply_rule(g, blue, app, rules=None):
    if not is_applicable(g, blue, app, rules):
        raise ValueError(f"rule {app} not applicable at coloring {blue:#x}")
    return blue | (1 << app.target)


def replay_trace(g, start_blue, trace, rules=None):
    """Apply a trace step by step; returns (final_blue, first_bad_index).

    first_bad_index is None when every step was applicable.
    """
    blue = start_blue
    for i, app in enumerate(trace):
        if not is_applicable(g, blue, app, rules):
            return blue, i
        blue |= 1 << app.target
    return blue, None


def greedy_closure(g, blue, rules):
    """Repeatedly apply the first applicable rule; returns (blue, trace)."""
    trace = []
    while True:
        apps = applicable_rules(g, blue, rules)
        if not apps:
            return blue, trace
        app = apps[0]
        trace.append(app)
        blue |= 1 << app.target
        if blue == g.full_mask():
            return blue, trace


def _maximal_masks(masks):
    out = []
    for m in sorted(masks, key=int.bit_count, reverse=True):
        if not any(m | o == o for o in out):
            out.append(m)
    return out


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit):
        self.left = limit

    def spend(self, amount=1):
        self.left -= amount
        if self.left < 0:
            raise BudgetError("search budget exhausted")


def is_forcing_set(g, s, rules, budget=2 ** 22):
    """Decide whether blue set s forces the whole graph under the rule set.

    Returns ForcingResult(forced, trace, maximal_blue). On YES the trace
    replays from s to the all-blue coloring. On NO maximal_blue lists the
    inclusion-maximal blue sets reachable from s.
    """
    full = g.full_mask()
    if s == full:
        return ForcingResult(True, [], None)
    if T not in rules:
        final, trace = greedy_closure(g, s, rules)
        if final == full:
            return ForcingResult(True, trace, None)
        return ForcingResult(False, None, [final])
    bud = budget if isinstance(budget, _Budget) else _Budget(budget)
    parent = {s: None}
    stack = [s]
    while stack:
        cur = stack.pop()
        for app in applicable_rules(g, cur, rules):
            nxt = cur | (1 << app.target)
            if nxt in parent:
                continue
            parent[nxt] = (cur, app)
            if nxt == full:
                trace = []
                state = nxt
                while parent[state] is not None:
                    prev, app2 = parent[state]
                    trace.append(app2)
                    state = prev
                trace.reverse()
                return ForcingResult(True, trace, None)
            bud.spend()
            stack.append(nxt)
    return ForcingResult(False, None, _maximal_masks(parent.keys()))


def _popcount_subsets(n, k):
    """All n-bit masks with k set bits, ascending (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    limit = 1 << n
    m = (1 << k) - 1
    while m < limit:
        yield m
        low = m & -m
        ripple = m + low
        m = ripple | (((m ^ ripple) >> 2) // low)


def min_forcing_bruteforce(g, rules, max_n=20, budget=2 ** 22):
    """Smallest forcing set by exhaustive ascending-size enumeration.

    Returns (k, s_mask, trace). The budget is shared across the whole
    enumeration; expect GuardError above max_n vertices.
    """
    if g.n > max_n:
        raise GuardError(f"brute force guard: n={g.n} exceeds max_n={max_n}")
    bud = _Budget(budget)
    for k in range(g.n + 1):
        for s in _popcount_subsets(g.n, k):
            bud.spend()
            res = is_forcing_set(g, s, rules, budget=bud)
            if res.forced:
                return k, s, res.trace
    raise AssertionError("V(G) itself always forces")  # pragma: no cover
