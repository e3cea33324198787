"""Expansion sequences and their correspondence with forcing sets.

A sequence v_1, ..., v_k is valid for a variant when each v_i has a nonempty
footprint: a vertex in its target neighborhood not yet blocked by the blocker
neighborhoods of earlier members. The five variants differ only in whether
the target / blocker neighborhoods are open or closed, plus one extra
restriction for the local variant (the witness must be a sequence member seen
so far, v_i itself included).

Graphs with isolated vertices are rejected: a closed-neighborhood footprint
of an isolated vertex would degenerate and the forcing correspondence breaks.

The heavy traffic is ``sequence_to_forcing`` / ``forcing_to_sequence``,
which realize the bijection between valid sequences of length k and forcing
sets of size n - k for the matching rule set.
"""

from collections import namedtuple

from .errors import BudgetError, GuardError
from .graphs import iter_bits, mask_of, neighborhood
from .rules import D, RuleApplication, T, Z, replay_trace

GD = "gd"
TGD = "tgd"
ZSEQ = "z"
LSEQ = "l"
LOCALL = "locall"

VARIANTS = (GD, TGD, ZSEQ, LSEQ, LOCALL)

# (target closed?, blocker closed?) per variant
_BRACKETS = {
    GD: (True, True),
    TGD: (False, False),
    ZSEQ: (False, True),
    LSEQ: (True, False),
    LOCALL: (True, False),
}

_VARIANT_RULES = {
    GD: frozenset((Z, D)),
    TGD: frozenset((Z, T)),
    ZSEQ: frozenset((Z,)),
    LSEQ: frozenset((Z, T, D)),
    LOCALL: frozenset((T, D)),
}


def variant_ruleset(variant):
    """Rule set whose forcing problem is dual to this sequence variant."""
    try:
        return _VARIANT_RULES[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None


SequenceCheck = namedtuple("SequenceCheck",
                           ["ok", "witnesses", "fail_index", "reason"])


def _require_no_isolated(g):
    if g.has_isolated_vertices():
        raise ValueError("sequence variants require graphs without "
                         "isolated vertices")


def verify_sequence(g, seq, variant):
    """Check a sequence against a variant.

    Returns a SequenceCheck; witnesses[i] is the canonical footprint member
    for v_i (v_i itself when admissible, else the lowest id). On failure,
    fail_index points at the first offending position.
    """
    t_closed, b_closed = _BRACKETS[variant]
    _require_no_isolated(g)
    seen = 0
    witnesses = []
    blocked = 0
    for i, v in enumerate(seq):
        if not (0 <= v < g.n):
            return SequenceCheck(False, witnesses, i,
                                 f"vertex {v} out of range")
        if (seen >> v) & 1:
            return SequenceCheck(False, witnesses, i,
                                 f"vertex {v} repeated")
        foot = neighborhood(g, v, closed=t_closed) & ~blocked
        if variant == LOCALL:
            foot &= seen | (1 << v)
        if foot == 0:
            return SequenceCheck(False, witnesses, i,
                                 f"empty footprint at position {i}")
        if (foot >> v) & 1:
            witnesses.append(v)
        else:
            witnesses.append((foot & -foot).bit_length() - 1)
        blocked |= neighborhood(g, v, closed=b_closed)
        seen |= 1 << v
    return SequenceCheck(True, witnesses, None, "ok")


def max_sequence_bruteforce(g, variant, restrict_to=None, max_n=16,
                            budget=2 ** 22):
    """Longest valid sequence by memoized search; returns (length, sequence).

    restrict_to limits sequence members (not footprints) to the given
    vertices; the guard applies to the candidate count. States are keyed by
    the used-vertex mask: the blocked set is a function of that mask alone,
    so the memo is sound for every variant including the local one.
    """
    t_closed, b_closed = _BRACKETS[variant]
    _require_no_isolated(g)
    if restrict_to is None:
        restrict = g.full_mask()
    else:
        restrict = mask_of(restrict_to)
        if restrict & ~g.full_mask():
            raise ValueError("restrict_to contains out-of-range vertices")
    if restrict.bit_count() > max_n:
        raise GuardError(
            f"sequence brute force guard: {restrict.bit_count()} candidates "
            f"exceed {max_n}")
    n1 = [neighborhood(g, v, closed=t_closed) for v in range(g.n)]
    n2 = [neighborhood(g, v, closed=b_closed) for v in range(g.n)]
    local = variant == LOCALL
    memo = {}

    def best(used, blocked):
        hit = memo.get(used)
        if hit is not None:
            return hit[0]
        if len(memo) >= budget:
            raise BudgetError("sequence brute force budget exceeded")
        best_extra = 0
        best_choice = -1
        for v in iter_bits(restrict & ~used):
            foot = n1[v] & ~blocked
            if local:
                foot &= used | (1 << v)
            if foot == 0:
                continue
            extra = 1 + best(used | (1 << v), blocked | n2[v])
            if extra > best_extra:
                best_extra = extra
                best_choice = v
        memo[used] = (best_extra, best_choice)
        return best_extra

    length = best(0, 0)
    seq = []
    used = 0
    blocked = 0
    while True:
        choice = memo[used][1]
        if choice < 0:
            break
        seq.append(choice)
        used |= 1 << choice
        blocked |= n2[choice]
    assert len(seq) == length
    return length, seq


def find_sequence_of_length(g, variant, target, restrict_to=None,
                            budget=2 ** 22):
    """Decide whether a valid sequence of the given length exists.

    Returns (True, sequence) or (False, None). Prunes branches where the
    count of members that could still contribute a footprint cannot reach the
    target; for the local variant that count ignores the membership
    restriction on witnesses (only ever an over-estimate, so the prune stays
    sound), and a visited-set keyed on the used mask cuts re-exploration.
    """
    if target <= 0:
        return True, []
    t_closed, b_closed = _BRACKETS[variant]
    _require_no_isolated(g)
    restrict = g.full_mask() if restrict_to is None else mask_of(restrict_to)
    n1 = [neighborhood(g, v, closed=t_closed) for v in range(g.n)]
    n2 = [neighborhood(g, v, closed=b_closed) for v in range(g.n)]
    local = variant == LOCALL
    dead = set()
    seq = []

    def dfs(used, blocked):
        if len(seq) >= target:
            return True
        if used in dead:
            return False
        if len(dead) >= budget:
            raise BudgetError("sequence search budget exceeded")
        viable = []
        upper = 0
        for v in iter_bits(restrict & ~used):
            if n1[v] & ~blocked:
                upper += 1
                foot = n1[v] & ~blocked
                if local:
                    foot &= used | (1 << v)
                if foot:
                    viable.append(v)
        if len(seq) + upper < target:
            dead.add(used)
            return False
        for v in viable:
            seq.append(v)
            if dfs(used | (1 << v), blocked | n2[v]):
                return True
            seq.pop()
        dead.add(used)
        return False

    if dfs(0, 0):
        return True, list(seq)
    return False, None


def sequence_to_forcing(g, seq, variant):
    """Turn a valid sequence into a forcing set plus a replayable trace.

    The complement of the sequence forces under the dual rule set: walk the
    sequence backwards and color each member from its footprint witness (a
    self-witness becomes a fill rule, an earlier member a transfer, anything
    else a standard force). Returns (s_mask, trace).
    """
    check = verify_sequence(g, seq, variant)
    if not check.ok:
        raise ValueError(f"invalid sequence: {check.reason}")
    rules = variant_ruleset(variant)
    s_mask = g.full_mask() & ~mask_of(seq)
    earlier = set()
    kinds = []
    for i, v in enumerate(seq):
        u = check.witnesses[i]
        if u == v:
            kinds.append(RuleApplication(D, v, v))
        elif u in earlier:
            kinds.append(RuleApplication(T, u, v))
        else:
            kinds.append(RuleApplication(Z, u, v))
        earlier.add(v)
    trace = list(reversed(kinds))
    for app in trace:
        assert app.kind in rules, (app, rules)
    final, bad = replay_trace(g, s_mask, trace, rules)
    if bad is not None or final != g.full_mask():
        raise RuntimeError("internal error: converted trace does not replay")
    return s_mask, trace


def forcing_to_sequence(g, s_mask, trace, variant):
    """Turn a forcing trace into a valid sequence for the dual variant.

    The reversed target order of the trace is the sequence. Returns
    (sequence, witnesses).
    """
    rules = variant_ruleset(variant)
    final, bad = replay_trace(g, s_mask, trace, rules)
    if bad is not None:
        raise ValueError(f"trace invalid at step {bad}")
    if final != g.full_mask():
        raise ValueError("trace does not force the whole graph")
    targets = [app.target for app in trace]
    if mask_of(targets) != g.full_mask() & ~s_mask or \
            len(set(targets)) != len(targets):
        raise ValueError("trace targets must cover the complement exactly")
    seq = list(reversed(targets))
    check = verify_sequence(g, seq, variant)
    if not check.ok:
        raise ValueError(f"reversed targets are not a valid sequence: "
                         f"{check.reason}")
    return seq, check.witnesses


CoveringCheck = namedtuple("CoveringCheck",
                           ["ok", "witnesses", "fail_index", "reason"])


def verify_covering_sequence(h, edge_seq):
    """Check an edge sequence of a hypergraph: each edge must cover a fresh
    ground element. Witnesses are the lowest fresh element per step."""
    covered = 0
    used = set()
    witnesses = []
    for i, e in enumerate(edge_seq):
        if not (0 <= e < len(h.edges)):
            return CoveringCheck(False, witnesses, i, f"edge {e} out of range")
        if e in used:
            return CoveringCheck(False, witnesses, i, f"edge {e} repeated")
        fresh = h.edges[e] & ~covered
        if fresh == 0:
            return CoveringCheck(False, witnesses, i,
                                 f"no fresh element at position {i}")
        witnesses.append((fresh & -fresh).bit_length() - 1)
        covered |= h.edges[e]
        used.add(e)
    return CoveringCheck(True, witnesses, None, "ok")


def max_covering_bruteforce(h, max_ground=16, budget=2 ** 22):
    """Longest covering sequence; returns (length, edge_sequence).

    Memo keys on the covered-element mask: an unused edge is usable exactly
    when it still covers something fresh, so two prefixes with equal covered
    sets admit the same extensions (their lengths differ, the memo stores the
    best number of additional steps).
    """
    if h.ground_size > max_ground:
        raise GuardError(
            f"covering brute force guard: ground size {h.ground_size} "
            f"exceeds {max_ground}")
    memo = {}

    def best(covered):
        hit = memo.get(covered)
        if hit is not None:
            return hit[0]
        if len(memo) >= budget:
            raise BudgetError("covering brute force budget exceeded")
        best_extra = 0
        best_choice = -1
        for e, mask in enumerate(h.edges):
            if mask & ~covered:
                extra = 1 + best(covered | mask)
                if extra > best_extra:
                    best_extra = extra
                    best_choice = e
        memo[covered] = (best_extra, best_choice)
        return best_extra

    length = best(0)
    seq = []
    covered = 0
    while True:
        choice = memo[covered][1]
        if choice < 0:
            break
        seq.append(choice)
        covered |= h.edges[choice]
    assert len(seq) == length
    return length, seq
