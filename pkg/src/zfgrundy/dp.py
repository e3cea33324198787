"""Minimum forcing sets via dynamic programming on nice tree decompositions.

Each bag vertex carries a signature: who colors it (its gamma role), whom it
colors (its phi role), two boolean flags saying whether those two events have
already happened in the processed part, plus a dependency relation between
the pending coloring/action events of bag vertices. Dependencies are kept
transitively closed at all times, so cycle checks are single bit tests and
forgetting a settled vertex is just clearing its rows and columns.

Bag slots, not vertex ids, index the packed state: slots are assigned
top-down so that tables of sibling subtrees line up at joins for free. A
rule node (always directly below the forget of its vertex) is where the
actual colorer f and target g of the forgotten vertex are fixed; the forget
that follows immediately filters on both events having happened and charges
the solution size if the vertex had no colorer at all (then it must be in
the starting set). Tables are only materialized at forgets, leaves and
joins; introduce layers are fused into the consuming segment, which keeps
the stored-state count down without losing merging (introduce branches from
one base state never collide).

Reconstruction re-simulates the provenance chain of the optimal root entry,
collects the chosen rules and dependency arcs in vertex terms, contracts
each rule with the coloring event of its target, and topologically sorts the
contraction to obtain a replayable trace. The replay is verified before
returning; a failure there is a bug, not a property of the input.
"""

from collections import namedtuple

from .errors import BudgetError
from .rules import (D, RuleApplication, T, Z, parse_rules, replay_trace,
                    rules_label)
from .treedec import (FORGET, INTRODUCE, JOIN, LEAF, RULE, NiceTD,
                      heuristic_decomposition, make_nice, treewidth_at_most)

# signature codes; 0 doubles as "no role" and "empty slot"
_NONE, _CZ, _CT, _CD = 0, 1, 2, 3
_CODE_OF = {Z: _CZ, T: _CT, D: _CD}
_RULE_OF = {_CZ: Z, _CT: T, _CD: D}

# (gamma, phi) combinations that can never belong to a valid assignment;
# includes (D, none): a self-coloring vertex with no action of its own
# imposes no order on its neighbors, which would let it fire while white
# neighbors are still around
_EXCLUDED = frozenset({
    (_CT, _CT), (_CD, _CZ), (_NONE, _CT), (_CZ, _CD),
    (_CT, _CD), (_NONE, _CD), (_CD, _NONE),
})

_OMEGA_BITS = 24
_OMEGA_MASK = (1 << 24) - 1
_POS_BITS = 40
_POS_MASK = (1 << 40) - 1


def allowed_intro_pairs(rules):
    codes = [_NONE] + sorted(_CODE_OF[r] for r in rules)
    return [(a, b) for a in codes for b in codes if (a, b) not in _EXCLUDED]


_Plan = namedtuple("_Plan", ["ops", "ntables", "root_table", "M", "nn"])

# op layouts:
#   ("leaf", out)
#   ("seg", out, base, intro_steps, rule_step)
#   ("intros", out, base, intro_steps)
#   ("join", out, left, right, bag_slots)
# intro step: (vertex, slot); rule step: (vertex, slot, nbrs) with nbrs a
# tuple of (slot, vertex) for the in-bag graph neighbors of the vertex


def _compile(g, ntd):
    kinds, vertex = ntd.kinds, ntd.vertex
    bags, children = ntd.bags, ntd.children

    slot_map = [None] * len(ntd)
    slot_map[ntd.root] = {}
    stack = [ntd.root]
    while stack:
        t = stack.pop()
        m = slot_map[t]
        assert set(m) == set(bags[t]), (t, m, bags[t])
        k = kinds[t]
        for c in children[t]:
            if k == FORGET:
                used = set(m.values())
                s = 0
                while s in used:
                    s += 1
                cm = dict(m)
                cm[vertex[t]] = s
            elif k == INTRODUCE:
                cm = dict(m)
                del cm[vertex[t]]
            else:
                cm = m if len(children[t]) == 1 else dict(m)
            slot_map[c] = cm
            stack.append(c)

    M = max(len(b) for b in bags) if bags else 0
    assert M <= 60, "bag too large for the packed layout"
    nn = 2 * M

    def walk_down(t):
        # consume a run of introduce nodes; returns (steps bottom-up, base)
        steps = []
        cur = t
        while kinds[cur] == INTRODUCE:
            v = vertex[cur]
            steps.append((v, slot_map[cur][v]))
            cur = children[cur][0]
        assert kinds[cur] in (FORGET, LEAF, JOIN)
        steps.reverse()
        return tuple(steps), cur

    ops = []
    table_of = {}
    counter = [0]

    def new_table():
        counter[0] += 1
        return counter[0] - 1

    work = [(ntd.root, False)]
    while work:
        t, emit = work.pop()
        if t in table_of:
            continue
        k = kinds[t]
        if k == LEAF:
            idx = new_table()
            table_of[t] = idx
            ops.append(("leaf", idx))
            continue
        if k == FORGET:
            r = children[t][0]
            assert kinds[r] == RULE and vertex[r] == vertex[t]
            steps, base = walk_down(children[r][0])
            if not emit:
                work.append((t, True))
                work.append((base, False))
                continue
            v = vertex[t]
            nbrs = tuple(sorted(
                (slot_map[r][u], u) for u in bags[r]
                if u != v and (g.adj[v] >> u) & 1))
            idx = new_table()
            table_of[t] = idx
            ops.append(("seg", idx, table_of[base], steps,
                        (v, slot_map[r][v], nbrs)))
            continue
        assert k == JOIN
        sides = [walk_down(c) for c in children[t]]
        if not emit:
            work.append((t, True))
            for _, base in sides:
                work.append((base, False))
            continue
        inputs = []
        for steps, base in sides:
            if steps:
                idx = new_table()
                ops.append(("intros", idx, table_of[base], steps))
                inputs.append(idx)
            else:
                inputs.append(table_of[base])
        idx = new_table()
        table_of[t] = idx
        bag_slots = tuple(sorted(slot_map[t].values()))
        ops.append(("join", idx, inputs[0], inputs[1], bag_slots))

    return _Plan(tuple(ops), counter[0], table_of[ntd.root], M, nn)


def _unpack(key, M, nn):
    m2 = (1 << (2 * M)) - 1
    mM = (1 << M) - 1
    gam = key & m2
    phi = (key >> (2 * M)) & m2
    bg = (key >> (4 * M)) & mM
    bp = (key >> (5 * M)) & mM
    dep = key >> (6 * M)
    return gam, phi, bg, bp, dep


class _Geom:
    """Bit geometry of the packed dependency matrix (nn x nn, row-major).

    The whole matrix lives in one int; arc insertion keeps it transitively
    closed with a handful of wide operations. Adding a -> b ORs row b (plus
    bit b) into every row that reaches a; the rows-reaching-a selector times
    the row pattern smears it into all of them at once, which works because
    the pattern is narrower than the row stride.
    """

    __slots__ = ("nn", "row", "unit", "diag", "clear")

    def __init__(self, M):
        nn = 2 * M
        self.nn = nn
        self.row = (1 << nn) - 1
        unit = 0
        diag = 0
        for i in range(nn):
            unit |= 1 << (i * nn)
            diag |= 1 << (i * nn + i)
        self.unit = unit
        self.diag = diag
        self.clear = []
        for s in range(M):
            a, b = 2 * s, 2 * s + 1
            drop = ((self.row << (a * nn)) | (self.row << (b * nn))
                    | (unit << a) | (unit << b))
            self.clear.append(~drop)

    def add_arc(self, dep, a, b):
        """Closed insert of a -> b; returns -1 when it would close a cycle."""
        if (dep >> (b * self.nn + a)) & 1:
            return -1
        add = ((dep >> (b * self.nn)) & self.row) | (1 << b)
        sel = ((dep >> a) & self.unit) | (1 << (a * self.nn))
        return dep | sel * add

    def close(self, dep):
        """Re-close a union of two closed matrices; -1 if a cycle appears."""
        nn = self.nn
        row = self.row
        unit = self.unit
        for k in range(nn):
            rk = (dep >> (k * nn)) & row
            if rk:
                dep |= ((dep >> k) & unit) * rk
        if dep & self.diag:
            return -1
        return dep


class _Store:
    """Per-node table under construction: buckets with optional dominance.

    Buckets group states with equal role and flag fields; inside a bucket an
    entry is dropped when another one has a subset of its dependency arcs
    and no larger size (fewer constraints can only allow more completions).
    """

    __slots__ = ("buckets", "dominance", "s2", "s4", "s5", "s6", "net")

    def __init__(self, M, dominance):
        self.buckets = {}
        self.dominance = dominance
        self.s2 = 2 * M
        self.s4 = 4 * M
        self.s5 = 5 * M
        self.s6 = 6 * M
        self.net = 0

    def put_parts(self, gam, phi, bg, bp, dep, omega, prov):
        bkey = (gam | (phi << self.s2) | (bg << self.s4) | (bp << self.s5))
        lst = self.buckets.get(bkey)
        if lst is None:
            self.buckets[bkey] = [[dep, omega, prov]]
            self.net += 1
            return
        if self.dominance:
            for e in lst:
                if e[1] <= omega and e[0] | dep == dep:
                    return
            kept = [e for e in lst
                    if not (omega <= e[1] and dep | e[0] == e[0])]
            self.net -= len(lst) - len(kept)
            kept.append([dep, omega, prov])
            self.buckets[bkey] = kept
            self.net += 1
        else:
            for e in lst:
                if e[0] == dep:
                    if omega < e[1]:
                        e[1] = omega
                        e[2] = prov
                    return
            lst.append([dep, omega, prov])
            self.net += 1

    def finalize(self):
        keys = []
        vals = []
        shift = self.s6
        for bkey, lst in self.buckets.items():
            for dep, omega, prov in lst:
                keys.append(bkey | (dep << shift))
                vals.append((prov << _OMEGA_BITS) | omega)
        return keys, vals


def _intro_deltas(geom, slot, pairs, step_index):
    """Per-pair OR deltas for introducing a vertex at a slot.

    The new slot's events are fresh, so the intro arc closes to a single
    bit and the whole introduction is five ORs on the packed fields.
    """
    nn = geom.nn
    out = []
    for gc, pc in pairs:
        dbg = (1 << slot) if gc in (_NONE, _CD) else 0
        dbp = (1 << slot) if pc in (_NONE, _CD) else 0
        if pc == _CZ:
            ddep = 1 << ((2 * slot) * nn + 2 * slot + 1)
        elif pc in (_CT, _CD):
            ddep = 1 << ((2 * slot + 1) * nn + 2 * slot)
        else:
            ddep = 0
        out.append((gc << (2 * slot), pc << (2 * slot), dbg, dbp, ddep,
                    (gc | (pc << 2)) << (_POS_BITS + 4 * step_index)))
    return tuple(out)


def _run_rule_forget(geom, gam, phi, bg, bp, dep, omega,
                     rule_step, store, prov_base, fg_off):
    """Branch over colorer/target choices for v, then forget v.

    All dependency updates are inlined wide operations. The arcs from the
    forgotten vertex's coloring event to its neighbors' actions depend only
    on which colorer is excluded, so their row contributions are prefix- and
    suffix-folded once per state and combined per colorer choice; they are
    inserted first, against the incoming matrix, which is what makes the
    precomputation valid.
    """
    v, s, nbrs = rule_step
    nn = geom.nn
    unit = geom.unit
    rowm = geom.row
    s2 = 2 * s
    gv = (gam >> s2) & 3
    pv = (phi >> s2) & 3
    if (bg >> s) & 1:
        fcands = (-1,)
    else:
        fcands = [u for u, _ in nbrs
                  if ((phi >> (2 * u)) & 3) == gv and not (bp >> u) & 1]
        if not fcands:
            return
    if (bp >> s) & 1:
        gcands = (-1,)
    else:
        gcands = [u for u, _ in nbrs
                  if ((gam >> (2 * u)) & 3) == pv and not (bg >> u) & 1]
        if not gcands:
            return
    ngam = gam & ~(3 << s2)
    nphi = phi & ~(3 << s2)
    clear = geom.clear[s]
    nomega = omega + (1 if gv == _NONE else 0)
    sbit = 1 << s

    # action targets among bag neighbors, with their closed-row contribution
    # and row-position bit, for the batched coloring-before-action arcs
    tgt = []
    add_all = 0
    pos_all = 0
    for w, _ in nbrs:
        if (phi >> (2 * w)) & 3:
            b = 2 * w + 1
            a = ((dep >> (b * nn)) & rowm) | (1 << b)
            p = 1 << (b * nn)
            tgt.append((w, a, p))
            add_all |= a
            pos_all |= p
    sel_c = ((dep >> s2) & unit) | (1 << (s2 * nn))
    reach_gv = (dep >> s2) & unit

    for f in fcands:
        add_c = add_all
        pos_c = pos_all
        if f >= 0 and pos_all:
            for w, _, p in tgt:
                if w == f:
                    add_c = 0
                    pos_c = 0
                    for w2, a2, p2 in tgt:
                        if w2 != f:
                            add_c |= a2
                            pos_c |= p2
                    break
        if reach_gv & pos_c:
            continue
        dep_f = dep | sel_c * add_c if add_c else dep
        if f >= 0:
            fa = 2 * f + 1
            if (dep_f >> (s2 * nn + fa)) & 1:
                continue
            dep_f |= ((((dep_f >> fa) & unit) | (1 << (fa * nn)))
                      * (((dep_f >> (s2 * nn)) & rowm) | (1 << s2)))
            if pv == _CT:
                if (dep_f >> (fa * nn + s2 + 1)) & 1:
                    continue
                dep_f |= ((((dep_f >> (s2 + 1)) & unit)
                           | (1 << ((s2 + 1) * nn)))
                          * (((dep_f >> (fa * nn)) & rowm) | (1 << fa)))
            bg_f = bg | sbit
            bp_f = bp | (1 << f)
        else:
            bg_f, bp_f = bg, bp
        prov_f = prov_base | ((f + 1) << fg_off)
        for gslot in gcands:
            dep_g = dep_f
            bg_g, bp_g = bg_f, bp_f
            if gslot >= 0:
                gb = 2 * gslot
                if (dep_g >> (gb * nn + s2 + 1)) & 1:
                    continue
                dep_g |= ((((dep_g >> (s2 + 1)) & unit)
                           | (1 << ((s2 + 1) * nn)))
                          * (((dep_g >> (gb * nn)) & rowm) | (1 << gb)))
                if ((phi >> gb) & 3) == _CT:
                    if (dep_g >> ((s2 + 1) * nn + gb + 1)) & 1:
                        continue
                    dep_g |= ((((dep_g >> (gb + 1)) & unit)
                               | (1 << ((gb + 1) * nn)))
                              * (((dep_g >> ((s2 + 1) * nn)) & rowm)
                                 | (1 << (s2 + 1))))
                bg_g |= 1 << gslot
                bp_g |= sbit
            if pv:
                base_row = (s2 + 1) * nn
                add_d = ((dep_g >> base_row) & rowm) | (1 << (s2 + 1))
                sel_d = 0
                ok = True
                for w, _ in nbrs:
                    if w != gslot:
                        wb = 2 * w
                        if (dep_g >> (base_row + wb)) & 1:
                            ok = False
                            break
                        sel_d |= ((dep_g >> wb) & unit) | (1 << (wb * nn))
                if not ok:
                    continue
                if sel_d:
                    dep_g |= sel_d * add_d
            store.put_parts(ngam, nphi, bg_g & ~sbit, bp_g & ~sbit,
                            dep_g & clear, nomega,
                            prov_f | ((gslot + 1) << (fg_off + 6)))


def _execute(g, plan, rules, budget, dominance):
    M, nn = plan.M, plan.nn
    geom = _Geom(M)
    pairs = allowed_intro_pairs(rules)
    tables = [None] * plan.ntables
    total = 0
    for op in plan.ops:
        kind = op[0]
        if kind == "leaf":
            tables[op[1]] = ([0], [0])
            total += 1
            continue
        if kind in ("seg", "intros"):
            base_keys, base_vals = tables[op[2]]
            steps = op[3]
            rule_step = op[4] if kind == "seg" else None
            ni = len(steps)
            fg_off = _POS_BITS + 4 * ni
            deltas = [_intro_deltas(geom, slot, pairs, i)
                      for i, (_, slot) in enumerate(steps)]
            store = _Store(M, dominance)
            put = store.put_parts
            ticks = 0
            for base_pos, bkey in enumerate(base_keys):
                omega0 = base_vals[base_pos] & _OMEGA_MASK
                gam, phi, bg, bp, dep = _unpack(bkey, M, nn)
                work = [(0, gam, phi, bg, bp, dep, base_pos)]
                while work:
                    ticks += 1
                    if not ticks & 4095 and total + store.net > budget:
                        raise BudgetError(
                            f"dp budget exceeded: {total + store.net} "
                            "stored signatures")
                    i, gam_, phi_, bg_, bp_, dep_, prov_ = work.pop()
                    if i == ni:
                        if rule_step is None:
                            put(gam_, phi_, bg_, bp_, dep_, omega0, prov_)
                        else:
                            _run_rule_forget(
                                geom, gam_, phi_, bg_, bp_, dep_, omega0,
                                rule_step, store, prov_, fg_off)
                        continue
                    i1 = i + 1
                    for dg, dp_, dbg, dbp, ddep, dcode in deltas[i]:
                        work.append((i1, gam_ | dg, phi_ | dp_, bg_ | dbg,
                                     bp_ | dbp, dep_ | ddep, prov_ | dcode))
            tables[op[1]] = store.finalize()
            total += store.net
        else:
            _, out, left, right, bag_slots = op
            lkeys, lvals = tables[left]
            rkeys, rvals = tables[right]
            groups = {}
            m4 = (1 << (4 * M)) - 1
            for posA, keyA in enumerate(lkeys):
                groups.setdefault(keyA & m4, []).append(posA)
            store = _Store(M, dominance)
            close = geom.close
            for posB, keyB in enumerate(rkeys):
                if not posB & 1023 and total + store.net > budget:
                    raise BudgetError(
                        f"dp budget exceeded: {total + store.net} "
                        "stored signatures")
                lst = groups.get(keyB & m4)
                if lst is None:
                    continue
                gamB, phiB, bgB, bpB, depB = _unpack(keyB, M, nn)
                # eventful slots: roles Z or T start with their flag false
                embg = 0
                embp = 0
                for s in bag_slots:
                    if ((gamB >> (2 * s)) & 3) in (_CZ, _CT):
                        embg |= 1 << s
                    if ((phiB >> (2 * s)) & 3) in (_CZ, _CT):
                        embp |= 1 << s
                omB = rvals[posB] & _OMEGA_MASK
                provB = posB << _POS_BITS
                for posA in lst:
                    gamA, phiA, bgA, bpA, depA = _unpack(lkeys[posA], M, nn)
                    if bgA & bgB & embg or bpA & bpB & embp:
                        continue
                    merged = close(depA | depB)
                    if merged < 0:
                        continue
                    omA = lvals[posA] & _OMEGA_MASK
                    store.put_parts(gamA, phiA, bgA | bgB, bpA | bpB, merged,
                                    omA + omB, posA | provB)
            tables[out] = store.finalize()
            total += store.net
        if total > budget:
            raise BudgetError(
                f"dp budget exceeded: {total} stored signatures")
    return tables, total


def _reconstruct(g, plan, tables):
    """Walk provenance from the best root entry; returns (S, rules, arcs,
    phimap) in vertex/event terms. Events: 2v = coloring of v, 2v+1 = action
    of v."""
    keys, vals = tables[plan.root_table]
    best_pos = min(range(len(vals)), key=lambda i: vals[i] & _OMEGA_MASK)
    pending = {plan.root_table: best_pos}
    S = set()
    rule_list = []
    arcs = set()
    phimap = {}

    for op in reversed(plan.ops):
        out = op[1]
        if out not in pending:
            continue
        pos = pending.pop(out)
        kind = op[0]
        if kind == "leaf":
            continue
        prov = tables[out][1][pos] >> _OMEGA_BITS
        if kind == "join":
            pending[op[2]] = prov & _POS_MASK
            pending[op[3]] = prov >> _POS_BITS
            continue
        base_idx, steps = op[2], op[3]
        base_pos = prov & _POS_MASK
        rest = prov >> _POS_BITS
        pending[base_idx] = base_pos
        gam, phi, _, _, _ = _unpack(tables[base_idx][0][base_pos],
                                    plan.M, plan.nn)
        slot_vertex = {}
        for i, (v, slot) in enumerate(steps):
            code = (rest >> (4 * i)) & 15
            gc, pc = code & 3, code >> 2
            gam |= gc << (2 * slot)
            phi |= pc << (2 * slot)
            slot_vertex[slot] = v
            if pc == _CZ:
                arcs.add((2 * v, 2 * v + 1))
            elif pc in (_CT, _CD):
                arcs.add((2 * v + 1, 2 * v))
        if kind == "intros":
            continue
        v, s, nbrs = op[4]
        for slot, u in nbrs:
            slot_vertex[slot] = u
        slot_vertex[s] = v
        off = 4 * len(steps)
        f = ((rest >> off) & 63) - 1
        gslot = ((rest >> (off + 6)) & 63) - 1
        gv = (gam >> (2 * s)) & 3
        pv = (phi >> (2 * s)) & 3
        if gv == _NONE:
            S.add(v)
        elif gv == _CD:
            rule_list.append(RuleApplication(D, v, v))
        phimap[v] = pv
        if f >= 0:
            fv = slot_vertex[f]
            rule_list.append(RuleApplication(_RULE_OF[gv], fv, v))
            arcs.add((2 * fv + 1, 2 * v))
            if pv == _CT:
                arcs.add((2 * v + 1, 2 * fv + 1))
        if gslot >= 0:
            gvert = slot_vertex[gslot]
            rule_list.append(RuleApplication(_RULE_OF[pv], v, gvert))
            arcs.add((2 * v + 1, 2 * gvert))
            if ((phi >> (2 * gslot)) & 3) == _CT:
                arcs.add((2 * gvert + 1, 2 * v + 1))
        for w, wv in nbrs:
            if w != f and ((phi >> (2 * w)) & 3) != _NONE:
                arcs.add((2 * v, 2 * wv + 1))
        if pv != _NONE:
            for w, wv in nbrs:
                if w != gslot:
                    arcs.add((2 * wv, 2 * v + 1))
    assert not pending
    return S, rule_list, arcs, phimap


def _assemble_trace(g, S, rule_list, arcs, phimap):
    """Contract each rule with the coloring event of its target, then order
    the contraction topologically. Start-set events come first among ties,
    otherwise lowest target id."""
    import heapq

    owner = {}
    for v in S:
        owner[2 * v] = ("s", v)
    for i, r in enumerate(rule_list):
        ev = 2 * r.target
        assert ev not in owner, f"two colorers for vertex {r.target}"
        owner[ev] = ("r", i)
    for v in range(g.n):
        assert 2 * v in owner, f"vertex {v} neither colored nor in start set"
    for i, r in enumerate(rule_list):
        code = _CODE_OF[r.kind]
        if phimap.get(r.actor) == code:
            ev = 2 * r.actor + 1
            assert ev not in owner, f"two actions for vertex {r.actor}"
            owner[ev] = ("r", i)

    succ = {}
    indeg = {}
    nodes = set(owner.values())
    for sn in nodes:
        succ[sn] = set()
        indeg[sn] = 0
    for a, b in arcs:
        sa = owner.get(a)
        sb = owner.get(b)
        assert sa is not None and sb is not None, (a, b)
        if sa != sb and sb not in succ[sa]:
            succ[sa].add(sb)
            indeg[sb] += 1

    def heap_key(sn):
        if sn[0] == "s":
            return (0, sn[1])
        return (1, rule_list[sn[1]].target)

    heap = [(heap_key(sn), sn) for sn in nodes if indeg[sn] == 0]
    heapq.heapify(heap)
    trace = []
    popped = 0
    while heap:
        _, sn = heapq.heappop(heap)
        popped += 1
        if sn[0] == "r":
            trace.append(rule_list[sn[1]])
        for nx in succ[sn]:
            indeg[nx] -= 1
            if indeg[nx] == 0:
                heapq.heappush(heap, (heap_key(nx), nx))
    assert popped == len(nodes), "cyclic rule dependencies after contraction"
    return trace


DPResult = namedtuple("DPResult", ["k", "s_mask", "trace", "stats"])


def solve(g, rules, ntd=None, budget=2 ** 24, dominance=True,
          strategy="min_fill"):
    """Minimum forcing set size with witness set and trace.

    rules may be a string like "ztd" or any iterable of rule kinds. The
    decomposition is built heuristically unless one is supplied; the answer
    is exact either way, only table sizes depend on the decomposition.
    """
    if isinstance(rules, str):
        rules = parse_rules(rules)
    else:
        rules = frozenset(rules)
        if not rules or rules - {Z, T, D}:
            raise ValueError(f"bad rule set {rules!r}")
    if g.n == 0:
        return DPResult(0, 0, [], {"width": -1, "stored": 0, "tables": 0})
    if ntd is None:
        ntd = make_nice(g, heuristic_decomposition(g, strategy))
    elif not isinstance(ntd, NiceTD):
        ntd = make_nice(g, ntd)
    plan = _compile(g, ntd)
    tables, total = _execute(g, plan, rules, budget, dominance)
    keys, vals = tables[plan.root_table]
    assert keys, "root table empty; every graph has the all-vertices set"
    k = min(v & _OMEGA_MASK for v in vals)
    S, rule_list, arcs, phimap = _reconstruct(g, plan, tables)
    trace = _assemble_trace(g, S, rule_list, arcs, phimap)
    s_mask = 0
    for v in S:
        s_mask |= 1 << v
    assert len(S) == k, (len(S), k)
    for app in trace:
        assert app.kind in rules
    final, bad = replay_trace(g, s_mask, trace, rules)
    assert bad is None and final == g.full_mask(), \
        "reconstructed trace does not replay; dp bug"
    stats = {"width": ntd.width, "stored": total, "tables": len(tables),
             "rules": rules_label(rules)}
    return DPResult(k, s_mask, trace, stats)


SizeDecision = namedtuple("SizeDecision",
                          ["yes", "k_min", "s_mask", "trace", "reason"])


def solve_by_solution_size(g, k, rules, budget=2 ** 24, tw_max_n=20):
    """Decide whether a forcing set of size <= k exists, parameterized by k.

    Only sound for rule sets where a size-k forcing set bounds the treewidth
    by k (plain forcing and forcing with the isolation fill rule): a NO from
    the width test is then already conclusive and the DP only ever runs on a
    width-<=k decomposition.
    """
    if isinstance(rules, str):
        rules = parse_rules(rules)
    else:
        rules = frozenset(rules)
    if rules not in (frozenset((Z,)), frozenset((Z, D))):
        raise ValueError(
            "size-parameterized solving needs the width bound, which holds "
            "for rule sets z and zd only")
    if k < 0:
        return SizeDecision(False, None, None, None, "nothing fits")
    ok, td = treewidth_at_most(g, k, max_n=tw_max_n)
    if not ok:
        return SizeDecision(False, None, None, None, "treewidth")
    res = solve(g, rules, ntd=td, budget=budget)
    if res.k <= k:
        return SizeDecision(True, res.k, res.s_mask, res.trace, "dp")
    return SizeDecision(False, res.k, None, None, "dp")
