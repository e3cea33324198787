"""Tree decompositions: validation, heuristics, exact treewidth, nice form.

The nice form used by the DP has five node kinds: leaf, introduce, forget,
rule and join. Every forget(v) sits directly above a rule(v) node whose bag
still contains v; root and leaf bags are empty. Rule nodes carry no bag
change, they are the hook where the DP fixes v's colorer and target.

Exact treewidth is a subset DP over elimination orders (guarded), preceded by
a safe degree-<=1 reduction so pendant-heavy graphs (e.g. coronas) shrink to
their core first. There is no approximation algorithm here; callers that need
a width decision for larger graphs get a branch-and-bound elimination search.
"""

import heapq

from .errors import BudgetError, GuardError, ParseError
from .graphs import iter_bits


class TreeDecomposition:
    """Bags (sorted tuples of vertices) plus a tree on bag indices."""

    __slots__ = ("n", "bags", "edges")

    def __init__(self, n, bags, edges):
        self.n = n
        self.bags = [tuple(sorted(set(b))) for b in bags]
        self.edges = [tuple(sorted(e)) for e in edges]

    @property
    def width(self):
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    def __repr__(self):
        return (f"TreeDecomposition(n={self.n}, bags={len(self.bags)}, "
                f"width={self.width})")


def validate_td(g, td):
    """Check the three decomposition conditions. Returns (ok, width, msg)."""
    nb = len(td.bags)
    if td.n != g.n:
        return False, -1, f"decomposition is for n={td.n}, graph has n={g.n}"
    for i, j in td.edges:
        if not (0 <= i < nb and 0 <= j < nb) or i == j:
            return False, -1, f"bad tree edge ({i},{j})"
    if nb:
        # must be a tree: connected with nb-1 edges
        if len(set(td.edges)) != nb - 1:
            return False, -1, "bag graph is not a tree (edge count)"
        adj = [[] for _ in range(nb)]
        for i, j in td.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = [False] * nb
        stack = [0]
        seen[0] = True
        cnt = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    cnt += 1
                    stack.append(y)
        if cnt != nb:
            return False, -1, "bag graph is not connected"
    occ = [[] for _ in range(g.n)]
    for i, b in enumerate(td.bags):
        for v in b:
            if not (0 <= v < g.n):
                return False, -1, f"bag member {v} out of range"
            occ[v].append(i)
    for v in range(g.n):
        if not occ[v]:
            return False, -1, f"vertex {v} in no bag"
    bag_sets = [set(b) for b in td.bags]
    for u, v in g.edges():
        # scan the shorter occurrence list, it is O(1) on sane inputs
        if len(occ[u]) > len(occ[v]):
            u, v = v, u
        if not any(v in bag_sets[i] for i in occ[u]):
            return False, -1, f"edge ({u},{v}) in no bag"
    # occurrence subtrees connected: the bags holding v induce a subforest
    # of the bag tree, which is connected exactly when it has one fewer
    # tree edge than it has members
    shared = [0] * g.n
    for i, j in set(td.edges):
        small, big = (i, j) if len(td.bags[i]) <= len(td.bags[j]) else (j, i)
        for w in td.bags[small]:
            if w in bag_sets[big]:
                shared[w] += 1
    for v in range(g.n):
        if len(occ[v]) != shared[v] + 1:
            return False, -1, f"occurrences of vertex {v} not connected"
    return True, td.width, "ok"


def parse_td(text):
    lines = [ln.strip() for ln in text.splitlines()]
    header = None
    bags = {}
    edges = []
    for ln in lines:
        if not ln or ln.startswith("c"):
            continue
        parts = ln.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate 's td' line")
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"malformed solution line: {ln!r}")
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise ParseError(f"malformed solution line: {ln!r}") from None
        elif parts[0] == "b":
            if header is None:
                raise ParseError("bag line before 's td' line")
            try:
                idx = int(parts[1])
                members = [int(x) for x in parts[2:]]
            except (ValueError, IndexError):
                raise ParseError(f"malformed bag line: {ln!r}") from None
            if not (1 <= idx <= header[0]):
                raise ParseError(f"bag index out of range: {idx}")
            if any(not (1 <= x <= header[2]) for x in members):
                raise ParseError(f"bag member out of range in: {ln!r}")
            bags[idx] = [x - 1 for x in members]
        else:
            if header is None:
                raise ParseError("edge line before 's td' line")
            if len(parts) != 2:
                raise ParseError(f"malformed td edge line: {ln!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"malformed td edge line: {ln!r}") from None
            if not (1 <= i <= header[0] and 1 <= j <= header[0]):
                raise ParseError(f"td edge out of range: {ln!r}")
            edges.append((i - 1, j - 1))
    if header is None:
        raise ParseError("missing 's td' line")
    bag_list = [bags.get(i + 1, []) for i in range(header[0])]
    return TreeDecomposition(header[2], bag_list, edges)


def write_td(td):
    width_plus = max((len(b) for b in td.bags), default=0)
    out = [f"s td {len(td.bags)} {width_plus} {td.n}"]
    for i, b in enumerate(td.bags):
        out.append("b " + " ".join([str(i + 1)] + [str(v + 1) for v in b]))
    for i, j in td.edges:
        out.append(f"{i + 1} {j + 1}")
    return "\n".join(out) + "\n"


def decomposition_from_order(g, order):
    """Build a decomposition from an elimination order (fill-in bags)."""
    n = g.n
    if n == 0:
        return TreeDecomposition(0, [], [])
    adj = list(g.adj)
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != n or set(order) != set(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    alive = g.full_mask()
    bags = []
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        bags.append(sorted([v] + list(iter_bits(nb))))
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    edges = []
    roots = []
    for i, bag in enumerate(bags):
        rest = [u for u in bag if u != order[i]]
        if rest:
            edges.append((i, min(pos[u] for u in rest)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(n, bags, edges)


def _strip_low_degree(g):
    """Iteratively remove degree-<=1 vertices.

    Returns (core_vertices, core_adj_masks_on_original_ids, removals) where
    removals is the removal sequence [(v, anchor_or_None), ...]; re-attach in
    reverse. tw(G) = max(tw(core), 1 if any anchored removal else 0).
    """
    adj = list(g.adj)
    alive = g.full_mask()
    removals = []
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not (alive >> v) & 1:
                continue
            nb = adj[v] & alive
            deg = nb.bit_count()
            if deg <= 1:
                anchor = nb.bit_length() - 1 if deg == 1 else None
                removals.append((v, anchor))
                alive &= ~(1 << v)
                changed = True
    core = list(iter_bits(alive))
    return core, adj, removals


def _elimination_q(adjc, w_mask, v, nc):
    """# vertices outside W+{v} reachable from v via paths inside W."""
    seen = adjc[v]
    frontier = seen & w_mask
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adjc[u]
        new = nxt & ~seen
        seen |= new
        frontier = new & w_mask
    return (seen & ~w_mask & ~(1 << v)).bit_count()


def exact_treewidth(g, max_n=20):
    """Exact treewidth with witness decomposition.

    Subset DP over elimination orders on the degree-<=1-reduced core; the
    guard applies to the core size.
    """
    if g.n == 0:
        return -1, TreeDecomposition(0, [], [])
    core, adj, removals = _strip_low_degree(g)
    nc = len(core)
    if nc > max_n:
        raise GuardError(f"exact treewidth guard: core n={nc} exceeds {max_n}")
    tw_strip = max((1 if a is not None else 0 for _, a in removals), default=0)
    if nc == 0:
        # peeled vertices are eliminated in peel order: degree <= 1 at that
        # point, so every bag has at most two members
        order = [v for v, _ in removals]
        td = decomposition_from_order(g, order)
        return max(tw_strip, 0 if removals else -1), td
    # compress core to 0..nc-1
    comp = {v: i for i, v in enumerate(core)}
    adjc = [0] * nc
    for v in core:
        for u in iter_bits(adj[v]):
            if u in comp:
                adjc[comp[v]] |= 1 << comp[u]
    full = (1 << nc) - 1
    size = 1 << nc
    f = [0] * size
    choice = bytearray(size)
    for s in range(1, size):
        best = nc + 1
        best_v = 0
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            w = s ^ low
            val = _elimination_q(adjc, w, v, nc)
            prev = f[w]
            if prev > val:
                val = prev
            if val < best:
                best = val
                best_v = v
        f[s] = best
        choice[s] = best_v
    tw_core = f[full]
    # recover elimination order of the core (reversed DP choices)
    order_core = []
    s = full
    while s:
        v = choice[s]
        order_core.append(core[v])
        s ^= 1 << v
    order_core.reverse()
    order = [v for v, _ in removals] + order_core
    td = decomposition_from_order(g, order)
    tw = max(tw_core, tw_strip)
    assert td.width == tw, (td.width, tw)
    return tw, td


def treewidth_at_most(g, k, max_n=20, budget=2 ** 22):
    """Decide tw(G) <= k; returns (answer, witness_td_or_None).

    Uses the exact DP when the reduced core fits the guard, otherwise a
    branch-and-bound search over elimination orders.
    """
    if k < 0:
        return (g.n == 0), (TreeDecomposition(0, [], []) if g.n == 0 else None)
    core, adj, removals = _strip_low_degree(g)
    nc = len(core)
    if nc <= max_n:
        tw, td = exact_treewidth(g, max_n=max_n)
        return (tw <= k), (td if tw <= k else None)
    if k >= nc - 1:
        order = [v for v, _ in removals] + core
        return True, decomposition_from_order(g, order)
    comp = {v: i for i, v in enumerate(core)}
    adjc = [0] * nc
    for v in core:
        for u in iter_bits(adj[v]):
            if u in comp:
                adjc[comp[v]] |= 1 << comp[u]
    full = (1 << nc) - 1
    failed = set()
    found = []

    def search(alive, work):
        # iterative DFS, frames: (alive, candidates iterator, work adj, order)
        stack = [(alive, iter(list(iter_bits(alive))), work, [])]
        while stack:
            cur_alive, it, cur_adj, order = stack[-1]
            if cur_alive.bit_count() <= k + 1:
                found.extend(order + list(iter_bits(cur_alive)))
                return True
            advanced = False
            for v in it:
                nb = cur_adj[v] & cur_alive
                if nb.bit_count() > k:
                    continue
                nxt_alive = cur_alive & ~(1 << v)
                if nxt_alive in failed:
                    continue
                nxt_adj = list(cur_adj)
                for u in iter_bits(nb):
                    nxt_adj[u] |= nb & ~(1 << u)
                stack.append((nxt_alive, iter(list(iter_bits(nxt_alive))),
                              nxt_adj, order + [v]))
                advanced = True
                break
            if not advanced:
                failed.add(cur_alive)
                if len(failed) > budget:
                    raise BudgetError("treewidth branch-and-bound budget")
                stack.pop()
        return False

    if not search(full, adjc):
        return False, None
    order = [v for v, _ in removals] + [core[i] for i in found]
    td = decomposition_from_order(g, order)
    assert td.width <= k
    return True, td


def _min_degree_order(g):
    adj = list(g.adj)
    alive = g.full_mask()
    heap = [(adj[v].bit_count(), v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if not (alive >> v) & 1:
            continue
        nb = adj[v] & alive
        if nb.bit_count() != d:
            heapq.heappush(heap, (nb.bit_count(), v))
            continue
        order.append(v)
        alive &= ~(1 << v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
            heapq.heappush(heap, ((adj[u] & alive & ~(1 << u)).bit_count(), u))
    return order


def _fill_value(adj, alive, v):
    nb = adj[v] & alive
    miss = 0
    for u in iter_bits(nb):
        miss += (nb & ~adj[u] & ~(1 << u)).bit_count()
    return miss // 2


def _min_fill_order(g):
    adj = list(g.adj)
    alive = g.full_mask()
    heap = [(_fill_value(adj, alive, v), adj[v].bit_count(), v)
            for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        fill, d, v = heapq.heappop(heap)
        if not (alive >> v) & 1:
            continue
        nb = adj[v] & alive
        cur = _fill_value(adj, alive, v)
        if cur != fill or nb.bit_count() != d:
            heapq.heappush(heap, (cur, nb.bit_count(), v))
            continue
        order.append(v)
        alive &= ~(1 << v)
        touched = nb
        for u in iter_bits(nb):
            new = nb & ~adj[u] & ~(1 << u)
            if new:
                adj[u] |= new
                touched |= adj[u] & alive
        for u in iter_bits(touched & alive):
            heapq.heappush(heap, (_fill_value(adj, alive, u),
                                  (adj[u] & alive).bit_count(), u))
    return order


def heuristic_decomposition(g, strategy="min_fill"):
    """Elimination-order heuristic decomposition (min_fill or min_degree)."""
    if strategy == "min_fill":
        order = _min_fill_order(g)
    elif strategy == "min_degree":
        order = _min_degree_order(g)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return decomposition_from_order(g, order)


LEAF, INTRODUCE, FORGET, RULE, JOIN = "leaf", "introduce", "forget", "rule", "join"


class NiceTD:
    """Nice tree decomposition with rule nodes, stored as flat arrays."""

    __slots__ = ("n", "kinds", "vertex", "bags", "children", "root")

    def __init__(self, n):
        self.n = n
        self.kinds = []
        self.vertex = []
        self.bags = []
        self.children = []
        self.root = -1

    def add(self, kind, vertex, bag, children):
        self.kinds.append(kind)
        self.vertex.append(vertex)
        self.bags.append(tuple(sorted(bag)))
        self.children.append(list(children))
        return len(self.kinds) - 1

    def __len__(self):
        return len(self.kinds)

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1


def make_nice(g, td):
    """Convert a valid decomposition into the 5-kind nice form.

    Every vertex is forgotten exactly once, each forget(v) has a rule(v)
    child whose bag still contains v, and the root and all leaves have empty
    bags.
    """
    ok, _, msg = validate_td(g, td)
    if not ok:
        raise ValueError(f"invalid tree decomposition: {msg}")
    nice = NiceTD(g.n)
    if g.n == 0 or not td.bags:
        nice.root = nice.add(LEAF, None, (), ())
        return nice

    nb = len(td.bags)
    adj = [[] for _ in range(nb)]
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    parent = [-1] * nb
    order = [0]
    seen = [False] * nb
    seen[0] = True
    for x in order:
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                order.append(y)
    kids = [[] for _ in range(nb)]
    for y in range(1, nb):
        kids[parent[y]].append(y)

    def leaf_chain(bag):
        cur = nice.add(LEAF, None, (), ())
        have = []
        for v in sorted(bag):
            have.append(v)
            cur = nice.add(INTRODUCE, v, have, (cur,))
        return cur

    def lift(cur, from_bag, to_bag):
        have = sorted(from_bag)
        for v in sorted(set(from_bag) - set(to_bag)):
            cur = nice.add(RULE, v, have, (cur,))
            have = [u for u in have if u != v]
            cur = nice.add(FORGET, v, have, (cur,))
        for v in sorted(set(to_bag) - set(from_bag)):
            have = sorted(have + [v])
            cur = nice.add(INTRODUCE, v, have, (cur,))
        return cur

    top = [-1] * nb
    for t in reversed(order):
        bag = td.bags[t]
        if not kids[t]:
            top[t] = leaf_chain(bag)
        else:
            lifted = [lift(top[c], td.bags[c], bag) for c in kids[t]]
            cur = lifted[0]
            for other in lifted[1:]:
                cur = nice.add(JOIN, None, bag, (cur, other))
            top[t] = cur
    nice.root = lift(top[0], td.bags[0], ())

    forgotten = [v for k, v in zip(nice.kinds, nice.vertex) if k == FORGET]
    assert sorted(forgotten) == list(range(g.n)), "each vertex forgotten once"
    for i, k in enumerate(nice.kinds):
        if k == FORGET:
            c = nice.children[i][0]
            assert nice.kinds[c] == RULE and nice.vertex[c] == nice.vertex[i]
    return nice
