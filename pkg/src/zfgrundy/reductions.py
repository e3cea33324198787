"""Hardness-reduction instance generators and their small-scale certifiers.

The centerpiece is the multicolored-clique gadget graph: a bipartite
one-sided total-domination instance whose maximum one-sided sequence reaches
the target length exactly when the source graph has a clique with one vertex
per color class. Around it sit the three bipartite liftings of the sequence
problems, the co-bipartite cliqueifications, the hypergraph covering view,
and the leaf-corona construction.

Generators stay cheap and deterministic; every certifier that involves a
brute-force search is opt-in and guarded, because gadget graphs grow fast.
Gadget vertices carry human-readable labels next to their dense numeric ids
so that audits and debug dumps can name what they are looking at.
"""

import itertools

from .errors import ParseError
from .graphs import Bipartition, Graph, Hypergraph, iter_bits, parse_graph
from .sequences import (GD, LSEQ, TGD, ZSEQ, find_sequence_of_length,
                        max_sequence_bruteforce)


class MccInstance:
    """A graph together with equal-size independent color classes."""

    __slots__ = ("graph", "classes")

    def __init__(self, graph, classes):
        self.graph = graph
        self.classes = [tuple(c) for c in classes]
        if not self.classes:
            raise ValueError("need at least one color class")
        q = len(self.classes[0])
        seen = 0
        for cls in self.classes:
            if len(cls) != q:
                raise ValueError("color classes must all have the same size")
            for v in cls:
                if not (0 <= v < graph.n):
                    raise ValueError(f"class member {v} out of range")
                if (seen >> v) & 1:
                    raise ValueError(f"vertex {v} appears in two classes")
                seen |= 1 << v
            for a, b in itertools.combinations(cls, 2):
                if (graph.adj[a] >> b) & 1:
                    raise ValueError(
                        f"class containing {a} and {b} is not independent")
        if seen != graph.full_mask():
            raise ValueError("classes must cover every vertex")

    @property
    def k(self):
        return len(self.classes)

    @property
    def q(self):
        return len(self.classes[0])

    def cross_edges(self, i, j):
        """Edges between classes i and j as (p, r) position pairs, sorted."""
        ci, cj = self.classes[i], self.classes[j]
        out = []
        for p, u in enumerate(ci):
            for r, v in enumerate(cj):
                if (self.graph.adj[u] >> v) & 1:
                    out.append((p, r))
        return out


def has_multicolored_clique(inst):
    """Exhaustive clique check; returns a class-position tuple or None."""
    adj = inst.graph.adj
    for pick in itertools.product(range(inst.q), repeat=inst.k):
        vs = [inst.classes[i][p] for i, p in enumerate(pick)]
        if all((adj[a] >> b) & 1 for a, b in itertools.combinations(vs, 2)):
            return pick
    return None


class OsgtdInstance:
    """Bipartite graph, an A side, and a target one-sided sequence length."""

    __slots__ = ("graph", "split", "gamma", "labels")

    def __init__(self, graph, a_side, gamma, labels=None):
        self.graph = graph
        self.split = Bipartition(graph.n, a_side)
        if not self.split.is_valid_for(graph):
            raise ValueError("graph is not bipartite along the given split")
        if gamma < 0:
            raise ValueError("target length must be non-negative")
        self.gamma = gamma
        if labels is not None and len(labels) != graph.n:
            raise ValueError("need one label per vertex")
        self.labels = labels

    @property
    def a_mask(self):
        return self.split.a_mask

    @property
    def b_mask(self):
        return self.split.b_mask

    def label(self, v):
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self):
        return (f"OsgtdInstance(n={self.graph.n}, "
                f"|A|={self.a_mask.bit_count()}, gamma={self.gamma})")


def one_sided_maximum(inst, max_n=16, budget=2 ** 22):
    """Longest sequence drawn from the A side, by guarded brute force."""
    return max_sequence_bruteforce(inst.graph, TGD,
                                   restrict_to=inst.split.side_a(),
                                   max_n=max_n, budget=budget)


def has_one_sided_sequence_of_length(inst, target, budget=2 ** 22):
    """Guarded decision search for an A-side sequence of the given length."""
    return find_sequence_of_length(inst.graph, TGD, target,
                                   restrict_to=inst.split.side_a(),
                                   budget=budget)


# ---------------------------------------------------------------------------
# The multicolored-clique gadget graph.
#
# For k classes of q candidate vertices each, with alpha = beta = 2k+1:
#
# * selection: per class i, selection vertices x(i,p,a) for every candidate
#   position p and copy a, plus hub vertices y(i,a); x(i,p,a) ~ y(i,a).
# * verification: per class pair {i,j}, beta copies of a gadget holding one
#   edge vertex w(i,j,b,p,r) per cross edge (p,r) and a collector vertex
#   c(i,j,b) adjacent to all of them.
# * blocker: an edge f ~ g.
#
# Inter-gadget wiring: f and every collector see g's partner side: f ~ every
# hub, every collector ~ g and every hub. A selection vertex x(i,p,a) is
# adjacent to an edge vertex of a gadget for a pair containing i exactly when
# the edge's endpoint position in class i differs from p, so playing the
# copies for position p burns every edge vertex except those consistent
# with picking candidate p.
#
# The A side is the selection vertices, the collectors, and f; its size
# equals the target length, so a maximum run must use all of A and each
# member needs a private footprint. That is possible exactly when one
# position per class leaves a mutually consistent edge vertex alive in every
# gadget, i.e. when those positions form a multicolored clique.
# ---------------------------------------------------------------------------


class _MccLayout:
    """Dense id layout for the gadget graph of one instance."""

    def __init__(self, inst):
        k, q = inst.k, inst.q
        self.k, self.q = k, q
        self.alpha = self.beta = 2 * k + 1
        a = self.alpha
        self.x_base = 0                      # x(i,p,a): class-major blocks
        self.y_base = {}                     # y(i,a)
        nid = 0
        for i in range(k):
            nid += q * a                     # x block of class i
            self.y_base[i] = nid
            nid += a
        self.cross = {}                      # (i,j) -> [(p, r), ...]
        self.c_id = {}                       # (i,j,b) -> collector id
        self.w_id = {}                       # (i,j,b,p,r) -> edge-vertex id
        for i, j in itertools.combinations(range(k), 2):
            pairs = inst.cross_edges(i, j)
            self.cross[(i, j)] = pairs
            for b in range(self.beta):
                self.c_id[(i, j, b)] = nid
                nid += 1
                for p, r in pairs:
                    self.w_id[(i, j, b, p, r)] = nid
                    nid += 1
        self.f = nid
        self.g = nid + 1
        self.n = nid + 2

    def x(self, i, p, a):
        return (i * (self.q + 1)) * self.alpha + p * self.alpha + a

    def y(self, i, a):
        return self.y_base[i] + a

    def labels(self):
        out = [""] * self.n
        for i in range(self.k):
            for p in range(self.q):
                for a in range(self.alpha):
                    out[self.x(i, p, a)] = f"x({i},{p},{a})"
            for a in range(self.alpha):
                out[self.y(i, a)] = f"y({i},{a})"
        for (i, j, b), cid in self.c_id.items():
            out[cid] = f"c({i},{j},{b})"
        for (i, j, b, p, r), wid in self.w_id.items():
            out[wid] = f"w({i},{j},{b},{p},{r})"
        out[self.f] = "f"
        out[self.g] = "g"
        return out


def mcc_to_osgtd(inst):
    """Build the gadget graph for a multicolored-clique instance.

    Requires k >= 2 classes (with fewer there is no pair to verify). The
    returned instance carries labels for every gadget vertex and a target of
    alpha*k + beta*C(k,2) + 1.
    """
    if inst.k < 2:
        raise ValueError("need at least two color classes")
    lay = _MccLayout(inst)
    k, q, alpha, beta = lay.k, lay.q, lay.alpha, lay.beta
    g = Graph(lay.n)
    for i in range(k):
        for p in range(q):
            for a in range(alpha):
                g.add_edge(lay.x(i, p, a), lay.y(i, a))
    hubs = [lay.y(i, a) for i in range(k) for a in range(alpha)]
    for (i, j), pairs in lay.cross.items():
        for b in range(beta):
            cid = lay.c_id[(i, j, b)]
            g.add_edge(cid, lay.g)
            for y in hubs:
                g.add_edge(cid, y)
            for p, r in pairs:
                wid = lay.w_id[(i, j, b, p, r)]
                g.add_edge(cid, wid)
                # burn-on-mismatch wiring for both endpoint classes
                for pp in range(q):
                    if pp != p:
                        for a in range(alpha):
                            g.add_edge(lay.x(i, pp, a), wid)
                for rr in range(q):
                    if rr != r:
                        for a in range(alpha):
                            g.add_edge(lay.x(j, rr, a), wid)
    g.add_edge(lay.f, lay.g)
    for y in hubs:
        g.add_edge(lay.f, y)
    a_side = ([lay.x(i, p, a)
               for i in range(k) for p in range(q) for a in range(alpha)]
              + sorted(lay.c_id.values()) + [lay.f])
    gamma = alpha * k + beta * (k * (k - 1) // 2) + 1
    return OsgtdInstance(g, a_side, gamma, lay.labels())


def clique_sequence(inst, out, pick):
    """One-sided sequence of full target length from a multicolored clique.

    pick gives the chosen position in every class. The sequence plays all
    copies for each chosen position (footprinting hubs), then f (footprinting
    g), then every collector: the only edge vertex a collector still sees is
    the one matching the picked positions, which exists because they form a
    clique.
    """
    lay = _MccLayout(inst)
    seq = [lay.x(i, pick[i], a)
           for i in range(lay.k) for a in range(lay.alpha)]
    seq.append(lay.f)
    for i, j in itertools.combinations(range(lay.k), 2):
        for b in range(lay.beta):
            seq.append(lay.c_id[(i, j, b)])
    return seq


def audit_mcc_reduction(inst, out):
    """Cell-by-cell structural audit of a generated gadget graph.

    Rebuilds the expected adjacency matrix from per-role predicates (rather
    than from the generator's edge loops) and compares every cell, then
    checks the A side, the target formula, and the gadget counts. Returns
    (ok, message).
    """
    lay = _MccLayout(inst)
    if out.graph.n != lay.n:
        return False, f"vertex count {out.graph.n}, expected {lay.n}"
    role = {}                       # id -> ("x", i, p, a) | ("y", i, a) | ...
    for i in range(lay.k):
        for p in range(lay.q):
            for a in range(lay.alpha):
                role[lay.x(i, p, a)] = ("x", i, p, a)
        for a in range(lay.alpha):
            role[lay.y(i, a)] = ("y", i, a)
    for (i, j, b), cid in lay.c_id.items():
        role[cid] = ("c", i, j, b)
    for (i, j, b, p, r), wid in lay.w_id.items():
        role[wid] = ("w", i, j, b, p, r)
    role[lay.f] = ("f",)
    role[lay.g] = ("g",)

    def expected(u, v):
        ru, rv = role[u], role[v]
        if ru[0] > rv[0]:
            ru, rv = rv, ru
        kinds = (ru[0], rv[0])
        if kinds == ("x", "y"):
            return ru[1] == rv[1] and ru[3] == rv[2]
        if kinds == ("w", "x"):
            w, x = (ru, rv) if ru[0] == "w" else (rv, ru)
            _, i, j, _, p, r = w
            if x[1] == i:
                return x[2] != p
            if x[1] == j:
                return x[2] != r
            return False
        if kinds == ("c", "w"):
            return ru[1:4] == rv[1:4]
        if kinds == ("c", "g") or kinds == ("f", "g"):
            return True
        if kinds == ("c", "y") or kinds == ("f", "y"):
            return True
        return False

    for u in range(lay.n):
        for v in range(u + 1, lay.n):
            have = bool((out.graph.adj[u] >> v) & 1)
            if have != expected(u, v):
                return False, (f"adjacency mismatch at {out.label(u)} / "
                               f"{out.label(v)}: have {have}")
    want_a = ({lay.x(i, p, a) for i in range(lay.k)
               for p in range(lay.q) for a in range(lay.alpha)}
              | set(lay.c_id.values()) | {lay.f})
    if set(iter_bits(out.a_mask)) != want_a:
        return False, "A side does not match selection + collectors + f"
    want_gamma = lay.alpha * lay.k + lay.beta * (lay.k * (lay.k - 1) // 2) + 1
    if out.gamma != want_gamma:
        return False, f"target {out.gamma}, expected {want_gamma}"
    for (i, j), pairs in lay.cross.items():
        gadgets = [b for (ii, jj, b) in lay.c_id if (ii, jj) == (i, j)]
        if len(gadgets) != lay.beta:
            return False, f"pair ({i},{j}) has {len(gadgets)} gadgets"
        if len(pairs) != len(inst.cross_edges(i, j)):
            return False, f"pair ({i},{j}) edge-vertex count off"
    return True, "ok"


# ---------------------------------------------------------------------------
# Bipartite liftings of the plain sequence problems.
# ---------------------------------------------------------------------------


def _require_no_isolated(g):
    if g.has_isolated_vertices():
        raise ValueError("reduction needs a graph without isolated vertices")


def gd_to_osgtd(g, k):
    """Doubling lift for plain dominating sequences: a_i ~ b_j iff i = j
    or the source vertices are adjacent."""
    _require_no_isolated(g)
    n = g.n
    out = Graph(2 * n, ((i, n + i) for i in range(n)))
    for u, v in g.edges():
        out.add_edge(u, n + v)
        out.add_edge(v, n + u)
    labels = [f"a{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
    return OsgtdInstance(out, range(n), k, labels)


def tgd_to_osgtd(g, k):
    """Same lift without the diagonal, for total dominating sequences."""
    _require_no_isolated(g)
    n = g.n
    out = Graph(2 * n)
    for u, v in g.edges():
        out.add_edge(u, n + v)
        out.add_edge(v, n + u)
    labels = [f"a{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
    return OsgtdInstance(out, range(n), k, labels)


def lgd_to_osgtd(g, k):
    """Lift for L-sequences: b splits into a self-witness copy b1 (joined to
    its own a) and a neighbor-only copy b2."""
    _require_no_isolated(g)
    n = g.n

    def b1(i):
        return n + 2 * i

    def b2(i):
        return n + 2 * i + 1

    out = Graph(3 * n, ((i, b1(i)) for i in range(n)))
    for u, v in g.edges():
        out.add_edge(u, b1(v))
        out.add_edge(u, b2(v))
        out.add_edge(v, b1(u))
        out.add_edge(v, b2(u))
    labels = ([f"a{i}" for i in range(n)]
              + [x for i in range(n) for x in (f"b{i}.1", f"b{i}.2")])
    return OsgtdInstance(out, range(n), k, labels)


def osgtd_to_cobipartite(inst, target):
    """Cliqueify both sides; returns (graph, adjusted target).

    For plain/Z targets the target carries over unchanged. Total and L
    targets need a padding pair on each side first (two fresh vertices in A,
    two in B) and the target grows by 4; a zero target is rejected there
    because the padded graph always admits the four pad moves.
    """
    _require_no_isolated(inst.graph)
    if target in (GD, ZSEQ):
        out = inst.graph.copy()
        a_mask = inst.a_mask
        kprime = inst.gamma
    elif target in (TGD, LSEQ):
        if inst.gamma == 0:
            raise ValueError("padded lift needs a positive target")
        n = inst.graph.n
        out = Graph(n + 4)
        for u, v in inst.graph.edges():
            out.add_edge(u, v)
        a_mask = inst.a_mask | (1 << n) | (1 << (n + 1))
        kprime = inst.gamma + 4
    else:
        raise ValueError(f"unknown lift target {target!r}")
    for side in (a_mask, out.full_mask() & ~a_mask):
        members = list(iter_bits(side))
        for u, v in itertools.combinations(members, 2):
            if not (out.adj[u] >> v) & 1:
                out.add_edge(u, v)
    return out, kprime


def osgtd_to_hypergraph(inst):
    """Covering view: ground set is the B side, one edge per A vertex's
    neighborhood."""
    b_list = inst.split.side_b()
    index = {v: i for i, v in enumerate(b_list)}
    edges = []
    for v in inst.split.side_a():
        nbrs = [index[u] for u in inst.graph.neighbors(v)]
        if not nbrs:
            raise ValueError(f"A-side vertex {v} is isolated")
        edges.append(nbrs)
    return Hypergraph(len(b_list), edges)


def corona_with_leaves(g):
    """Attach one pendant leaf to every vertex; leaf of v gets id n + v."""
    out = Graph(2 * g.n)
    for u, v in g.edges():
        out.add_edge(u, v)
    for v in range(g.n):
        out.add_edge(v, g.n + v)
    return out


# ---------------------------------------------------------------------------
# File formats: the one-sided instance and the color-class partition.
# ---------------------------------------------------------------------------


def parse_osgtd(text):
    """Parse "p osgtd <n> <m> <gamma>", an "a" line of 1-based A-side ids,
    then 1-based edge lines."""
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("c"):
            lines.append(line)
    if not lines:
        raise ParseError("empty one-sided instance")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "p" or head[1] != "osgtd":
        raise ParseError(f"malformed header: {lines[0]!r}")
    try:
        n, m, gamma = int(head[2]), int(head[3]), int(head[4])
    except ValueError:
        raise ParseError(f"malformed header: {lines[0]!r}") from None
    if n < 0 or m < 0 or gamma < 0:
        raise ParseError("negative counts in header")
    if len(lines) < 2 or lines[1].split()[0] != "a":
        raise ParseError("missing A-side line")
    a_side = []
    for tok in lines[1].split()[1:]:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"malformed A-side id {tok!r}") from None
        if not (1 <= v <= n):
            raise ParseError(f"A-side id {v} out of range")
        a_side.append(v - 1)
    g = Graph(n)
    for line in lines[2:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"malformed edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge line: {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range in {line!r}")
        g.add_edge(u - 1, v - 1)
    if g.m != m:
        raise ParseError(f"header promises {m} edges, found {g.m}")
    try:
        return OsgtdInstance(g, a_side, gamma)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_osgtd(inst, with_labels=False):
    out = []
    if with_labels and inst.labels is not None:
        for v in range(inst.graph.n):
            out.append(f"c label {v + 1} {inst.labels[v]}")
    es = inst.graph.edges()
    out.append(f"p osgtd {inst.graph.n} {len(es)} {inst.gamma}")
    out.append(" ".join(["a"] + [str(v + 1) for v in inst.split.side_a()]))
    for u, v in es:
        out.append(f"{u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def parse_partition(text, n):
    """Color classes, one line per class, 1-based whitespace-separated ids."""
    classes = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        cls = []
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"malformed class member {tok!r}") from None
            if not (1 <= v <= n):
                raise ParseError(f"class member {v} out of range")
            cls.append(v - 1)
        classes.append(cls)
    if not classes:
        raise ParseError("empty partition")
    return classes


def write_partition(classes):
    return "\n".join(" ".join(str(v + 1) for v in cls)
                     for cls in classes) + "\n"


def parse_mcc(graph_text, partition_text):
    g = parse_graph(graph_text)
    try:
        return MccInstance(g, parse_partition(partition_text, g.n))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
