"""Graph, hypergraph and bipartition types plus file formats.

Vertices are dense 0-based integers. Adjacency is kept as one Python int
bitmask per vertex, which makes neighborhood algebra (unions, differences,
"exactly one white neighbor" tests) single integer operations.

Supported file formats:

* PACE-style graph: comment lines start with "c", header "p tw <n> <m>",
  then one "<u> <v>" line per edge, 1-based.
* Plain edge list: first non-comment line is "<n>", then "<u> <v>" lines,
  0-based.
* Hypergraph: first line "<|X|> <|E|>", then one line of space-separated
  0-based ground-set ids per edge (possibly empty).

PACE ids are converted to 0-based at the I/O boundary.
"""

import random

from .errors import ParseError


def iter_bits(mask):
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitset adjacency."""

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj = [0] * n
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u, v):
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        # duplicate edges collapse for free in the bitmask
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    @property
    def m(self):
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self):
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            for w in iter_bits(rest):
                out.append((u, u + 1 + w))
        return out

    def neighbors(self, v):
        return list(iter_bits(self.adj[v]))

    def degree(self, v):
        return self.adj[v].bit_count()

    def full_mask(self):
        return (1 << self.n) - 1

    def has_isolated_vertices(self):
        return any(a == 0 for a in self.adj) if self.n else False

    def is_connected(self):
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.full_mask()

    def copy(self):
        g = Graph(self.n)
        g.adj = list(self.adj)
        return g

    def __eq__(self, other):
        if isinstance(other, Graph):
            return self.n == other.n and self.adj == other.adj
        return NotImplemented

    def __hash__(self):
        return hash((self.n, tuple(self.adj)))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def neighborhood(g, v, closed=False):
    """Neighborhood of v as a bitmask; closed=True includes v itself."""
    nb = g.adj[v]
    if closed:
        nb |= 1 << v
    return nb


class Hypergraph:
    """Hypergraph over ground set 0..ground_size-1; edges are bitmasks.

    Edge order and duplicates are preserved (covering sequences pick edges
    by index, and a reduction may legitimately emit equal neighborhoods).
    """

    __slots__ = ("ground_size", "edges")

    def __init__(self, ground_size, edges=()):
        if ground_size < 0:
            raise ValueError("ground set size must be non-negative")
        self.ground_size = ground_size
        self.edges = []
        full = (1 << ground_size) - 1
        for e in edges:
            em = e if isinstance(e, int) else mask_of(e)
            if em & ~full:
                raise ValueError("hyperedge member out of range")
            self.edges.append(em)

    def __eq__(self, other):
        if isinstance(other, Hypergraph):
            return (self.ground_size == other.ground_size
                    and self.edges == other.edges)
        return NotImplemented

    def __repr__(self):
        return f"Hypergraph(|X|={self.ground_size}, |E|={len(self.edges)})"


class Bipartition:
    """A two-sided split of a graph's vertex set, stored as the A-side mask."""

    __slots__ = ("n", "a_mask")

    def __init__(self, n, a_side):
        self.n = n
        self.a_mask = a_side if isinstance(a_side, int) else mask_of(a_side)
        if self.a_mask & ~((1 << n) - 1):
            raise ValueError("A-side member out of range")

    @property
    def b_mask(self):
        return ((1 << self.n) - 1) & ~self.a_mask

    def side_a(self):
        return list(iter_bits(self.a_mask))

    def side_b(self):
        return list(iter_bits(self.b_mask))

    def is_valid_for(self, g):
        """True iff every edge of g crosses the split."""
        if g.n != self.n:
            return False
        a = self.a_mask
        return all(not (g.adj[u] & a) if (a >> u) & 1 else not (g.adj[u] & ~a)
                   for u in range(g.n))

    def __eq__(self, other):
        if isinstance(other, Bipartition):
            return self.n == other.n and self.a_mask == other.a_mask
        return NotImplemented


def _content_lines(text):
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield line


def parse_graph(text):
    """Parse a graph from PACE or plain edge-list format (auto-detected)."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph input")
    head = lines[0].split()
    if head[0] == "p":
        if len(head) != 4 or head[1] != "tw":
            raise ParseError(f"malformed PACE header: {lines[0]!r}")
        try:
            n, m = int(head[2]), int(head[3])
        except ValueError:
            raise ParseError(f"malformed PACE header: {lines[0]!r}") from None
        if n < 0 or m < 0:
            raise ParseError("negative counts in PACE header")
        g = Graph(n)
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"malformed edge line: {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"malformed edge line: {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex id out of range in {line!r}")
            try:
                g.add_edge(u - 1, v - 1)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        return g
    # plain edge list, 0-based
    if len(head) != 1:
        raise ParseError(f"expected vertex count, got {lines[0]!r}")
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(f"expected vertex count, got {lines[0]!r}") from None
    if n < 0:
        raise ParseError("negative vertex count")
    g = Graph(n)
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"malformed edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge line: {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range in {line!r}")
        try:
            g.add_edge(u, v)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return g


def write_graph(g):
    """Serialize to PACE format (1-based, edges sorted)."""
    es = g.edges()
    out = [f"p tw {g.n} {len(es)}"]
    for u, v in es:
        out.append(f"{u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def parse_hypergraph(text):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty hypergraph input")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"malformed hypergraph header: {lines[0]!r}")
    try:
        nx, ne = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"malformed hypergraph header: {lines[0]!r}") from None
    # blank edge lines are legal (empty hyperedge), so split on raw lines here
    raw = text.splitlines()
    body = []
    seen_header = False
    for line in raw:
        s = line.strip()
        if s.startswith("c"):
            continue
        if not seen_header:
            if s:
                seen_header = True
            continue
        body.append(s)
    while len(body) > ne and body and not body[-1]:
        body.pop()
    if len(body) != ne:
        raise ParseError(f"expected {ne} hyperedge lines, found {len(body)}")
    edges = []
    for line in body:
        members = []
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"malformed hyperedge line: {line!r}") from None
            if not (0 <= x < nx):
                raise ParseError(f"hyperedge member out of range: {x}")
            members.append(x)
        edges.append(members)
    return Hypergraph(nx, edges)


def write_hypergraph(h):
    out = [f"{h.ground_size} {len(h.edges)}"]
    for e in h.edges:
        out.append(" ".join(str(x) for x in iter_bits(e)))
    return "\n".join(out) + "\n"


def path_graph(n):
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n):
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def gnp_graph(n, p, seed):
    """Erdos-Renyi G(n,p) from an explicit seed; no ambient randomness."""
    rng = random.Random(seed)
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def caterpillar_graph(n, seed):
    """Caterpillar on n vertices: a path spine with leaves hung off it.

    The spine takes ceil(n/2) vertices; each remaining vertex becomes a leaf
    of a seeded-random spine vertex, so the shape is reproducible.
    """
    if n < 2:
        return Graph(n)
    rng = random.Random(seed)
    spine = (n + 1) // 2
    g = Graph(n, ((i, i + 1) for i in range(spine - 1)))
    for leaf in range(spine, n):
        g.add_edge(leaf, rng.randrange(spine))
    return g
