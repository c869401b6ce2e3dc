"""Simple undirected graphs with stable integer vertex ids.

Vertex sets are exchanged as frozensets; adjacency is additionally kept as
Python int bitmasks so subset and intersection tests are word-parallel.
"""

from collections import deque


class ParseError(ValueError):
    """Malformed graph or poset document."""

    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(m):
    """Yield the positions of set bits of m in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class Graph:
    """Immutable simple graph on vertices 0..n-1 with optional vertex colors."""

    __slots__ = ("n", "adj", "masks", "colors", "_m")

    def __init__(self, n, edges=(), colors=None):
        if n < 0:
            raise ValueError("negative vertex count")
        nb = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nb[u].add(v)
            nb[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nb)
        self.masks = tuple(mask_of(s) for s in nb)
        self._m = sum(len(s) for s in nb) // 2
        if colors is not None:
            colors = tuple(colors)
            if len(colors) != n:
                raise ValueError("color vector length differs from n")
        self.colors = colors

    @classmethod
    def from_masks(cls, masks, colors=None):
        g = cls.__new__(cls)
        g.n = len(masks)
        g.masks = tuple(masks)
        g.adj = tuple(tuple(bits(m)) for m in g.masks)
        g._m = sum(len(a) for a in g.adj) // 2
        g.colors = tuple(colors) if colors is not None else None
        return g

    @property
    def m(self):
        return self._m

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u, v):
        return bool(self.masks[u] >> v & 1)

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def color(self, v):
        return 0 if self.colors is None else self.colors[v]

    def with_colors(self, colors):
        return Graph.from_masks(self.masks, colors)

    def is_clique(self, vs):
        vs = list(vs)
        full = mask_of(vs)
        return all((self.masks[v] | 1 << v) & full == full for v in vs)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.masks == other.masks
                and self.colors == other.colors)

    def __hash__(self):
        return hash((self.masks, self.colors))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def parse_graph(text):
    """Parse the `p n m` / `e u v` / `c v color` edge-list format."""
    n = None
    declared_m = 0
    edges = []
    seen = set()
    colors = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        try:
            args = [int(t) for t in tok[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw!r}") from None
        if kind == "p":
            if n is not None:
                raise ParseError(lineno, "second header line")
            if len(args) != 2 or args[0] < 0 or args[1] < 0:
                raise ParseError(lineno, "header must be `p <n> <m>`")
            n, declared_m = args
            continue
        if n is None:
            raise ParseError(lineno, "missing `p` header")
        if kind == "e":
            if len(args) != 2:
                raise ParseError(lineno, "edge line must be `e <u> <v>`")
            u, v = args
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(lineno, f"vertex id out of range 0..{n - 1}")
            if u == v:
                raise ParseError(lineno, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {key}")
            seen.add(key)
            edges.append(key)
        elif kind == "c":
            if len(args) != 2:
                raise ParseError(lineno, "color line must be `c <v> <color>`")
            v, col = args
            if not 0 <= v < n:
                raise ParseError(lineno, f"vertex id out of range 0..{n - 1}")
            if v in colors:
                raise ParseError(lineno, f"vertex {v} colored twice")
            colors[v] = col
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise ParseError(0, "empty document")
    if len(edges) != declared_m:
        raise ParseError(0, f"header declares {declared_m} edges, found {len(edges)}")
    col = None
    if colors:
        col = [colors.get(v, 0) for v in range(n)]
    return Graph(n, edges, col)


def serialize_graph(g):
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    if g.colors is not None:
        lines += [f"c {v} {c}" for v, c in enumerate(g.colors)]
    return "\n".join(lines) + "\n"


def disjoint_union(g, h):
    """Return (g + h, offset); h's vertex v becomes v + offset."""
    off = g.n
    masks = list(g.masks) + [m << off for m in h.masks]
    colors = None
    if g.colors is not None or h.colors is not None:
        colors = [g.color(v) for v in range(g.n)] + [h.color(v) for v in range(h.n)]
    return Graph.from_masks(masks, colors), off


def connected_components(g, forbidden=frozenset()):
    """Components of g - forbidden, ordered by minimum vertex."""
    blocked = mask_of(forbidden)
    seen = blocked
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        seen |= comp
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.masks[v]
            nxt &= ~seen
            seen |= nxt
            comp |= nxt
            frontier = nxt
        comps.append(frozenset(bits(comp)))
    return comps


def induced_subgraph(g, s):
    """Return (g[s], old->new mapping) with s relabeled in increasing order."""
    order = sorted(s)
    index = {v: i for i, v in enumerate(order)}
    sm = mask_of(order)
    masks = []
    for v in order:
        masks.append(mask_of(index[u] for u in bits(g.masks[v] & sm)))
    colors = None if g.colors is None else [g.colors[v] for v in order]
    return Graph.from_masks(masks, colors), index


def relabel(g, perm):
    """Graph whose vertex perm[v] plays the role of v in g."""
    masks = [0] * g.n
    for v in range(g.n):
        masks[perm[v]] = mask_of(perm[u] for u in g.adj[v])
    colors = None
    if g.colors is not None:
        colors = [0] * g.n
        for v in range(g.n):
            colors[perm[v]] = g.colors[v]
    return Graph.from_masks(masks, colors)


def is_isomorphism(g, h, f):
    """Check that f (sequence or dict, g-vertex -> h-vertex) is an isomorphism."""
    if g.n != h.n or g.m != h.m:
        return False
    img = [f[v] for v in range(g.n)]
    if sorted(img) != list(range(h.n)):
        return False
    for v in range(g.n):
        if g.color(v) != h.color(img[v]):
            return False
        if mask_of(img[u] for u in g.adj[v]) != h.masks[img[v]]:
            return False
    return True


def is_automorphism(g, p):
    return is_isomorphism(g, g, p)


def bfs_distances(g, source):
    dist = {source: 0}
    q = deque([source])
    while q:
        v = q.popleft()
        for u in g.adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist
