"""Finite posets, the central poset of a graph on a clique, levels and width."""

from dataclasses import dataclass, field

import networkx as nx

from .graph import ParseError, bits, connected_components, induced_subgraph, mask_of
from .interval import interval_structure


class Poset:
    """Strict partial order on elements 0..n-1 stored as bitmask rows.

    up[i] holds the elements strictly above i, down[i] those strictly below.
    side[i] records provenance after a disjoint union (0 for the first operand).
    """

    def __init__(self, n, relations=(), colors=None, side=None, close=True):
        self.n = n
        up = [0] * n
        for a, b in relations:
            if a == b:
                raise ValueError(f"reflexive relation at {a}")
            up[a] |= 1 << b
        if close:
            up = _transitive_closure(up)
        for i in range(n):
            if up[i] >> i & 1:
                raise ValueError("relation contains a cycle")
        self.up = up
        self.down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                self.down[j] |= 1 << i
        self.colors = list(colors) if colors is not None else [0] * n
        self.side = list(side) if side is not None else [0] * n

    def less(self, a, b):
        return bool(self.up[a] >> b & 1)

    def comparable(self, a, b):
        return self.less(a, b) or self.less(b, a)

    def color(self, i):
        return self.colors[i]

    def relations(self):
        return [(a, b) for a in range(self.n) for b in bits(self.up[a])]

    def covers(self):
        out = []
        for a in range(self.n):
            for b in bits(self.up[a]):
                # b covers a iff nothing strictly between
                if not self.up[a] & self.down[b]:
                    out.append((a, b))
        return out

    def levels(self):
        return levels(self)

    def level_of(self):
        lv = [0] * self.n
        for i, layer in enumerate(levels(self)):
            for x in layer:
                lv[x] = i
        return lv

    def with_colors(self, colors):
        p = Poset.__new__(Poset)
        p.n, p.up, p.down, p.side = self.n, self.up, self.down, self.side
        p.colors = list(colors)
        return p

    def __repr__(self):
        return f"Poset(n={self.n}, relations={len(self.relations())})"


def _transitive_closure(up):
    n = len(up)
    up = list(up)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    return up


def levels(p):
    """L1 = minimal elements, L_{i+1} = minimal elements of the remainder."""
    left = (1 << p.n) - 1
    out = []
    while left:
        layer = [i for i in bits(left) if not p.down[i] & left]
        out.append(layer)
        for i in layer:
            left &= ~(1 << i)
    return out


@dataclass
class WidthResult:
    width: int
    chains: list
    antichain: list


def width(p):
    """Dilworth: minimum chain cover from a maximum matching of the
    comparability bipartite graph, maximum antichain from Koenig's cover."""
    if p.n == 0:
        return WidthResult(0, [], [])
    bg = nx.Graph()
    left = [("L", i) for i in range(p.n)]
    bg.add_nodes_from(left)
    bg.add_nodes_from(("R", i) for i in range(p.n))
    bg.add_edges_from((("L", a), ("R", b)) for a, b in p.relations())
    matching = nx.bipartite.hopcroft_karp_matching(bg, top_nodes=left)
    cover = nx.bipartite.to_vertex_cover(bg, matching, top_nodes=left)
    nxt = {}
    has_pred = set()
    for a in range(p.n):
        m = matching.get(("L", a))
        if m is not None:
            nxt[a] = m[1]
            has_pred.add(m[1])
    chains = []
    for a in range(p.n):
        if a in has_pred:
            continue
        ch = [a]
        while ch[-1] in nxt:
            ch.append(nxt[ch[-1]])
        chains.append(ch)
    anti = [i for i in range(p.n) if ("L", i) not in cover and ("R", i) not in cover]
    if len(anti) != len(chains):
        raise AssertionError("Dilworth witnesses disagree")
    for i, a in enumerate(anti):
        for b in anti[i + 1:]:
            if p.comparable(a, b):
                raise AssertionError("antichain witness is not an antichain")
    return WidthResult(len(chains), chains, anti)


def poset_union(p, q):
    """Disjoint union; q's element i becomes p.n + i; side records provenance."""
    off = p.n
    rel = p.relations() + [(a + off, b + off) for a, b in q.relations()]
    return Poset(p.n + q.n, rel, p.colors + q.colors,
                 [0] * p.n + [1] * q.n, close=False)


def parse_poset(text):
    """`p n`, then `r a b` relations (closed transitively), `c v color`."""
    n = None
    rel = []
    colors = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            args = [int(t) for t in tok[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw!r}") from None
        if tok[0] == "p":
            if n is not None or len(args) != 1 or args[0] < 0:
                raise ParseError(lineno, "header must be a single `p <n>`")
            n = args[0]
        elif n is None:
            raise ParseError(lineno, "missing `p` header")
        elif tok[0] == "r":
            if len(args) != 2 or not all(0 <= a < n for a in args) or args[0] == args[1]:
                raise ParseError(lineno, "relation must be `r <a> <b>` with distinct ids in range")
            rel.append(tuple(args))
        elif tok[0] == "c":
            if len(args) != 2 or not 0 <= args[0] < n:
                raise ParseError(lineno, "color line must be `c <v> <color>`")
            colors[args[0]] = args[1]
        else:
            raise ParseError(lineno, f"unknown line type {tok[0]!r}")
    if n is None:
        raise ParseError(0, "empty document")
    try:
        return Poset(n, rel, [colors.get(i, 0) for i in range(n)])
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def serialize_poset(p):
    lines = [f"p {p.n}"]
    lines += [f"r {a} {b}" for a, b in p.covers()]
    if any(c != 0 for c in p.colors):
        lines += [f"c {i} {c}" for i, c in enumerate(p.colors)]
    return "\n".join(lines) + "\n"


# -- central poset --------------------------------------------------------

@dataclass
class Bridge:
    """One or more equivalent components of G - C with their attachment chain."""
    components: list
    vertices: frozenset
    chain: tuple          # strictly nested neighborhoods in C, smallest first
    upper: frozenset = field(init=False)
    lower: frozenset = field(init=False)

    def __post_init__(self):
        self.upper = self.chain[-1]
        self.lower = self.chain[0]


@dataclass
class CentralPoset:
    clique: frozenset
    bridges: list
    poset: Poset


@dataclass
class NonIntervalBridge:
    """Failure value: the bridge whose G[C + X] is not an interval graph."""
    clique: frozenset
    component: frozenset


class NotMaximalCliqueError(ValueError):
    pass


def attachment_chain(g, cm, comp):
    """Distinct neighborhoods in C of the vertices of comp, smallest first;
    None if they are not nested."""
    nbs = sorted({g.masks[v] & cm for v in comp}, key=lambda m: m.bit_count())
    for a, b in zip(nbs, nbs[1:]):
        if a & b != a:
            return None
    return tuple(frozenset(bits(m)) for m in nbs)


def split_bridges(g, c, check_maximal=True):
    """Components of g - c merged into bridges, without interval checks.

    Returns (bridges, bad) where bad lists components whose neighborhoods in c
    do not form a chain."""
    c = frozenset(c)
    cm = mask_of(c)
    if not g.is_clique(c):
        raise ValueError("vertex set is not a clique")
    if check_maximal:
        for v in range(g.n):
            if not cm >> v & 1 and g.masks[v] & cm == cm:
                raise NotMaximalCliqueError(f"clique is not maximal (vertex {v} sees all of it)")
    comps = connected_components(g, c)
    merged = {}
    bridges = []
    bad = []
    for comp in comps:
        chain = attachment_chain(g, cm, comp)
        if chain is None:
            bad.append(comp)
            continue
        if len(chain) == 1:
            key = chain[0]
            if key in merged:
                b = merged[key]
                b.components.append(comp)
                b.vertices = b.vertices | comp
                continue
            b = Bridge([comp], comp, chain)
            merged[key] = b
            bridges.append(b)
        else:
            bridges.append(Bridge([comp], comp, chain))
    return bridges, bad


def bridge_poset(bridges):
    rel = []
    for i, x in enumerate(bridges):
        for j, y in enumerate(bridges):
            if i != j and x.upper <= y.lower:
                rel.append((i, j))
    return Poset(len(bridges), rel, close=False)


def central_poset(g, c, check_maximal=True):
    """Bridges of g on the maximal clique c and the central poset on them.

    Returns CentralPoset, or NonIntervalBridge when some G[C + X] is not an
    interval graph.
    """
    c = frozenset(c)
    bridges, bad = split_bridges(g, c, check_maximal)
    if bad:
        return NonIntervalBridge(c, bad[0])
    for b in bridges:
        sub, _ = induced_subgraph(g, c | b.vertices)
        if interval_structure(sub) is None:
            return NonIntervalBridge(c, b.vertices)
    return CentralPoset(c, bridges, bridge_poset(bridges))
