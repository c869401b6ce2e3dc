"""Interval graph recognition, colored canonical forms and automorphism generators.

The maximal cliques of a chordal graph are the ground set; every vertex
contributes the set of cliques containing it.  The graph is interval iff these
sets admit a consecutive arrangement, which we decide by building the PQ-tree
of the set family from its overlap components:

* the unions of overlap components form a laminar family;
* a component whose union is the current node's leaf set forces a Q-node,
  whose child order is found by incremental partition refinement;
* otherwise the maximal unions (plus uncovered leaves) are free P-children.

Each vertex is attached to the lowest node covering its clique set.  Node codes
computed bottom-up give a canonical clique order, and therefore a canonical
interval model (l, r, color) per vertex.
"""

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .chordal import NotChordal, maximal_cliques, peo
from .graph import Graph, bits


class NotIntervalError(ValueError):
    pass


class _NotC1P(Exception):
    pass


class _Node:
    __slots__ = ("kind", "leaves", "children", "clique", "full", "spans",
                 "code", "flip", "symmetric", "order", "listing", "vlist")

    def __init__(self, kind, leaves):
        self.kind = kind
        self.leaves = leaves
        self.children = []
        self.clique = None
        self.full = []
        self.spans = []
        self.flip = False
        self.symmetric = False


def _overlap_components(sets):
    k = len(sets)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        a = sets[i]
        for j in range(i + 1, k):
            b = sets[j]
            inter = a & b
            if inter and inter != a and inter != b:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = defaultdict(list)
    for i in range(k):
        groups[find(i)].append(sets[i])
    return list(groups.values())


def _arrange(sets):
    """Ordered partition of the union of one overlap component so that every
    set is a run of blocks; unique up to reversal.  Raises _NotC1P."""
    k = len(sets)
    adj = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            inter = sets[i] & sets[j]
            if inter and inter != sets[i] and inter != sets[j]:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * k
    seen[0] = True
    order = [0]
    for i in order:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                order.append(j)
    blocks = [sets[0]]
    union = sets[0]
    for idx in order[1:]:
        s = sets[idx]
        touched = [i for i, b in enumerate(blocks) if b & s]
        lo, hi = touched[0], touched[-1]
        if len(touched) != hi - lo + 1:
            raise _NotC1P
        for i in range(lo + 1, hi):
            if blocks[i] & ~s:
                raise _NotC1P
        new = s & ~union
        nb = len(blocks)
        if lo == hi:
            b = blocks[lo]
            if not new:
                raise AssertionError("overlapping set inside a single block")
            if nb == 1 or hi == nb - 1:
                mid = [b & ~s, b & s]
                blocks = blocks[:lo] + [x for x in mid if x] + [new]
            elif lo == 0:
                mid = [b & s, b & ~s]
                blocks = [new] + [x for x in mid if x] + blocks[1:]
            else:
                raise _NotC1P
        else:
            left, right = blocks[lo], blocks[hi]
            lsplit = [x for x in (left & ~s, left & s) if x]
            rsplit = [x for x in (right & s, right & ~s) if x]
            if new:
                if hi == nb - 1 and not right & ~s:
                    blocks = blocks[:lo] + lsplit + blocks[lo + 1:] + [new]
                elif lo == 0 and not left & ~s:
                    blocks = [new] + blocks[:hi] + rsplit + blocks[hi + 1:]
                else:
                    raise _NotC1P
            else:
                blocks = blocks[:lo] + lsplit + blocks[lo + 1:hi] + rsplit + blocks[hi + 1:]
        union |= s
    # every member must be a run of whole blocks
    for s in sets:
        idx = [i for i, b in enumerate(blocks) if b & s]
        if idx[-1] - idx[0] + 1 != len(idx) or any(blocks[i] & ~s for i in idx):
            raise _NotC1P
    return blocks


def _build(w, family):
    if w & (w - 1) == 0:
        node = _Node("L", w)
        node.clique = w.bit_length() - 1
        return node
    comps = _overlap_components(family)
    for comp in comps:
        u = 0
        for s in comp:
            u |= s
        if u == w:
            blocks = _arrange(comp)
            node = _Node("Q", w)
            for b in blocks:
                node.children.append(_build(b, [s for s in family if s & b == s and s != b]))
            return node
    unions = set()
    for comp in comps:
        u = 0
        for s in comp:
            u |= s
        unions.add(u)
    maximal = [u for u in unions if not any(u != v and u & v == u for v in unions)]
    maximal.sort()
    node = _Node("P", w)
    covered = 0
    for u in maximal:
        covered |= u
        node.children.append(_build(u, [s for s in family if s & u == s and s != u]))
    for x in bits(w & ~covered):
        node.children.append(_build(1 << x, []))
    return node


def _attach(root, v, s, colkey):
    node = root
    while True:
        if node.leaves == s:
            node.full.append(v)
            return
        if node.kind == "P":
            node = next(c for c in node.children if c.leaves & s == s)
            continue
        idx = [i for i, c in enumerate(node.children) if c.leaves & s]
        if len(idx) == 1:
            node = node.children[idx[0]]
            continue
        node.spans.append((idx[0], idx[-1], colkey[v], v))
        return


def _encode(node, colkey):
    full = tuple(sorted(colkey[v] for v in node.full))
    for c in node.children:
        _encode(c, colkey)
    if node.kind == "L":
        node.code = ("L", full)
        node.order = []
    elif node.kind == "P":
        order = sorted(range(len(node.children)), key=lambda i: node.children[i].code)
        node.order = order
        node.code = ("P", full, tuple(node.children[i].code for i in order))
    else:
        k = len(node.children)
        codes = tuple(c.code for c in node.children)
        fwd = (codes, tuple(sorted((i, j, col) for i, j, col, _ in node.spans)))
        rev = (codes[::-1], tuple(sorted((k - 1 - j, k - 1 - i, col) for i, j, col, _ in node.spans)))
        node.symmetric = fwd == rev
        node.flip = rev < fwd
        node.order = list(range(k))[::-1] if node.flip else list(range(k))
        node.code = ("Q", full, min(fwd, rev))


def _listing(node):
    """Canonical clique listing and canonical vertex listing of a subtree."""
    if node.kind == "L":
        node.listing = [node.clique]
    else:
        lst = []
        for i in node.order:
            lst.extend(_listing(node.children[i]))
        node.listing = lst
    return node.listing


def _vertex_listings(node, cset, colkey):
    """Vertices attached in the subtree, sorted by their relative interval."""
    pos = {c: i for i, c in enumerate(node.listing)}
    out = []
    stack = [node]
    while stack:
        x = stack.pop()
        for v in x.full:
            out.append(v)
        for sp in x.spans:
            out.append(sp[3])
        stack.extend(x.children)

    def key(v):
        ps = [pos[c] for c in bits(cset[v])]
        return (min(ps), max(ps), colkey[v], v)

    out.sort(key=key)
    return out


@dataclass(frozen=True)
class IntervalCanon:
    """Canonical interval model: canon string, n, color signature."""
    canon: str
    n: int
    colors: tuple


@dataclass
class IntervalStructure:
    """Everything derived from the PQ-tree of one colored interval graph."""
    n: int
    cliques: list
    clique_order: list
    canon: IntervalCanon
    labeling: list
    root: object
    cset: list
    colkey: list


def _colkeys(g, colors):
    if colors is None:
        colors = g.colors
    if colors is None:
        return ["0"] * g.n
    if isinstance(colors, dict):
        return [repr(colors.get(v, 0)) for v in range(g.n)]
    return [repr(c) for c in colors]


@lru_cache(maxsize=50000)
def _structure_cached(masks, colkey):
    n = len(masks)
    g = Graph.from_masks(masks)
    if n == 0:
        return IntervalStructure(0, [], [], IntervalCanon("", 0, ()), [], None, [], [])
    res = peo(g)
    if isinstance(res, NotChordal):
        return None
    cliques = maximal_cliques(g)
    k = len(cliques)
    cset = [0] * n
    for i, c in enumerate(cliques):
        for v in c:
            cset[v] |= 1 << i
    family = sorted({s for s in cset if s & (s - 1)})
    full = (1 << k) - 1
    try:
        root = _build(full, [s for s in family if s != full])
    except _NotC1P:
        return None
    for v in range(n):
        _attach(root, v, cset[v], colkey)
    _encode(root, colkey)
    order = _listing(root)
    pos = [0] * k
    for i, c in enumerate(order):
        pos[c] = i
    model = []
    for v in range(n):
        ps = [pos[c] for c in bits(cset[v])]
        model.append((min(ps), max(ps), colkey[v], v))
    model.sort()
    labeling = [0] * n
    for rank, (_, _, _, v) in enumerate(model):
        labeling[v] = rank
    canon = ";".join(f"{l},{r},{c}" for l, r, c, _ in model)
    sig = tuple(sorted(colkey))
    return IntervalStructure(n, cliques, [cliques[c] for c in order],
                             IntervalCanon(f"{n}|{canon}", n, sig), labeling, root, cset, colkey)


def interval_structure(g, colors=None):
    """PQ-based structure of g, or None if g is not an interval graph."""
    return _structure_cached(g.masks, tuple(_colkeys(g, colors)))


def is_interval(g):
    """(True, consecutive clique ordering) or (False, None)."""
    st = interval_structure(g)
    if st is None:
        return False, None
    return True, st.clique_order


def interval_canon(g, colors=None):
    """Canonical form, complete for color-preserving isomorphism."""
    st = interval_structure(g, colors)
    if st is None:
        raise NotIntervalError("graph is not an interval graph")
    return st.canon


def interval_iso(g, h, colors_g=None, colors_h=None):
    """A color-preserving isomorphism g -> h as a list, or None."""
    sg = interval_structure(g, colors_g)
    sh = interval_structure(h, colors_h)
    if sg is None or sh is None:
        raise NotIntervalError("graph is not an interval graph")
    if sg.canon != sh.canon:
        return None
    inv = [0] * sh.n
    for v, r in enumerate(sh.labeling):
        inv[r] = v
    return [inv[sg.labeling[v]] for v in range(sg.n)]


def _subtree_map(a, b, st, perm):
    """Write into perm the canonical isomorphism of equal-code subtrees a -> b."""
    va = _vertex_listings(a, st.cset, st.colkey)
    vb = _vertex_listings(b, st.cset, st.colkey)
    for x, y in zip(va, vb):
        perm[x] = y


def interval_aut_gens(g, colors=None):
    """Generators of the color-preserving automorphism group of an interval graph."""
    st = interval_structure(g, colors)
    if st is None:
        raise NotIntervalError("graph is not an interval graph")
    n = st.n
    gens = []
    # twins: same clique set and color
    groups = defaultdict(list)
    for v in range(n):
        groups[(st.cset[v], st.colkey[v])].append(v)
    for vs in groups.values():
        for x, y in zip(vs, vs[1:]):
            p = list(range(n))
            p[x], p[y] = y, x
            gens.append(tuple(p))
    if st.root is None:
        return gens
    stack = [st.root]
    while stack:
        node = stack.pop()
        stack.extend(node.children)
        if node.kind == "P":
            kids = [node.children[i] for i in node.order]
            for a, b in zip(kids, kids[1:]):
                if a.code == b.code:
                    p = list(range(n))
                    _subtree_map(a, b, st, p)
                    _subtree_map(b, a, st, p)
                    gens.append(tuple(p))
        elif node.kind == "Q" and node.symmetric:
            k = len(node.children)
            p = list(range(n))
            for i in range(k):
                _subtree_map(node.children[i], node.children[k - 1 - i], st, p)
            by_span = defaultdict(list)
            for i, j, col, v in node.spans:
                by_span[(i, j, col)].append(v)
            for (i, j, col), vs in by_span.items():
                ws = by_span[(k - 1 - j, k - 1 - i, col)]
                for x, y in zip(sorted(vs), sorted(ws)):
                    p[x] = y
            gens.append(tuple(p))
    return [p for p in gens if any(i != x for i, x in enumerate(p))]


def is_proper_interval(g):
    """Interval and claw-free (Roberts)."""
    if interval_structure(g) is None:
        return False
    for v in range(g.n):
        nb = g.adj[v]
        if len(nb) < 3:
            continue
        # claw centered at v: an independent triple among neighbors
        for i, a in enumerate(nb):
            for j in range(i + 1, len(nb)):
                b = nb[j]
                if g.has_edge(a, b):
                    continue
                rest = g.masks[v] & ~g.masks[a] & ~g.masks[b] & ~(1 << a) & ~(1 << b)
                if rest:
                    return False
    return True
