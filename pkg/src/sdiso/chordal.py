"""Lex-BFS, perfect elimination orderings and maximal cliques of chordal graphs."""

from dataclasses import dataclass

from .graph import bits, mask_of


@dataclass(frozen=True)
class PeoOrdering:
    ordering: tuple
    position: tuple


@dataclass(frozen=True)
class NotChordal:
    """Certificate: u and w are later neighbors of v in the Lex-BFS elimination
    order but are not adjacent, so the fill-in check fails at v."""
    v: int
    u: int
    w: int


class NotChordalError(ValueError):
    pass


def lex_bfs(g):
    """Lex-BFS visit order via partition refinement (ties broken by vertex id)."""
    blocks = [list(range(g.n))] if g.n else []
    order = []
    while blocks:
        first = blocks[0]
        v = first.pop(0)
        if not first:
            blocks.pop(0)
        order.append(v)
        nm = g.masks[v]
        refined = []
        for b in blocks:
            inside = [u for u in b if nm >> u & 1]
            if inside and len(inside) < len(b):
                refined.append(inside)
                refined.append([u for u in b if not nm >> u & 1])
            else:
                refined.append(b)
        blocks = refined
    return order


def peo(g):
    """Reverse Lex-BFS order; a PeoOrdering if g is chordal, else NotChordal."""
    ordering = lex_bfs(g)[::-1]
    position = [0] * g.n
    for i, v in enumerate(ordering):
        position[v] = i
    for v in ordering:
        later = [u for u in g.adj[v] if position[u] > position[v]]
        if len(later) < 2:
            continue
        parent = min(later, key=position.__getitem__)
        rest = mask_of(later) & ~(1 << parent)
        missing = rest & ~g.masks[parent]
        if missing:
            return NotChordal(v, parent, next(bits(missing)))
    return PeoOrdering(tuple(ordering), tuple(position))


def is_chordal(g):
    return isinstance(peo(g), PeoOrdering)


def clique_sort_key(c):
    return (-len(c), sorted(c))


def maximal_cliques(g):
    """All maximal cliques of a chordal graph, sorted by (size desc, lexicographic)."""
    res = peo(g)
    if isinstance(res, NotChordal):
        raise NotChordalError(f"graph is not chordal: {res}")
    pos = res.position
    cands = []
    for v in res.ordering:
        m = 1 << v
        for u in g.adj[v]:
            if pos[u] > pos[v]:
                m |= 1 << u
        cands.append(m)
    cands = sorted(set(cands), key=lambda m: -m.bit_count())
    kept = []
    for m in cands:
        if not any(m & k == m for k in kept):
            kept.append(m)
    cliques = [frozenset(bits(m)) for m in kept]
    cliques.sort(key=clique_sort_key)
    return cliques
