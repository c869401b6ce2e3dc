"""The poset-to-S_d reduction, seeded random instance generators and the
brute-force oracles used as ground truth.

All generators draw from `random.Random(seed)` (Mersenne Twister MT19937,
stable across CPython versions for the methods used here: random, randrange,
randint, shuffle, sample, choice), so a seed fixes the instance everywhere.
Each generator returns the representation it drew the graph from, so tests
never need the algorithms under test to know what the answer should be.
"""

import random
from dataclasses import dataclass

from .chordal import maximal_cliques
from .graph import Graph, bits, mask_of, relabel
from .oracles import BruteAut, BruteVerdict, OracleSizeError, brute_aut, brute_iso, brute_poset_iso
from .poset import Poset, width
from .trees import TreeParam, star, subdivide

__all__ = [
    "Representation", "intersection_graph", "poset_to_sd", "random_sd_graph",
    "random_t_graph", "random_poset", "random_relabel", "brute_iso", "brute_aut",
    "brute_poset_iso", "BruteAut", "BruteVerdict", "OracleSizeError",
]


@dataclass
class Representation:
    """Subtrees (frozensets of tree nodes) of a host tree, one per vertex.

    clique lists the vertices whose subtrees contain `center` (the planted
    central clique) when a center is given."""
    tree: TreeParam
    subtrees: list
    center: int = None
    clique: frozenset = None

    def is_proper(self):
        s = self.subtrees
        return all(not (s[i] <= s[j] or s[j] <= s[i])
                   for i in range(len(s)) for j in range(i + 1, len(s)))

    def is_connected_subtree(self, i):
        nodes = self.subtrees[i]
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.tree.adj[v]:
                if u in nodes and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == set(nodes)


def intersection_graph(rep):
    masks = [mask_of(s) for s in rep.subtrees]
    n = len(masks)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if masks[i] & masks[j]]
    return Graph(n, edges)


def random_relabel(g, seed):
    """(relabeled graph, permutation) with vertex v of g becoming perm[v]."""
    rng = random.Random(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm), perm


# -- reduction ----------------------------------------------------------------

def _color_sizes(colors):
    """Distinct color values mapped to clique sizes 1, 2, ... in sorted order."""
    ranks = {c: i + 1 for i, c in enumerate(sorted(set(colors), key=repr))}
    return [ranks[c] for c in colors]


def poset_to_sd(p, colors=None):
    """S_d-graph of a poset: clique on the elements plus dummies, and one
    pendant part per element i attached to M_i = {j : j <= i}.

    Vertex layout: elements 0..n-1, then the dummies, then the pendant parts
    (one vertex each, or a K_c block for an element of color rank c).
    """
    n = p.n
    if colors is None and any(c != 0 for c in p.colors):
        colors = p.colors
    sizes = [1] * n if colors is None else _color_sizes(colors)
    dummies = 2 if colors is None else max(sizes, default=0) + 1
    k = n + dummies
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    nxt = k
    for i in range(n):
        block = list(range(nxt, nxt + sizes[i]))
        nxt += sizes[i]
        edges += [(a, b) for x, a in enumerate(block) for b in block[x + 1:]]
        m_i = [i] + list(bits(p.down[i]))
        edges += [(v, j) for v in block for j in m_i]
    g = Graph(nxt, edges)
    cl = maximal_cliques(g)
    if len(cl[0]) != k or (len(cl) > 1 and len(cl[1]) == k):
        raise AssertionError("reduction clique is not the unique maximum clique")
    return g


# -- S_d generator ------------------------------------------------------------

def _equal_sum_vectors(rng, count, d, total):
    """count distinct vectors of d nonnegative ints summing to total."""
    out = set()
    tries = 0
    while len(out) < count and tries < 2000:
        tries += 1
        cuts = sorted(rng.randint(0, total) for _ in range(d - 1))
        v = tuple(b - a for a, b in zip([0] + cuts, cuts + [total]))
        out.add(v)
    return sorted(out)


def random_sd_graph(n, d, seed, proper=False):
    """Random connected S_d-graph on n vertices with its representation.

    The star S_d is subdivided into rays of L nodes.  Central vertices own the
    center plus a prefix of every ray (a reach vector); ray vertices own an
    interval [a, b] of one ray that touches what is already covered, so the
    graph is connected.  One central vertex reaches nowhere, so no ray vertex
    sees the whole central clique and it stays maximal.

    proper=True draws distinct equal-sum reach vectors (pairwise incomparable)
    and strictly increasing, non-nested ray intervals that start inside the
    central reach and end beyond it.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if proper and d < 2:
        raise ValueError("the proper generator needs d >= 2")
    rng = random.Random(seed)
    if proper:
        length = rng.randint(3, 5)
        for _ in range(16):
            rep = _proper_sd_attempt(rng, n, d, length)
            if rep is not None:
                break
            length += max(2, length // 2)
        else:
            raise RuntimeError("could not place enough intervals; try another seed")
        if not rep.is_proper():
            raise AssertionError("proper generator produced nested subtrees")
        return intersection_graph(rep), rep
    length = rng.randint(2, 4)
    tree, _, paths = subdivide(star(d), length)
    rays = [paths[(0, i)] for i in range(1, d + 1)]   # node lists from the center
    nc = rng.randint(min(2, n), max(min(2, n), n // 2))
    reaches = [(0,) * d]
    for _ in range(nc - 1):
        reaches.append(tuple(rng.choice([0, 0, 1, rng.randint(1, length)]) for _ in range(d)))
    if nc > 1:
        for r in range(d):
            i = rng.randrange(1, nc)
            if reaches[i][r] == 0:
                v = list(reaches[i])
                v[r] = rng.randint(1, length)
                reaches[i] = tuple(v)
    subtrees = _central_subtrees(rays, reaches)
    central = len(subtrees)
    covered = [max(v[r] for v in reaches) for r in range(d)]
    live = [r for r in range(d) if covered[r] >= 1]
    for _ in range(n - central):
        if not live:
            break
        r = rng.choice(live)
        a = rng.randint(1, covered[r])
        b = rng.randint(a, min(length, a + rng.randint(0, 2)))
        covered[r] = max(covered[r], b)
        subtrees.append(frozenset(rays[r][a:b + 1]))
    # pad with central twins of vertex 1 when the ray budget ran out
    while len(subtrees) < n:
        subtrees.append(subtrees[min(1, central - 1)])
    rep = Representation(tree, subtrees, 0, frozenset(range(central)))
    return intersection_graph(rep), rep


def _central_subtrees(rays, reaches):
    out = []
    for vec in reaches:
        nodes = {0}
        for r, reach in enumerate(vec):
            nodes.update(rays[r][1:reach + 1])
        out.append(frozenset(nodes))
    return out


def _proper_sd_attempt(rng, n, d, length):
    """Representation with n pairwise non-nested subtrees on S_d with rays of
    `length` nodes, or None when the rays fill up first."""
    tree, _, paths = subdivide(star(d), length)
    rays = [paths[(0, i)] for i in range(1, d + 1)]
    total = rng.randint(1, max(1, (length - 1) // 2))
    want = rng.randint(2, max(2, min(d + 1, n // 2)))
    reaches = _equal_sum_vectors(rng, min(want, n), d, total)
    subtrees = _central_subtrees(rays, reaches)
    central = len(subtrees)
    covered = [max(v[r] for v in reaches) for r in range(d)]
    lowest = [min(v[r] for v in reaches) for r in range(d)]
    last = [None] * d     # last (a, b) placed on each ray
    active = [r for r in range(d) if lowest[r] < covered[r] < length]
    while len(subtrees) < n:
        if not active:
            return None
        r = rng.choice(active)
        if last[r] is None:
            a = rng.randint(lowest[r] + 1, covered[r])
            b = rng.randint(covered[r] + 1, min(length, covered[r] + 2))
        else:
            pa, pb = last[r]
            a = rng.randint(pa + 1, pb)
            b = rng.randint(pb + 1, min(length, pb + 2))
        last[r] = (a, b)
        subtrees.append(frozenset(rays[r][a:b + 1]))
        if b == length:
            active.remove(r)
    return Representation(tree, subtrees, 0, frozenset(range(central)))


# -- T-graph generator --------------------------------------------------------

def _grow(rng, tree, start, size):
    nodes = {start}
    frontier = [u for u in tree.adj[start]]
    while len(nodes) < size and frontier:
        u = frontier.pop(rng.randrange(len(frontier)))
        if u in nodes:
            continue
        nodes.add(u)
        frontier.extend(w for w in tree.adj[u] if w not in nodes)
    return frozenset(nodes)


def _small_subtrees(host, sizes):
    """All connected node sets of host with a size in `sizes`."""
    top = max(sizes)
    found = set()
    layer = {frozenset([v]) for v in range(host.k)}
    for size in range(1, top + 1):
        if size in sizes:
            found |= layer
        if size == top:
            break
        layer = {s | {u} for s in layer for v in s for u in host.adj[v] if u not in s}
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _proper_subtrees(rng, host, n, sizes):
    pool = _small_subtrees(host, sizes)
    chosen = [rng.choice(pool)]
    covered = set(chosen[0])
    while len(chosen) < n:
        options = [s for s in pool if s & covered
                   and not any(s <= t or t <= s for t in chosen)]
        if not options:
            return None
        fresh = [s for s in options if s - covered]
        s = rng.choice(fresh if fresh and rng.random() < 0.7 else options)
        chosen.append(s)
        covered |= s
    return chosen


def random_t_graph(tree, n, seed, proper=False, length=None):
    """Random connected T-graph on n vertices.

    The tree is subdivided (every edge becomes a path of `length` edges).
    The first vertices are the host edges in breadth-first order from a random
    node, so the graph spreads over the whole tree; the rest are random
    connected subtrees of 1-3 nodes grown from a covered node, usually one on
    the rim of the covered part.

    proper=True instead grows n pairwise non-nested subtrees of 2-4 host
    nodes, each meeting the part already covered, and lengthens the
    subdivision until that succeeds.
    """
    rng = random.Random(seed)
    if proper:
        if length is None:
            length = rng.randint(2, 3)
        sizes = rng.choice([(2,), (3,), (2, 3), (3, 4), (2, 3, 4)])
        for _ in range(16):
            host = subdivide(tree, length)[0] if tree.k > 1 else tree
            subtrees = _proper_subtrees(rng, host, n, sizes) if host.k >= max(sizes) else None
            if subtrees is not None:
                break
            length += max(1, length // 2)
        else:
            raise RuntimeError("could not place enough subtrees; try another seed")
        rep = Representation(host, subtrees)
        if not rep.is_proper():
            raise AssertionError("proper generator produced nested subtrees")
        return intersection_graph(rep), rep
    if length is None:
        length = rng.randint(1, 2)
    host = subdivide(tree, length)[0] if tree.k > 1 else tree
    root = rng.randrange(host.k)
    backbone = []
    seen = {root}
    queue = [root]
    for v in queue:
        nb = list(host.adj[v])
        rng.shuffle(nb)
        for u in nb:
            if u not in seen:
                seen.add(u)
                queue.append(u)
                backbone.append(frozenset((v, u)))
    subtrees = backbone[:n] if host.k > 1 else []
    covered = sorted(set().union(*subtrees)) if subtrees else []
    attempts = 0
    while len(subtrees) < n:
        attempts += 1
        if attempts > 200 * n:
            raise RuntimeError("could not place enough subtrees; try another seed")
        cov = set(covered)
        rim = [v for v in covered if any(u not in cov for u in host.adj[v])]
        if not covered:
            start = root
        elif rim and rng.random() < 0.8:
            start = rng.choice(rim)
        else:
            start = rng.choice(covered)
        s = _grow(rng, host, start, rng.randint(1, min(host.k, 3)))
        subtrees.append(s)
        covered = sorted(cov | s)
    return intersection_graph(Representation(host, subtrees)), Representation(host, subtrees)


# -- posets -------------------------------------------------------------------

def random_poset(n, d, seed, density=0.3):
    """Random poset of width <= d: elements dealt to d chains (consecutive
    elements of a chain are related) plus random forward relations between
    chains, then transitively closed.  Element ids follow a linear extension."""
    if d < 1:
        raise ValueError("d must be at least 1")
    rng = random.Random(seed)
    chain_of = [rng.randrange(d) for _ in range(n)]
    rel = []
    last = {}
    for i in range(n):
        c = chain_of[i]
        if c in last:
            rel.append((last[c], i))
        last[c] = i
    for i in range(n):
        for j in range(i + 1, n):
            if chain_of[i] != chain_of[j] and rng.random() < density:
                rel.append((i, j))
    p = Poset(n, rel)
    if width(p).width > d:
        raise AssertionError("random poset exceeds its width bound")
    return p
