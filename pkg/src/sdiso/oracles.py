"""Brute-force oracles: exhaustive isomorphism and automorphism search.

These share nothing with the algorithms under test beyond the Graph carrier:
color refinement for pruning, then plain backtracking.
"""

from dataclasses import dataclass
from itertools import permutations

from .graph import bits

BRUTE_LIMIT = 20


class OracleSizeError(ValueError):
    """Input too large for the exhaustive oracles."""


def _guard(n, limit):
    if n > limit:
        raise OracleSizeError(f"brute-force oracle refuses n={n} > {limit}")


def _refine(graphs):
    """Joint 1-dimensional color refinement; returns one color list per graph."""
    cols = [[repr(g.color(v)) for v in range(g.n)] for g in graphs]
    count = len({x for c in cols for x in c})
    while True:
        sigs = []
        for g, c in zip(graphs, cols):
            sigs.append([(c[v], tuple(sorted(c[u] for u in g.adj[v]))) for v in range(g.n)])
        palette = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        cols = [[palette[s] for s in ss] for ss in sigs]
        if len(palette) == count:
            return cols
        count = len(palette)


def _extend(g, h, cg, ch, fixed):
    """Find an isomorphism g -> h extending the partial map `fixed`, or None."""
    n = g.n
    f = dict(fixed)
    used = 0
    for v, w in f.items():
        used |= 1 << w
    # check the prefix itself
    for v, w in f.items():
        if cg[v] != ch[w]:
            return None
        for u, x in f.items():
            if g.has_edge(v, u) != h.has_edge(w, x):
                return None
    rest = [v for v in range(n) if v not in f]
    # order: prefer vertices with many already-ordered neighbors, rarer colors
    size = {}
    for c in cg:
        size[c] = size.get(c, 0) + 1
    order = []
    placed = set(f)
    while rest:
        best = max(rest, key=lambda v: (sum(1 for u in g.adj[v] if u in placed), -size[cg[v]], -v))
        rest.remove(best)
        order.append(best)
        placed.add(best)
    by_color = {}
    for w in range(n):
        by_color.setdefault(ch[w], []).append(w)

    def rec(i, used):
        if i == len(order):
            return True
        v = order[i]
        for w in by_color.get(cg[v], ()):
            if used >> w & 1:
                continue
            ok = True
            for u in g.adj[v]:
                if u in f and not h.has_edge(w, f[u]):
                    ok = False
                    break
            if not ok:
                continue
            # non-edges: count mapped neighbors of w must match
            mapped_nb = sum(1 for u in g.adj[v] if u in f)
            img_mask = 0
            for u in f:
                img_mask |= 1 << f[u]
            if (h.masks[w] & img_mask).bit_count() != mapped_nb:
                continue
            f[v] = w
            if rec(i + 1, used | 1 << w):
                return True
            del f[v]
        return False

    if rec(0, used):
        return f
    return None


@dataclass
class BruteVerdict:
    isomorphic: bool
    witness: list = None


def brute_iso(g, h, limit=BRUTE_LIMIT):
    """Exhaustive color-preserving isomorphism test."""
    _guard(max(g.n, h.n), limit)
    if g.n != h.n or g.m != h.m:
        return BruteVerdict(False)
    cg, ch = _refine([g, h])
    if sorted(cg) != sorted(ch):
        return BruteVerdict(False)
    f = _extend(g, h, cg, ch, {})
    if f is None:
        return BruteVerdict(False)
    return BruteVerdict(True, [f[v] for v in range(g.n)])


@dataclass
class BruteAut:
    """Full automorphism group found by exhaustive search.

    order is the product of orbit lengths along the point sequence 0..n-1,
    each orbit enumerated point by point; gens contains one automorphism per
    discovered orbit point.
    """
    n: int
    order: int
    gens: list


def brute_aut(g, limit=BRUTE_LIMIT):
    _guard(g.n, limit)
    n = g.n
    cg, _ = _refine([g, g])
    order = 1
    gens = []
    fixed = {}
    for b in range(n):
        orbit = 0
        for y in range(n):
            if cg[y] != cg[b] or y in fixed.values():
                continue
            pre = dict(fixed)
            pre[b] = y
            f = _extend(g, g, cg, cg, pre)
            if f is not None:
                orbit += 1
                if y != b:
                    gens.append(tuple(f[v] for v in range(n)))
        order *= orbit
        fixed[b] = b
    return BruteAut(n, order, gens)


def brute_poset_iso(p, q):
    """Exhaustive order- and color-preserving bijection search between posets."""
    if p.n != q.n:
        return False
    n = p.n
    _guard(n, 12)
    pc = [p.color(i) for i in range(n)]
    qc = [q.color(i) for i in range(n)]
    if sorted(map(repr, pc)) != sorted(map(repr, qc)):
        return False
    f = [None] * n

    def rec(i, used):
        if i == n:
            return True
        for j in range(n):
            if used >> j & 1 or pc[i] != qc[j]:
                continue
            if bin(p.up[i]).count("1") != bin(q.up[j]).count("1"):
                continue
            ok = all(p.less(i, k) == q.less(j, f[k]) and p.less(k, i) == q.less(f[k], j)
                     for k in range(i))
            if ok:
                f[i] = j
                if rec(i + 1, used | 1 << j):
                    return True
        return False

    return rec(0, 0)


def closure_order(gens, n):
    """Size of the group generated by gens, by breadth-first closure."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def brute_colored_aut_order(g, classes):
    """Order of the class-preserving automorphism group by filtering all
    class-preserving permutations (tiny inputs only)."""
    n = g.n
    cls = [None] * n
    for i, c in enumerate(classes):
        for v in c:
            cls[v] = i
    count = 0
    for p in permutations(range(n)):
        if any(cls[p[v]] != cls[v] for v in range(n)):
            continue
        if all(g.has_edge(p[u], p[v]) for u, v in g.edges()):
            count += 1
    return count


def mask_list(m):
    return list(bits(m))
