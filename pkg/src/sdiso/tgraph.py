"""Isomorphism of T-graphs by recursion on a maximal clique.

t_aut_union(g, h) returns Aut(g + h) (on vertices 0..g.n-1 then g.n + w for
h's vertex w) when g and h are isomorphic, NOT_ISO otherwise.  A clique C of g
splits g into interval components, treated as bridges of a central poset as
for S_d-graphs, and non-interval components A_i, handled by recursive calls on
g[C + A_i] + h[D + B_j] with C and D marked by color.  The combined group acts
on bridges as atoms and on non-interval vertices individually; its Venn-good
subgroup over C + D is lifted to vertex permutations.

The tree only enters through a budget (branching nodes, leaves) of its
suppressed form: a recursive call on g[C + A] needs strictly fewer of both.
A clique C is usable when every non-interval component passes the same test
one budget lower; the first usable clique in maximal_cliques order is fixed.
"""

from itertools import permutations

from .chordal import NotChordalError, is_chordal, maximal_cliques
from .graph import (
    connected_components, disjoint_union, induced_subgraph, is_automorphism, is_isomorphism, mask_of,
)
from .interval import interval_aut_gens, interval_iso, interval_structure
from .permgroup import PermGroup, colored_poset_aut, fhl_subgroup, symmetric_gens
from .poset import Bridge, CentralPoset, attachment_chain, bridge_poset
from .sd import IsoVerdict, PairedPoset, _fixing_clique_gens
from .trees import TreeParam, trees_up_to_leaves
from .venn import gamma_prime, ground_cells

__all__ = ["TreeParam", "NOT_ISO", "t_aut_union", "t_iso", "t_aut", "leafage_iso", "usable_clique", "split_components"]


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


NOT_ISO = _Sentinel("NOT_ISO")


# -- splitting at a clique ----------------------------------------------------

def split_components(g, c):
    """(interval bridges, non-interval components) of g - c.

    A component X is an interval component when its neighborhoods in c form
    a chain and g[c + X] is an interval graph; interval components with one
    common single attachment are merged into one bridge."""
    c = frozenset(c)
    cm = mask_of(c)
    bridges, others = [], []
    merged = {}
    for comp in connected_components(g, c):
        chain = attachment_chain(g, cm, comp)
        if chain is not None:
            sub, _ = induced_subgraph(g, c | comp)
            if interval_structure(sub) is None:
                chain = None
        if chain is None:
            others.append(comp)
        elif len(chain) == 1 and chain[0] in merged:
            b = merged[chain[0]]
            b.components.append(comp)
            b.vertices = b.vertices | comp
        else:
            b = Bridge([comp], comp, chain)
            if len(chain) == 1:
                merged[chain[0]] = b
            bridges.append(b)
    return bridges, others


def _base_ok(g, leaves):
    if leaves < 2:
        return g.is_clique(range(g.n))
    return interval_structure(g) is not None


_USABLE = {}


def usable_clique(g, branching, leaves):
    """First maximal clique of g whose non-interval components are all
    usable one budget lower; True when g needs no split; None if unusable."""
    key = (g.masks, branching, leaves)
    if key in _USABLE:
        return _USABLE[key]
    out = None
    if _base_ok(g, leaves):
        out = True
    elif branching >= 1 and is_chordal(g):
        for c in maximal_cliques(g):
            _, others = split_components(g, c)
            if all(_usable_part(g, c, a, branching - 1, leaves - 1) for a in others):
                out = frozenset(c)
                break
    _USABLE[key] = out
    return out


def _usable_part(g, c, a, branching, leaves):
    sub, _ = induced_subgraph(g, set(c) | a)
    return usable_clique(sub, branching, leaves) is not None


def _marked(g, c, comp):
    """g[c + comp] with clique vertices marked in the colors."""
    verts = sorted(set(c) | set(comp))
    sub, idx = induced_subgraph(g, verts)
    cols = [(g.color(v), v in c) for v in verts]
    return sub.with_colors(cols), idx


# -- the recursion ------------------------------------------------------------

def _interval_union(g, h):
    """Aut(g + h) for colored interval graphs, or NOT_ISO."""
    f = interval_iso(g, h, list(map(g.color, range(g.n))), list(map(h.color, range(h.n))))
    if f is None:
        return NOT_ISO
    n = g.n + h.n
    gens = []
    for p in interval_aut_gens(g, [g.color(v) for v in range(g.n)]):
        gens.append(tuple(p) + tuple(range(g.n, n)))
    for p in interval_aut_gens(h, [h.color(v) for v in range(h.n)]):
        gens.append(tuple(range(g.n)) + tuple(x + g.n for x in p))
    swap = [0] * n
    for v in range(g.n):
        swap[v] = f[v] + g.n
        swap[f[v] + g.n] = v
    gens.append(tuple(swap))
    return PermGroup(n, gens)


def _same_shape(g, h):
    return (g.n == h.n and g.m == h.m
            and sorted(map(repr, (g.color(v) for v in range(g.n))))
            == sorted(map(repr, (h.color(v) for v in range(h.n)))))


def t_aut_union(g, h, branching, leaves, memo=None, depth=0):
    """Aut(g + h) for connected (colored) graphs if they are isomorphic,
    NOT_ISO if not.  g must be usable for the budget (ValueError otherwise)."""
    if memo is None:
        memo = {}
    key = (g, h, branching, leaves)
    if key in memo:
        return memo[key]
    c = usable_clique(g, branching, leaves)
    if c is None:
        raise ValueError("first graph is not usable for this tree budget")
    if not _same_shape(g, h):
        res = NOT_ISO
    elif c is True:
        res = NOT_ISO if not _base_ok(h, leaves) else _interval_union(g, h)
    else:
        res = _split_union(g, h, c, branching, leaves, memo, depth)
    memo[key] = res
    return res


def _split_union(g, h, c, branching, leaves, memo, depth):
    if depth > 64:
        raise AssertionError("recursion deeper than any tree budget allows")
    try:
        h_cliques = maximal_cliques(h)
    except NotChordalError:
        return NOT_ISO
    n = g.n + h.n
    gens = []
    bridges_g, others_g = split_components(g, c)
    for dd in h_cliques:
        if len(dd) != len(c):
            continue
        bridges_h, others_h = split_components(h, dd)
        if len(bridges_h) != len(bridges_g) or len(others_h) != len(others_g):
            continue
        gens_d = _clique_pair(g, c, bridges_g, others_g, h, dd, bridges_h, others_h,
                              branching, leaves, memo, depth)
        gens.extend(gens_d)
    if not gens:
        return NOT_ISO
    union, _ = disjoint_union(g, h)
    for p in gens:
        if not is_automorphism(union, p):
            raise AssertionError("lifted generator is not an automorphism of g + h")
    return PermGroup(n, gens)


def _clique_pair(g, c, bridges_g, others_g, h, dd, bridges_h, others_h,
                 branching, leaves, memo, depth):
    """Generators of Delta_D (empty list when no swap survives)."""
    cp = CentralPoset(frozenset(c), bridges_g, bridge_poset(bridges_g))
    cq = CentralPoset(frozenset(dd), bridges_h, bridge_poset(bridges_h))
    pp = PairedPoset(g, cp, h, cq)
    if not pp.sides_match():
        return []
    gamma0 = colored_poset_aut(pp.poset)
    if pp.apex_q not in gamma0.orbit(pp.apex_p):
        return []
    base = pp.poset.n
    # one domain point per vertex of a non-interval component
    point_of = {}
    vertex_at = {}
    a_pts, b_pts = [], []
    for side, comps, out in ((0, others_g, a_pts), (1, others_h, b_pts)):
        for comp in comps:
            pts = []
            for v in sorted(comp):
                pt = base + len(point_of)
                point_of[(side, v)] = pt
                vertex_at[pt] = (side, v)
                pts.append(pt)
            out.append(pts)
    npts = base + len(point_of)
    u = pp.collection
    for (side, v), pt in point_of.items():
        graph, cl = (g, c) if side == 0 else (h, dd)
        u.add_set(pt, {(side, w) for w in graph.adj[v] if w in cl}, side, None)
    pad = tuple(range(base, npts))
    gamma0_gens = [tuple(x) + pad for x in gamma0.gens]
    a = len(others_g)
    sizes_ok = sorted(len(x) for x in others_g) == sorted(len(y) for y in others_h)
    lifted = []
    if sizes_ok:
        for m in permutations(range(a)):
            if any(len(others_g[i]) != len(others_h[m[i]]) for i in range(a)):
                continue
            factors = []
            for i in range(a):
                sg, ig = _marked(g, c, others_g[i])
                sh, ih = _marked(h, dd, others_h[m[i]])
                res = t_aut_union(sg, sh, branching - 1, leaves - 1, memo, depth + 1)
                if res is NOT_ISO:
                    break
                factors.append(_restrict(res, sg.n, ig, ih, others_g[i], others_h[m[i]], point_of, npts))
            else:
                gens = gamma0_gens + [p for f in factors for p in f]
                group = PermGroup(npts, gens)
                lvls = list(pp.levels) + [a_pts[i] + b_pts[m[i]] for i in range(a)]
                gp = gamma_prime(u, lvls, group, max(leaves, 2))
                if not any(pp.swaps(x) for x in gp.gens):
                    continue
                for x in gp.gens:
                    lifted.append(_lift(pp, x, vertex_at, g.n, h.n))
    if not lifted:
        return []
    # automorphisms of interval bridges fixing the clique, and Venn-cell shuffles
    total = g.n + h.n
    for side, graph, cl, brs, off in ((0, g, c, bridges_g, 0), (1, h, dd, bridges_h, g.n)):
        for b in brs:
            for f in _fixing_clique_gens(graph, cl, b.vertices, off):
                p = list(range(total))
                for x, y in f.items():
                    p[x] = y
                lifted.append(tuple(p))
    for cell in ground_cells(u):
        pts = [v + (g.n if s else 0) for s, v in cell]
        lifted.extend(symmetric_gens(total, pts))
    return lifted


def _restrict(res, gn, ig, ih, comp_g, comp_h, point_of, npts):
    """Generators of res restricted to comp_g + comp_h, on domain points."""
    back = {}
    for v, i in ig.items():
        back[i] = (0, v)
    for w, j in ih.items():
        back[gn + j] = (1, w)
    out = []
    for p in res.gens:
        q = list(range(npts))
        for sv in [(0, v) for v in comp_g] + [(1, w) for w in comp_h]:
            idx = ig[sv[1]] if sv[0] == 0 else gn + ih[sv[1]]
            q[point_of[sv]] = point_of[back[p[idx]]]
        out.append(tuple(q))
    return out


def _lift(pp, x, vertex_at, gn, hn):
    f = pp.lift(x)
    for pt, sv in vertex_at.items():
        f[sv] = vertex_at[x[pt]]
    p = [None] * (gn + hn)
    for (s, v), (t, w) in f.items():
        p[v + (gn if s else 0)] = w + (gn if t else 0)
    if any(y is None for y in p):
        raise AssertionError("lift left a vertex unmapped")
    return tuple(p)


# -- public wrappers ------------------------------------------------------------

def _budget(t):
    if isinstance(t, tuple):
        return t
    return t.budget()


def _connected_iso(g, h, budget, memo):
    """(verdict bool, witness list or None, group or None)."""
    res = t_aut_union(g, h, budget[0], budget[1], memo)
    if res is NOT_ISO:
        return False, None, None
    for p in res.gens:
        if g.n and p[0] >= g.n:
            w = [p[v] - g.n for v in range(g.n)]
            return True, w, res
    if g.n == 0:
        return True, [], res
    raise AssertionError("group of an isomorphic pair has no swapping generator")


def t_iso(g, h, t):
    """Decide isomorphism of T-graphs; t is a TreeParam or a (branching,
    leaves) budget.  Disconnected inputs are matched component by component."""
    budget = _budget(t)
    trace = {"budget": budget}
    if g.n != h.n or g.m != h.m:
        return IsoVerdict(False, trace=trace, diagnostic="vertex or edge counts differ")
    if not is_chordal(g):
        return IsoVerdict(False, trace=trace, diagnostic="first graph is not chordal, hence not a T-graph")
    cg = connected_components(g)
    ch = connected_components(h)
    if sorted(map(len, cg)) != sorted(map(len, ch)):
        return IsoVerdict(False, trace=trace, diagnostic="component sizes differ")
    memo = {}
    subs_h = [induced_subgraph(h, comp) for comp in ch]
    used = [False] * len(ch)
    witness = [None] * g.n
    for comp in cg:
        sg, ig = induced_subgraph(g, comp)
        if usable_clique(sg, *budget) is None:
            return IsoVerdict(False, trace=trace,
                              diagnostic="first graph is not a T-graph for this tree")
        for j, (sh, ih) in enumerate(subs_h):
            if used[j] or sh.n != sg.n:
                continue
            ok, w, _ = _connected_iso(sg, sh, budget, memo)
            if ok:
                used[j] = True
                back = {i: v for v, i in ih.items()}
                for v, i in ig.items():
                    witness[v] = back[w[i]]
                break
        else:
            return IsoVerdict(False, trace=trace)
    if not is_isomorphism(g, h, witness):
        raise AssertionError("assembled witness is not an isomorphism")
    return IsoVerdict(True, witness, trace)


def t_aut(g, t):
    """Aut(g) for a connected T-graph, via Aut(g + g) restricted to the first copy."""
    budget = _budget(t)
    if usable_clique(g, *budget) is None:
        raise ValueError("graph is not a T-graph for this tree")
    res = t_aut_union(g, g, budget[0], budget[1])

    def side(x):
        return x[0] < g.n

    plus = fhl_subgroup(res, side, 2, coset_key=side)
    gens = [tuple(p[:g.n]) for p in plus.gens]
    for p in gens:
        if not is_automorphism(g, p):
            raise AssertionError("restricted generator is not an automorphism")
    return PermGroup(g.n, gens)


def leafage_iso(g, h, ell):
    """Isomorphism of chordal graphs of leafage <= ell: t_iso over every
    suppressed tree with at most ell leaves, fewest leaves first."""
    if not is_chordal(g) or not is_chordal(h):
        raise NotChordalError("leafage isomorphism needs chordal inputs")
    tried = []
    seen = {}
    for t in trees_up_to_leaves(max(ell, 0)):
        budget = t.budget()
        if budget not in seen:
            seen[budget] = t_iso(g, h, budget)
        v = seen[budget]
        tried.append(budget)
        if v.isomorphic:
            v.trace.update(tree=t, tried=len(tried))
            return v
    return IsoVerdict(False, trace={"tried": len(tried)},
                      diagnostic=None if any(s.diagnostic is None for s in seen.values())
                      else "first graph has no T-representation with this leafage")
