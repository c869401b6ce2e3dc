"""Isomorphism of proper S_d-graphs and proper T-graphs.

Both tests are combinatorial: a fixed clique (or an assignment of cliques to
the nodes of T) cuts the graph into interval pieces, pieces are compared by
colored interval canons and the attachments on the shared cliques by the
Venn test.  A positive answer is always backed by an explicit isomorphism
that is verified edge by edge.
"""

from itertools import permutations, product

from .chordal import NotChordalError, is_chordal, maximal_cliques
from .graph import connected_components, induced_subgraph, is_isomorphism, mask_of
from .interval import interval_iso, interval_structure, is_proper_interval
from .poset import Poset, attachment_chain, width
from .sd import IsoVerdict, bridge_canon, bridge_iso
from .trees import suppress, trees_up_to_leaves
from .venn import AttachmentCollection, venn_bijection, venn_good


# -- proper S_d ---------------------------------------------------------------

def _nonempty(chain):
    return None if chain is None else tuple(s for s in chain if s)


def _interval_pieces(g, c):
    """(attached components with chains, detached components) of g - c, or
    None when some attached component is not an interval bridge."""
    cm = mask_of(c)
    attached, detached = [], []
    for comp in connected_components(g, c):
        chain = _nonempty(attachment_chain(g, cm, comp))
        if chain is None:
            return None
        if not chain:
            detached.append(comp)
            continue
        sub, _ = induced_subgraph(g, set(c) | comp)
        if interval_structure(sub) is None:
            return None
        attached.append((comp, chain))
    return attached, detached


def _detached_match(g, xs, h, ys):
    """Isomorphism between the detached parts (dict) or None."""
    if sorted(map(len, xs)) != sorted(map(len, ys)):
        return None
    f = {}
    used = [False] * len(ys)
    for x in xs:
        sg, ig = induced_subgraph(g, x)
        for j, y in enumerate(ys):
            if used[j] or len(y) != len(x):
                continue
            sh, ih = induced_subgraph(h, y)
            if interval_structure(sg) is None or interval_structure(sh) is None:
                return None
            phi = interval_iso(sg, sh, [g.color(v) for v in sorted(x)], [h.color(v) for v in sorted(y)])
            if phi is not None:
                used[j] = True
                back = {i: v for v, i in ih.items()}
                for v, i in ig.items():
                    f[v] = back[phi[i]]
                break
        else:
            return None
    return f


def _clique_collection(g, c, chains_g, h, d, chains_h):
    """Collection over C + D: chains of the pieces keyed (side, i, rank),
    apex sets C and D, and one set per vertex color on C + D."""
    ground = [(0, v) for v in c] + [(1, v) for v in d]
    u = AttachmentCollection(ground)
    for side, chains in ((0, chains_g), (1, chains_h)):
        for i, ch in enumerate(chains):
            u.add_chain((side, i), [{(side, v) for v in s} for s in ch], side)
    u.add_set(("apex", 0), {(0, v) for v in c}, 0)
    u.add_set(("apex", 1), {(1, v) for v in d}, 1)
    cols = sorted({repr(g.color(v)) for v in c} | {repr(h.color(v)) for v in d})
    for col in cols:
        s = {(0, v) for v in c if repr(g.color(v)) == col} | {(1, v) for v in d if repr(h.color(v)) == col}
        u.add_set(("color", col), s, 2)
    return u


def _swap_keys(u, f, k):
    """Key permutation exchanging piece i of g with piece f[i] of h."""
    inv = {j: i for i, j in enumerate(f)}
    rt = {}
    for key in u.members:
        point, r = key
        if point[0] == 0:
            rt[key] = ((1, f[point[1]]), r)
        elif point[0] == 1:
            rt[key] = ((0, inv[point[1]]), r)
        elif point[0] == "apex":
            rt[key] = (("apex", 1 - point[1]), r)
        else:
            rt[key] = key
    return rt


def proper_central_clique(g, d):
    """First maximal clique with at most d attached components, all interval."""
    for c in maximal_cliques(g):
        pieces = _interval_pieces(g, c)
        if pieces is not None and len(pieces[0]) <= d:
            return frozenset(c), pieces
    return None


def proper_sd_iso(g, h, d):
    """Isomorphism of proper S_d-graphs: fix a clique C with k <= d attached
    components; for every D and every bijection of components compare the
    pieces by interval canon and the attachments by the Venn test."""
    trace = {}
    if g.n != h.n or g.m != h.m:
        return IsoVerdict(False, trace=trace, diagnostic="vertex or edge counts differ")
    if g.n == 0:
        return IsoVerdict(True, [], trace)
    try:
        maximal_cliques(g)
        ch = maximal_cliques(h)
    except NotChordalError:
        return IsoVerdict(False, trace=trace, diagnostic="input is not chordal")
    found = proper_central_clique(g, d)
    if found is None:
        return IsoVerdict(False, trace=trace, diagnostic=f"first graph has no clique with <= {d} interval pieces")
    c, (xs, x0) = found
    k = len(xs)
    if k > d:
        raise AssertionError("accepted clique has more than d attached components")
    canon_x = [bridge_canon(g, c, comp) for comp, _ in xs]
    trace["C"] = sorted(c)
    tried = 0
    for dd in map(frozenset, ch):
        if len(dd) != len(c):
            continue
        pieces = _interval_pieces(h, dd)
        if pieces is None or len(pieces[0]) != k:
            continue
        ys, y0 = pieces
        f0 = _detached_match(g, x0, h, y0)
        if f0 is None:
            continue
        canon_y = [bridge_canon(h, dd, comp) for comp, _ in ys]
        if sorted(canon_x) != sorted(canon_y):
            continue
        u = _clique_collection(g, c, [ch_ for _, ch_ in xs], h, dd, [ch_ for _, ch_ in ys])
        for f in permutations(range(k)):
            if any(canon_x[i] != canon_y[f[i]] for i in range(k)):
                continue
            tried += 1
            rt = _swap_keys(u, f, k)
            if not venn_good(u, None, rt):
                continue
            iso = _assemble_sd(g, c, xs, h, dd, ys, f, u, rt, f0)
            trace.update(D=sorted(dd), bijections=tried)
            return IsoVerdict(True, iso, trace)
    trace["bijections"] = tried
    return IsoVerdict(False, trace=trace)


def _assemble_sd(g, c, xs, h, dd, ys, f, u, rt, f0):
    cell_map = venn_bijection(u, rt)
    iso = [None] * g.n
    for (s, v), (t, w) in cell_map.items():
        if s == 0:
            iso[v] = w
    for i, (comp, _) in enumerate(xs):
        phi = bridge_iso(g, c, comp, h, dd, ys[f[i]][0])
        for v, w in phi.items():
            iso[v] = w
    for v, w in f0.items():
        iso[v] = w
    if not is_isomorphism(g, h, iso):
        raise AssertionError("assembled proper S_d witness is not an isomorphism")
    return iso


# -- rich and nonseparating cliques ---------------------------------------------

def _attachment_sets(g, c):
    cm = mask_of(c)
    out = []
    for comp in connected_components(g, c):
        m = 0
        for v in comp:
            m |= g.masks[v] & cm
        out.append(m)
    return out


def is_rich(g, c):
    """At least 3 components of g - c with pairwise incomparable nonempty attachments."""
    sets = sorted({m for m in _attachment_sets(g, c) if m})
    if len(sets) < 3:
        return False
    rel = [(i, j) for i, a in enumerate(sets) for j, b in enumerate(sets)
           if i != j and a & b == a]
    return width(Poset(len(sets), rel, close=False)).width >= 3


def rich_cliques(g):
    return [frozenset(c) for c in maximal_cliques(g) if is_rich(g, c)]


def nonseparating_max_cliques(g):
    return [frozenset(c) for c in maximal_cliques(g) if len(connected_components(g, c)) <= 1]


# -- proper T-graphs --------------------------------------------------------------

class _Assignment:
    """Cliques on the nodes of T, the edge each other maximal clique sits
    on, and the edge graphs G_uv with vertex types."""

    def __init__(self, g, t, node_clique, cliques):
        self.g, self.t = g, t
        self.node = node_clique
        self.ok = False
        self._chains = {}
        edge_cliques = {e: [] for e in t.edges()}
        node_sets = set(node_clique)
        for k in cliques:
            if k in node_sets:
                continue
            hits = []
            for (a, b) in t.edges():
                fa, fb = node_clique[a], node_clique[b]
                if fa == fb:
                    continue
                ra, rb = fa - k, fb - k
                if not ra or not rb:
                    return
                if _separates(g, k, ra, rb):
                    hits.append((a, b))
            if len(hits) != 1:
                return
            edge_cliques[hits[0]].append(k)
        self.edge_vertices = {}
        for (a, b), ks in edge_cliques.items():
            vs = set(node_clique[a]) | set(node_clique[b])
            for k in ks:
                vs |= k
            sub, _ = induced_subgraph(g, vs)
            if not is_proper_interval(sub):
                return
            self.edge_vertices[(a, b)] = frozenset(vs)
        nodes_of = [[] for _ in range(g.n)]
        for w, k in enumerate(node_clique):
            for v in k:
                nodes_of[v].append(w)
        edges_of = [[] for _ in range(g.n)]
        for e, vs in self.edge_vertices.items():
            for v in vs:
                edges_of[v].append(e)
        if any(not es and not ns for es, ns in zip(edges_of, nodes_of)):
            return
        self.types = [(tuple(nodes_of[v]), tuple(edges_of[v])) for v in range(g.n)]
        self.ok = True

    def chains_at(self, w):
        """Per incident edge, the inclusion chain of neighborhoods in the node
        clique of the edge graph's other vertices (None if not a chain)."""
        if w in self._chains:
            return self._chains[w]
        k = self.node[w]
        km = mask_of(k)
        out = {}
        for e, vs in self.edge_vertices.items():
            if w not in e:
                continue
            rest = vs - k
            out[e] = _nonempty(attachment_chain(self.g, km, rest)) if rest else ()
        self._chains[w] = out
        return out

    def signature(self, v):
        sig = []
        for w in self.types[v][0]:
            for e, chain in sorted(self.chains_at(w).items()):
                sig.append((w, e, tuple(r for r, s in enumerate(chain) if v in s)))
        return (self.types[v], repr(self.g.color(v)), tuple(sig))


def _separates(g, k, ra, rb):
    comps = connected_components(g, k)
    return not any(comp & ra and comp & rb for comp in comps)


def _assignments(g, t, rich, nonsep, cliques, limit_rich):
    """Valid assignments of rich cliques to branching nodes and nonseparating
    cliques (bijectively) to leaves."""
    if len(rich) > limit_rich:
        return
    br = t.branching
    lv = t.leaves
    if len(nonsep) < len(lv):
        return
    for fb in product(rich, repeat=len(br)):
        for fl in permutations(nonsep, len(lv)):
            node = [None] * t.k
            for w, k in zip(br, fb):
                node[w] = k
            for w, k in zip(lv, fl):
                node[w] = k
            if any(k is None for k in node):
                continue
            a = _Assignment(g, t, node, cliques)
            if a.ok:
                yield a


def _edge_canons(a):
    out = {}
    for e, vs in a.edge_vertices.items():
        sub, idx = induced_subgraph(a.g, vs)
        order = sorted(vs)
        cols = [(a.types[v], a.g.color(v)) for v in order]
        st = interval_structure(sub, cols)
        out[e] = st.canon.canon
    return out


def _venn_at(a, b, w):
    ca, cb = a.chains_at(w), b.chains_at(w)
    if set(ca) != set(cb):
        return False
    if any(ca[e] is None or cb[e] is None or len(ca[e]) != len(cb[e]) for e in ca):
        return False
    c, d = a.node[w], b.node[w]
    u = _clique_collection(a.g, c, [ca[e] for e in sorted(ca)], b.g, d, [cb[e] for e in sorted(cb)])
    rt = _swap_keys(u, list(range(len(ca))), len(ca))
    return venn_good(u, None, rt)


def _glue(a, b):
    """Glue per-edge interval isomorphisms into g -> h, or None."""
    g, h = a.g, b.g
    shared_g = sorted({v for k in a.node for v in k})
    shared_h = sorted({v for k in b.node for v in k})
    sig_g, sig_h = {}, {}
    for v in shared_g:
        sig_g.setdefault(a.signature(v), []).append(v)
    for v in shared_h:
        sig_h.setdefault(b.signature(v), []).append(v)
    if {s: len(vs) for s, vs in sig_g.items()} != {s: len(vs) for s, vs in sig_h.items()}:
        return None
    in_h = set(shared_h)
    pi = {}
    for s, vs in sig_g.items():
        for x, y in zip(vs, sig_h[s]):
            pi[x] = y
    iso = dict(pi)
    for e, vs in a.edge_vertices.items():
        ws = b.edge_vertices[e]
        sg, ig = induced_subgraph(g, vs)
        sh, ih = induced_subgraph(h, ws)
        cg = [("N", pi[v]) if v in pi else ("T", a.types[v], g.color(v)) for v in sorted(vs)]
        ch = [("N", w) if w in in_h else ("T", b.types[w], h.color(w)) for w in sorted(ws)]
        phi = interval_iso(sg, sh, cg, ch)
        if phi is None:
            return None
        back = {i: w for w, i in ih.items()}
        for v, i in ig.items():
            w = back[phi[i]]
            if iso.get(v, w) != w:
                return None
            iso[v] = w
    if len(iso) != g.n or not is_isomorphism(g, h, [iso[v] for v in range(g.n)]):
        return None
    return [iso[v] for v in range(g.n)]


def _proper_t_connected(g, h, t):
    """Assignment search and comparison for one suppressed tree.

    Returns (witness or None, whether g admits any valid assignment)."""
    cg, ch = maximal_cliques(g), maximal_cliques(h)
    rg, rh = rich_cliques(g), rich_cliques(h)
    ng, nh = nonseparating_max_cliques(g), nonseparating_max_cliques(h)
    bound = t.k + 2 * len(t.edges())
    cg_sets = [frozenset(c) for c in cg]
    ch_sets = [frozenset(c) for c in ch]
    ours = list(_assignments(g, t, rg, ng, cg_sets, bound))
    if not ours:
        return None, False
    canons = [_edge_canons(a) for a in ours]
    for b in _assignments(h, t, rh, nh, ch_sets, bound):
        cb = _edge_canons(b)
        for a, ca in zip(ours, canons):
            if ca != cb:
                continue
            if not all(_venn_at(a, b, w) for w in t.branching):
                continue
            iso = _glue(a, b)
            if iso is not None:
                return iso, True
    return None, True


def _single_node(g, h):
    """Proper graphs on a one-node tree are complete."""
    if g.is_clique(range(g.n)) and h.is_clique(range(h.n)):
        order_h = sorted(range(h.n), key=lambda v: repr(h.color(v)))
        order_g = sorted(range(g.n), key=lambda v: repr(g.color(v)))
        iso = [None] * g.n
        for v, w in zip(order_g, order_h):
            iso[v] = w
        return iso if is_isomorphism(g, h, iso) else None
    return None


def _candidate_trees(t):
    """t's suppressed form and every smaller suppressed tree (fewer leaves
    or branching nodes), smallest first; covers all strict subtrees."""
    s = suppress(t)
    nb, nl = len(s.branching), len(s.leaves)
    out = [x for x in trees_up_to_leaves(nl)
           if len(x.branching) <= nb and (len(x.leaves), x.k) < (nl, s.k)]
    return out + [s]


def assignment_tree(g, t):
    """Smallest candidate tree on which connected g has a valid rich /
    nonseparating clique assignment, or None (the search is then incomplete)."""
    cliques = [frozenset(c) for c in maximal_cliques(g)]
    rich, nonsep = rich_cliques(g), nonseparating_max_cliques(g)
    for tree in _candidate_trees(t):
        if tree.k == 1:
            if g.is_clique(range(g.n)):
                return tree
            continue
        bound = tree.k + 2 * len(tree.edges())
        if next(_assignments(g, tree, rich, nonsep, cliques, bound), None) is not None:
            return tree
    return None


def proper_t_iso(g, h, t, fallback=True):
    """Isomorphism of proper T-graphs.

    Disconnected inputs are matched component by component, and every
    smaller tree is tried before t itself, so the connected core may assume
    that g is not a proper T1-graph for a strict subtree T1.

    The assignment search is only complete when some component of g admits
    a valid assignment of rich and nonseparating cliques.  Some proper
    T-graphs admit none (a clique whose third branch holds a single vertex
    sharing the clique's node neighbor, see the tests); for such a component
    the search is inconclusive.  With fallback=True it is decided by t_iso
    and trace["fallback"] counts these components; with fallback=False the
    verdict is negative with trace["inconclusive"] set.
    """
    trace = {"fallback": 0}
    if g.n != h.n or g.m != h.m:
        return IsoVerdict(False, trace=trace, diagnostic="vertex or edge counts differ")
    if not is_chordal(g) or not is_chordal(h):
        return IsoVerdict(False, trace=trace, diagnostic="input is not chordal")
    trees = _candidate_trees(t)
    comps_g = connected_components(g)
    comps_h = connected_components(h)
    if sorted(map(len, comps_g)) != sorted(map(len, comps_h)):
        return IsoVerdict(False, trace=trace, diagnostic="component sizes differ")
    used = [False] * len(comps_h)
    witness = [None] * g.n
    for x in comps_g:
        sg, ig = induced_subgraph(g, x)
        hit = None
        covered = False
        for j, y in enumerate(comps_h):
            if used[j] or len(y) != len(x):
                continue
            sh, ih = induced_subgraph(h, y)
            for tree in trees:
                if tree.k == 1:
                    iso = _single_node(sg, sh)
                    covered = covered or sg.is_clique(range(sg.n))
                else:
                    iso, had = _proper_t_connected(sg, sh, tree)
                    covered = covered or had
                if iso is not None:
                    hit = (j, ih, iso)
                    break
            if hit:
                break
        if hit is None and not covered:
            if not fallback:
                trace["inconclusive"] = True
                return IsoVerdict(False, trace=trace,
                                  diagnostic="no valid rich/nonseparating clique assignment; test inconclusive")
            trace["fallback"] += 1
            hit = _fallback_component(sg, comps_h, used, h, t)
        if hit is None:
            return IsoVerdict(False, trace=trace)
        j, ih, iso = hit
        used[j] = True
        back = {i: w for w, i in ih.items()}
        for v, i in ig.items():
            witness[v] = back[iso[i]]
    if not is_isomorphism(g, h, witness):
        raise AssertionError("proper T witness is not an isomorphism")
    return IsoVerdict(True, witness, trace)


def _fallback_component(sg, comps_h, used, h, t):
    from .tgraph import t_iso
    for j, y in enumerate(comps_h):
        if used[j] or len(y) != sg.n:
            continue
        sh, ih = induced_subgraph(h, y)
        r = t_iso(sg, sh, t)
        if r:
            return j, ih, r.witness
    return None
