"""Isomorphism and automorphism groups of S_d-graphs.

Both graphs are split at a maximal clique (C in g, D in h) into bridges.  The
bridges form the central posets P and Q; R is their disjoint union plus one
apex element above each side whose attachment set is the whole clique.  An
automorphism of the colored poset R that maps the apex of P to the apex of Q
and keeps the attachment Venn diagram on C + D is realised by an isomorphism
g -> h, which we build explicitly and verify edge by edge.
"""

from dataclasses import dataclass, field

from .chordal import NotChordalError, maximal_cliques
from .graph import induced_subgraph, is_automorphism, is_isomorphism
from .interval import interval_aut_gens, interval_iso, interval_structure
from .permgroup import PermGroup, fhl_subgroup, symmetric_gens
from .poset import CentralPoset, Poset, central_poset, levels, width
from .venn import AttachmentCollection, gamma_prime, ground_cells, venn_bijection


@dataclass
class IsoVerdict:
    isomorphic: bool
    witness: list = None
    trace: dict = field(default_factory=dict)
    diagnostic: str = None

    def __bool__(self):
        return self.isomorphic


class NotSdGraphError(ValueError):
    pass


# -- bridges as colored interval graphs ---------------------------------------

def bridge_graph(g, clique, vertices, labels=None):
    """K(Z) = g[clique + Z] with the clique marked by color.

    Returns (subgraph, old->new map, colors).  labels (vertex -> int) adds
    individual labels to clique vertices.
    """
    verts = sorted(set(clique) | set(vertices))
    sub, idx = induced_subgraph(g, verts)
    colors = []
    for v in verts:
        if v in clique:
            colors.append(("C", g.color(v), -1 if labels is None else labels[v]))
        else:
            colors.append(("X", g.color(v)))
    return sub, idx, colors


def bridge_canon(g, clique, vertices, labels=None):
    sub, _, colors = bridge_graph(g, clique, vertices, labels)
    st = interval_structure(sub, colors)
    return None if st is None else st.canon.canon


def bridge_iso(g, c, x, h, d, y):
    """Isomorphism K(X) -> K(Y) mapping c to d, as a dict on the vertices of X."""
    sg, ig, cg = bridge_graph(g, c, x)
    sh, ih, ch = bridge_graph(h, d, y)
    f = interval_iso(sg, sh, cg, ch)
    if f is None:
        return None
    back = {i: v for v, i in ih.items()}
    return {v: back[f[ig[v]]] for v in x}


def max_clique_sizes(cliques):
    return sorted(len(c) for c in cliques)


def find_admissible_clique(g, d, cliques=None):
    """First maximal clique C whose bridges are interval with central poset of
    width <= d, as a CentralPoset; None if there is none."""
    if cliques is None:
        cliques = maximal_cliques(g)
    for c in cliques:
        cp = central_poset(g, c)
        if not isinstance(cp, CentralPoset):
            continue
        if d is None or width(cp.poset).width <= d:
            return cp
    return None


def recognize_sd(g, d):
    """The admissible clique certifying that g is an S_d-graph, or None."""
    try:
        cliques = maximal_cliques(g)
    except NotChordalError:
        return None
    if g.n == 0:
        return CentralPoset(frozenset(), [], Poset(0))
    return find_admissible_clique(g, d, cliques)


# -- the paired structure R over C + D ---------------------------------------

class PairedPoset:
    """R = P + Q + apexes, colors, levels and the attachment collection.

    Domain points: P bridges 0..k-1, Q bridges k..2k-1, apex of P = 2k, apex
    of Q = 2k+1, then one fixed point per vertex color present on C + D.
    Ground vertices are tagged (side, vertex).
    """

    def __init__(self, g, cp, h, cq):
        self.g, self.h, self.cp, self.cq = g, h, cp, cq
        k = len(cp.bridges)
        if len(cq.bridges) != k:
            raise ValueError("sides have different bridge counts")
        self.k = k
        self.apex_p = 2 * k
        self.apex_q = 2 * k + 1
        rel = [(a, b) for a, b in cp.poset.relations()]
        rel += [(a + k, b + k) for a, b in cq.poset.relations()]
        rel += [(i, self.apex_p) for i in range(k)]
        rel += [(k + i, self.apex_q) for i in range(k)]
        c_cols = sorted({repr(g.color(v)) for v in cp.clique} | {repr(h.color(v)) for v in cq.clique})
        self.color_points = {c: 2 * k + 2 + i for i, c in enumerate(c_cols)}
        npts = 2 * k + 2 + len(c_cols)
        base = Poset(npts, rel, close=False)
        self.levels = levels(base)
        lv = base.level_of()
        canon = []
        for i, b in enumerate(cp.bridges):
            canon.append(bridge_canon(g, cp.clique, b.vertices))
        for b in cq.bridges:
            canon.append(bridge_canon(h, cq.clique, b.vertices))
        colors = [(lv[i], canon[i]) for i in range(2 * k)]
        colors += [("apex",), ("apex",)]
        colors += [("fixed", c) for c in c_cols]
        self.colors = colors
        self.poset = base.with_colors(colors)
        self.poset.side = [0] * k + [1] * k + [0, 1] + [2] * len(c_cols)
        ground = [(0, v) for v in cp.clique] + [(1, v) for v in cq.clique]
        u = AttachmentCollection(ground)
        for i, b in enumerate(cp.bridges):
            u.add_chain(i, [{(0, v) for v in s} for s in b.chain], 0, lv[i])
        for i, b in enumerate(cq.bridges):
            u.add_chain(k + i, [{(1, v) for v in s} for s in b.chain], 1, lv[k + i])
        u.add_set(self.apex_p, {(0, v) for v in cp.clique}, 0, lv[self.apex_p])
        u.add_set(self.apex_q, {(1, v) for v in cq.clique}, 1, lv[self.apex_q])
        for c, pt in self.color_points.items():
            members = {(0, v) for v in cp.clique if repr(g.color(v)) == c}
            members |= {(1, v) for v in cq.clique if repr(h.color(v)) == c}
            u.add_set(pt, members, 2, lv[pt])
        self.collection = u

    def sides_match(self):
        k = self.k
        from collections import Counter
        return Counter(map(repr, self.colors[:k])) == Counter(map(repr, self.colors[k:2 * k]))

    def swaps(self, x):
        return x[self.apex_p] == self.apex_q

    def bridge(self, i):
        if i < self.k:
            return 0, self.cp.bridges[i]
        return 1, self.cq.bridges[i - self.k]

    def lift(self, x):
        """Vertex map of the element x (acting on R) as
        {(side, v): (side', v')} on C + D and all bridge vertices."""
        rt = {key: (x[key[0]], key[1]) for key in self.collection.members}
        f = dict(venn_bijection(self.collection, rt))
        graphs = (self.g, self.h)
        cliques = (self.cp.clique, self.cq.clique)
        for i in range(2 * self.k):
            s, b = self.bridge(i)
            t, b2 = self.bridge(x[i])
            phi = bridge_iso(graphs[s], cliques[s], b.vertices, graphs[t], cliques[t], b2.vertices)
            if phi is None:
                raise AssertionError("same-colored bridges are not isomorphic")
            for v, w in phi.items():
                f[(s, v)] = (t, w)
        return f


def _colored_aut(pp):
    from .permgroup import colored_poset_aut
    return colored_poset_aut(pp.poset)


def _gamma_prime_of(pp, d):
    gamma = _colored_aut(pp)
    if pp.apex_q not in gamma.orbit(pp.apex_p):
        return gamma, None
    gp = gamma_prime(pp.collection, pp.levels, gamma, d)
    return gamma, gp


def sd_pair_attempt(g, cp, h, cq, d):
    """One pair of central cliques (C, D): a verified isomorphism g -> h or None."""
    if len(cp.bridges) != len(cq.bridges):
        return None, "bridge counts differ"
    pp = PairedPoset(g, cp, h, cq)
    if not pp.sides_match():
        return None, "colored posets differ"
    gamma, gp = _gamma_prime_of(pp, d)
    if gp is None:
        return None, "no color-preserving swap of P and Q"
    for x in gp.gens:
        if pp.swaps(x):
            f = pp.lift(x)
            iso = [None] * g.n
            for (s, v), (t, w) in f.items():
                if s == 0:
                    if t != 1:
                        raise AssertionError("swap does not map g into h")
                    iso[v] = w
            if not is_isomorphism(g, h, iso):
                raise AssertionError("constructed witness is not an isomorphism")
            return iso, "swap found"
    return None, "Venn refinement removed every swap"


def sd_iso(g, h, d, clique=None):
    """Decide isomorphism of two S_d-graphs (FPT in d)."""
    if d < 1:
        raise ValueError("d must be at least 1")
    trace = {}
    if g.n != h.n or g.m != h.m:
        return IsoVerdict(False, trace=trace, diagnostic="vertex or edge counts differ")
    if g.n == 0:
        return IsoVerdict(True, [], trace)
    try:
        cg = maximal_cliques(g)
        ch = maximal_cliques(h)
    except NotChordalError:
        return IsoVerdict(False, trace=trace, diagnostic="input is not chordal, hence not an S_d-graph")
    if max_clique_sizes(cg) != max_clique_sizes(ch):
        return IsoVerdict(False, trace=trace, diagnostic="maximal clique sizes differ")
    if clique is None:
        cp = find_admissible_clique(g, d, cg)
    else:
        cp = central_poset(g, clique)
        if not isinstance(cp, CentralPoset) or width(cp.poset).width > d:
            raise ValueError("forced clique is not admissible")
    if cp is None:
        return IsoVerdict(False, trace=trace, diagnostic=f"first graph is not an S_{d}-graph")
    trace["C"] = sorted(cp.clique)
    tried = 0
    for dd in ch:
        if len(dd) != len(cp.clique):
            continue
        cq = central_poset(h, dd)
        if not isinstance(cq, CentralPoset) or width(cq.poset).width > d:
            continue
        tried += 1
        iso, why = sd_pair_attempt(g, cp, h, cq, d)
        if iso is not None:
            trace["D"] = sorted(dd)
            return IsoVerdict(True, iso, trace)
    trace["admissible_D"] = tried
    if tried == 0:
        return IsoVerdict(False, trace=trace,
                          diagnostic=f"second graph has no admissible clique; not an S_{d}-graph")
    return IsoVerdict(False, trace=trace)


# -- bounded clique size ------------------------------------------------------

def _twin_classes(h, verts):
    groups = {}
    for v in sorted(verts):
        groups.setdefault(h.masks[v] | 1 << v, []).append(v)
    return list(groups.values())


def _multiset_perms(counts):
    """Distinct sequences over class ids with the given multiplicities."""
    total = sum(counts)
    seq = [0] * total
    counts = list(counts)

    def rec(i):
        if i == total:
            yield tuple(seq)
            return
        for c in range(len(counts)):
            if counts[c]:
                counts[c] -= 1
                seq[i] = c
                yield from rec(i + 1)
                counts[c] += 1

    yield from rec(0)


def sd_iso_bounded_clique(g, h, p):
    """Isomorphism by labeling the central cliques (FPT in the clique bound p).

    Labelings of D that differ by permuting twin vertices of D give identical
    comparisons, so one labeling per twin-class arrangement is tried; bridge
    comparisons are memoised on the labels of the bridge's attachment.
    """
    trace = {"p": p}
    if g.n != h.n or g.m != h.m:
        return IsoVerdict(False, trace=trace, diagnostic="vertex or edge counts differ")
    if g.n == 0:
        return IsoVerdict(True, [], trace)
    try:
        cg = maximal_cliques(g)
        ch = maximal_cliques(h)
    except NotChordalError:
        return IsoVerdict(False, trace=trace, diagnostic="input is not chordal")
    if max_clique_sizes(cg) != max_clique_sizes(ch):
        return IsoVerdict(False, trace=trace, diagnostic="maximal clique sizes differ")
    cp = find_admissible_clique(g, None, cg)
    if cp is None:
        return IsoVerdict(False, trace=trace, diagnostic="no clique with interval bridges in first graph")
    c = sorted(cp.clique)
    lab_c = {v: i for i, v in enumerate(c)}
    xs = cp.bridges
    x_canon = [bridge_canon(g, cp.clique, b.vertices, lab_c) for b in xs]
    trace["C"] = c
    labelings = 0
    for dd in ch:
        if len(dd) != len(c):
            continue
        cq = central_poset(h, dd)
        if not isinstance(cq, CentralPoset) or len(cq.bridges) != len(xs):
            continue
        ys = cq.bridges
        attach = [sorted(b.upper) for b in ys]
        memo = {}
        classes = _twin_classes(h, dd)
        for arrangement in _multiset_perms([len(cl) for cl in classes]):
            labelings += 1
            lab_d = {}
            nxt = [0] * len(classes)
            for label, cls in enumerate(arrangement):
                lab_d[classes[cls][nxt[cls]]] = label
                nxt[cls] += 1
            y_canon = []
            for j, b in enumerate(ys):
                key = (j, tuple(lab_d[v] for v in attach[j]))
                if key not in memo:
                    memo[key] = bridge_canon(h, cq.clique, b.vertices, lab_d)
                y_canon.append(memo[key])
            # greedy matching of symmetric (label-respecting isomorphic) pairs
            pool = list(range(len(ys)))
            match = {}
            for i in range(len(xs)):
                hit = next((j for j in pool if y_canon[j] == x_canon[i]), None)
                if hit is None:
                    break
                pool.remove(hit)
                match[i] = hit
            else:
                iso = _labelled_witness(g, cp, h, cq, lab_c, lab_d, match)
                trace.update(D=sorted(dd), labelings=labelings)
                return IsoVerdict(True, iso, trace)
    trace["labelings"] = labelings
    return IsoVerdict(False, trace=trace)


def _labelled_witness(g, cp, h, cq, lab_c, lab_d, match):
    iso = [None] * g.n
    inv_d = {l: v for v, l in lab_d.items()}
    for v, l in lab_c.items():
        iso[v] = inv_d[l]
    for i, j in match.items():
        x, y = cp.bridges[i], cq.bridges[j]
        sg, ig, colg = bridge_graph(g, cp.clique, x.vertices, lab_c)
        sh, ih, colh = bridge_graph(h, cq.clique, y.vertices, lab_d)
        f = interval_iso(sg, sh, colg, colh)
        back = {k: v for v, k in ih.items()}
        for v in x.vertices:
            iso[v] = back[f[ig[v]]]
    if not is_isomorphism(g, h, iso):
        raise AssertionError("labelled witness is not an isomorphism")
    return iso


# -- automorphism group -------------------------------------------------------

def _fixing_clique_gens(graph, clique, vertices, offset):
    """Automorphisms of K(Z) fixing the clique pointwise, on the vertices of K."""
    sub, idx, colors = bridge_graph(graph, clique, vertices)
    uniq = []
    back = {i: v for v, i in idx.items()}
    for i, col in enumerate(colors):
        uniq.append(("c", back[i]) if col[0] == "C" else col)
    out = []
    for p in interval_aut_gens(sub, uniq):
        out.append({back[i] + offset: back[p[i]] + offset for i in range(sub.n) if back[i] not in clique})
    return out


def sd_aut(g, d):
    """Aut(g) for an S_d-graph g, as a PermGroup on V(g).

    Runs the paired construction on g + g for the admissible clique C and
    every same-size clique D of the copy; lifts the Venn-good poset
    automorphisms to vertex permutations, adds automorphisms of interval
    bridges fixing their clique and the symmetric groups on the Venn cells of
    the cliques, and finally restricts the side-preserving subgroup to g.
    """
    n = g.n
    if n == 0:
        return PermGroup(0)
    try:
        cliques = maximal_cliques(g)
    except NotChordalError:
        raise NotSdGraphError("graph is not chordal") from None
    cp = find_admissible_clique(g, d, cliques)
    if cp is None:
        raise NotSdGraphError(f"graph is not an S_{d}-graph")
    deg = 2 * n
    gens = []

    def to_k(sv):
        s, v = sv
        return v + s * n

    def add_map(f):
        p = list(range(deg))
        for a, b in f.items():
            p[to_k(a)] = to_k(b)
        gens.append(tuple(p))

    def add_side(graph, cpx, side, cells):
        for b in cpx.bridges:
            for f in _fixing_clique_gens(graph, cpx.clique, b.vertices, side * n):
                p = list(range(deg))
                for a, c in f.items():
                    p[a] = c
                gens.append(tuple(p))
        for cell in cells:
            pts = [v + side * n for s, v in cell if s == side]
            gens.extend(symmetric_gens(deg, pts))

    found = False
    for dd in cliques:
        if len(dd) != len(cp.clique):
            continue
        cq = central_poset(g, dd)
        if not isinstance(cq, CentralPoset) or width(cq.poset).width > d:
            continue
        if len(cq.bridges) != len(cp.bridges):
            continue
        pp = PairedPoset(g, cp, g, cq)
        if not pp.sides_match():
            continue
        gamma, gp = _gamma_prime_of(pp, d)
        if gp is None or not any(pp.swaps(x) for x in gp.gens):
            continue
        found = True
        for x in gp.gens:
            add_map(pp.lift(x))
        add_side(g, cp, 0, ground_cells(pp.collection))
        add_side(g, cq, 1, ground_cells(pp.collection))
    if not found:
        raise AssertionError("no clique pair realises the identity automorphism")
    k_graph_check = [p for p in gens]
    delta = PermGroup(deg, k_graph_check)

    def side_key(x):
        return x[0] < n

    plus = fhl_subgroup(delta, side_key, 2, coset_key=side_key)
    restricted = [tuple(x[:n]) for x in plus.gens]
    for p in restricted:
        if not is_automorphism(g, p):
            raise AssertionError("lifted generator is not an automorphism")
    return PermGroup(n, restricted)
