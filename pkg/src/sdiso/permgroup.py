"""Permutation groups: deterministic Schreier-Sims, bounded-index subgroups,
and automorphism groups of graphs with bounded color multiplicity.

Permutations are tuples p with p[i] the image of point i.  Products apply the
left factor first: mul(p, q)[i] == q[p[i]].
"""

from math import factorial

from .graph import Graph


def identity(n):
    return tuple(range(n))


def is_identity(p):
    return all(i == x for i, x in enumerate(p))


def mul(p, q):
    return tuple(q[x] for x in p)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycles(p):
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def format_cycles(p):
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def transposition(n, a, b):
    p = list(range(n))
    p[a], p[b] = b, a
    return tuple(p)


def symmetric_gens(n, points):
    """Generators of the symmetric group on `points` (a transposition and a cycle)."""
    pts = sorted(points)
    if len(pts) < 2:
        return []
    gens = [transposition(n, pts[0], pts[1])]
    if len(pts) > 2:
        p = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            p[a] = b
        gens.append(tuple(p))
    return gens


class IndexBoundError(RuntimeError):
    """Coset enumeration exceeded the declared index bound."""


class PermGroup:
    """Group given by a base and strong generating set.

    level i holds the strong generators fixing base[:i] pointwise and a
    transversal mapping every point of the basic orbit to its coset
    representative u with u[base[i]] == point.
    """

    def __init__(self, degree, gens=(), base=()):
        self.degree = degree
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.gens = _dedupe(gens)
        self.base = list(base)
        self.strong = []
        self.trans = []
        self._schreier_sims(self.gens)

    # -- construction ---------------------------------------------------
    def _level_gens(self, i):
        pts = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in pts)]

    def _orbit(self, i):
        b = self.base[i]
        gens = self._level_gens(i)
        tr = {b: identity(self.degree)}
        queue = [b]
        for x in queue:
            ux = tr[x]
            for s in gens:
                y = s[x]
                if y not in tr:
                    tr[y] = mul(ux, s)
                    queue.append(y)
        return tr

    def _recompute(self, lo, hi):
        while len(self.trans) < len(self.base):
            self.trans.append(None)
        for i in range(lo, hi + 1):
            self.trans[i] = self._orbit(i)

    def _sift(self, g, start=0):
        for i in range(start, len(self.base)):
            y = g[self.base[i]]
            u = self.trans[i].get(y)
            if u is None:
                return g, i
            g = mul(g, inverse(u))
        return g, len(self.base)

    def _new_base_point(self, g):
        for i, x in enumerate(g):
            if x != i:
                self.base.append(i)
                return
        raise AssertionError("identity has no moved point")

    def _schreier_sims(self, gens):
        for g in gens:
            if is_identity(g):
                continue
            if all(g[b] == b for b in self.base):
                self._new_base_point(g)
            self.strong.append(g)
        self._recompute(0, len(self.base) - 1)
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            tr = self.trans[i]
            gens_i = self._level_gens(i)
            for x, ux in list(tr.items()):
                for s in gens_i:
                    y = s[x]
                    h = mul(mul(ux, s), inverse(tr[y]))
                    if is_identity(h):
                        continue
                    h, j = self._sift(h, i + 1)
                    if is_identity(h):
                        continue
                    if j == len(self.base):
                        self._new_base_point(h)
                    self.strong.append(h)
                    self._recompute(i + 1, j)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    # -- queries ----------------------------------------------------------
    def order(self):
        o = 1
        for t in self.trans:
            o *= len(t)
        return o

    def contains(self, g):
        g = tuple(g)
        if len(g) != self.degree:
            return False
        h, j = self._sift(g)
        return j == len(self.base) and is_identity(h)

    def is_trivial(self):
        return not self.strong

    def generators(self):
        return list(self.gens)

    def orbit(self, point):
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def stabilizer_gens(self, k):
        """Strong generators of the pointwise stabilizer of base[:k]."""
        return self._level_gens(k)

    def elements(self):
        """All elements (small groups only)."""
        out = [identity(self.degree)]
        for tr in reversed(self.trans):
            out = [mul(a, u) for u in tr.values() for a in out]
        return out

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def _dedupe(gens):
    seen = set()
    out = []
    for g in gens:
        if g not in seen and not is_identity(g):
            seen.add(g)
            out.append(g)
    return out


def schreier_sims(gens, degree=None, base=()):
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    return PermGroup(degree, gens, base)


def extend_group(group, gens, target_order=None):
    """Group generated by group and gens; adds generators one at a time and
    stops early once target_order is reached."""
    cur = group
    pending = []
    for g in gens:
        if target_order is not None and cur.order() >= target_order:
            break
        g = tuple(g)
        if cur.contains(g):
            continue
        pending.append(g)
        cur = PermGroup(group.degree, cur.gens + [g], base=cur.base)
    return cur


def fhl_subgroup(group, member_test, index_bound, coset_key=None):
    """Subgroup {x in group : member_test(x)} given that it has index at most
    index_bound.

    Right cosets H x are enumerated from the identity by multiplying with the
    generators; a coset is recognised either by coset_key (a function that is
    constant exactly on right cosets) or by testing x * r^-1 against every
    known representative r.  Schreier generators x * rep(x)^-1 generate H.
    """
    if all(member_test(g) for g in group.gens):
        return group
    n = group.degree
    e = identity(n)
    reps = [e]
    keyed = {coset_key(e): 0} if coset_key else None
    schreier = []
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for s in group.gens:
            x = mul(r, s)
            hit = None
            if keyed is not None:
                hit = keyed.get(coset_key(x))
            else:
                for j, rj in enumerate(reps):
                    if member_test(mul(x, inverse(rj))):
                        hit = j
                        break
            if hit is None:
                reps.append(x)
                if keyed is not None:
                    keyed[coset_key(x)] = len(reps) - 1
                if len(reps) > index_bound:
                    raise IndexBoundError(f"more than {index_bound} cosets")
            else:
                y = mul(x, inverse(reps[hit]))
                if not is_identity(y):
                    schreier.append(y)
    target = group.order() // len(reps)
    if group.order() % len(reps):
        raise AssertionError("coset count does not divide the group order")
    sub = extend_group(PermGroup(n), _dedupe(schreier), target)
    if sub.order() != target:
        raise AssertionError("Schreier generators failed to reach the subgroup order")
    for g in sub.gens:
        if not member_test(g):
            raise AssertionError("subgroup generator fails the membership test")
    return sub


def bcm_automorphism(g, classes, d=None):
    """Color-preserving automorphism group of g where the colors are the given
    classes, each of size at most d, via a tower of bounded-index subgroups."""
    classes = [sorted(c) for c in classes if c]
    if d is None:
        d = max((len(c) for c in classes), default=1)
    n = g.n
    cls = [None] * n
    for i, c in enumerate(classes):
        if len(c) > d:
            raise ValueError(f"class of size {len(c)} exceeds multiplicity bound {d}")
        for v in c:
            if cls[v] is not None:
                raise ValueError(f"vertex {v} in two classes")
            cls[v] = i
    if any(c is None for c in cls):
        raise ValueError("classes do not cover the vertex set")
    gens = []
    for c in classes:
        gens.extend(symmetric_gens(n, c))
    group = PermGroup(n, gens)
    bound = factorial(d) ** 2
    for a in range(len(classes)):
        for b in range(a, len(classes)):
            ca, cb = classes[a], classes[b]
            bm = 0
            for v in cb:
                bm |= 1 << v
            edges = []
            for u in ca:
                for v in g.adj[u]:
                    if bm >> v & 1 and (a != b or u < v):
                        edges.append((u, v))
            total = len(ca) * len(cb) if a != b else len(ca) * (len(ca) - 1) // 2
            if not edges or len(edges) == total:
                continue
            eset = frozenset(frozenset(e) for e in edges)

            def key(x, eset=eset):
                return frozenset(frozenset(x[v] for v in e) for e in eset)

            def test(x, eset=eset):
                return key(x) == eset

            group = fhl_subgroup(group, test, bound, coset_key=key)
    return group


def colored_poset_aut(r, extra_classes=None):
    """Automorphisms of a colored poset preserving order and colors.

    Realised as bcm_automorphism on the comparability graph with classes given
    by (level, color); levels fix the direction of every comparability.
    """
    lv = r.level_of()
    keys = [(lv[i], repr(r.color(i))) for i in range(r.n)]
    groups = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    edges = [(i, j) for i in range(r.n) for j in range(r.n) if r.less(i, j)]
    comp = Graph(r.n, edges)
    return bcm_automorphism(comp, [groups[k] for k in sorted(groups)])
