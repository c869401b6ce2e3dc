"""Host trees for T-graphs: parsing, degree-2 suppression, subdivision and
enumeration by leaf count."""

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx


@dataclass(frozen=True)
class TreeParam:
    """Tree on nodes 0..k-1 given by sorted adjacency lists."""
    adj: tuple

    @classmethod
    def from_edges(cls, k, edges):
        nb = [set() for _ in range(k)]
        for a, b in edges:
            nb[a].add(b)
            nb[b].add(a)
        t = cls(tuple(tuple(sorted(s)) for s in nb))
        t.check()
        return t

    @classmethod
    def from_parents(cls, parents):
        """parents[i] is the parent of node i (None or -1 for the root)."""
        edges = [(i, p) for i, p in enumerate(parents) if p is not None and p >= 0]
        return cls.from_edges(len(parents), edges)

    @property
    def k(self):
        return len(self.adj)

    def edges(self):
        return [(a, b) for a in range(self.k) for b in self.adj[a] if a < b]

    @property
    def branching(self):
        return [v for v in range(self.k) if len(self.adj[v]) >= 3]

    @property
    def leaves(self):
        return [v for v in range(self.k) if len(self.adj[v]) == 1]

    def check(self):
        if self.k == 0:
            raise ValueError("empty tree")
        if len(self.edges()) != self.k - 1:
            raise ValueError("not a tree (edge count)")
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != self.k:
            raise ValueError("not a tree (disconnected)")

    def budget(self):
        """(branching nodes, leaves) after suppressing degree-2 nodes."""
        s = suppress(self)
        return len(s.branching), len(s.leaves)

    def parents(self, root=0):
        par = [None] * self.k
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    par[u] = v
                    stack.append(u)
        return par


def suppress(t):
    """Contract every degree-2 node (a path stays a single edge)."""
    if t.k <= 2:
        return t
    keep = [v for v in range(t.k) if len(t.adj[v]) != 2]
    if not keep:
        raise AssertionError("tree without leaves")
    idx = {v: i for i, v in enumerate(keep)}
    edges = set()
    for v in keep:
        for u in t.adj[v]:
            prev, cur = v, u
            while len(t.adj[cur]) == 2:
                nxt = t.adj[cur][0] if t.adj[cur][0] != prev else t.adj[cur][1]
                prev, cur = cur, nxt
            a, b = idx[v], idx[cur]
            edges.add((min(a, b), max(a, b)))
    return TreeParam.from_edges(len(keep), sorted(edges))


def subdivide(t, length):
    """Replace every edge by a path with `length` edges.

    Returns (tree, node map original -> new id, edge paths) where edge
    paths[(a, b)] lists the nodes from a to b inclusive."""
    edges = []
    paths = {}
    nxt = t.k
    for a, b in t.edges():
        path = [a]
        for _ in range(length - 1):
            path.append(nxt)
            nxt += 1
        path.append(b)
        edges += list(zip(path, path[1:]))
        paths[(a, b)] = path
    return TreeParam.from_edges(nxt, edges), {v: v for v in range(t.k)}, paths


def star(d):
    """The star S_d: center 0 and leaves 1..d."""
    return TreeParam.from_edges(d + 1, [(0, i) for i in range(1, d + 1)])


def path_tree(k):
    return TreeParam.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def parse_tree(text):
    """Parent-array line `t p1 p2 ...`: node i+1 has parent p_i, node 0 is the root."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] != "t":
            raise ValueError(f"tree line must start with `t`: {raw!r}")
        parents = [None] + [int(x) for x in tok[1:]]
        for i, p in enumerate(parents[1:], 1):
            if not 0 <= p < len(parents) or p == i:
                raise ValueError(f"bad parent {p} for node {i}")
        return TreeParam.from_parents(parents)
    raise ValueError("no tree line")


def serialize_tree(t):
    par = t.parents(0)
    return "t " + " ".join(str(p) for p in par[1:]) + "\n"


@lru_cache(maxsize=None)
def trees_up_to_leaves(ell):
    """Suppressed trees (no degree-2 nodes) with at most ell leaves, up to
    isomorphism, ordered by (leaves, nodes)."""
    out = [TreeParam(((),))]
    if ell >= 2:
        out.append(path_tree(2))
    for order in range(4, 2 * ell - 1):
        for tr in nx.nonisomorphic_trees(order):
            degs = [tr.degree(v) for v in tr]
            if 2 in degs:
                continue
            if sum(1 for x in degs if x == 1) > ell:
                continue
            out.append(TreeParam.from_edges(order, list(tr.edges())))
    out.sort(key=lambda t: (len(t.leaves), t.k))
    return tuple(out)
