"""Small hand-built instances transcribed from the worked figures.

Each builder returns the graph together with a label map (figure label ->
vertex id) so tests can speak in the figure's names.
"""

from .graph import Graph
from .poset import Poset


def _graph(labels, edges):
    idx = {name: i for i, name in enumerate(labels)}
    return Graph(len(labels), [(idx[a], idx[b]) for a, b in edges]), idx


def fig1_graph():
    """S_3-graph: clique {1,2,3,4} plus components X1..X6."""
    labels = ["1", "2", "3", "4", "e", "f", "g", "h", "i", "j", "k", "l", "m"]
    clique = [(a, b) for i, a in enumerate("1234") for b in "1234"[i + 1:]]
    edges = clique + [
        ("e", "1"), ("e", "2"), ("e", "3"),                  # X1
        ("f", "g"), ("f", "1"), ("g", "1"), ("g", "3"),      # X2
        ("h", "i"), ("h", "1"),                              # X3
        ("j", "1"), ("j", "3"), ("j", "4"),                  # X4
        ("k", "l"), ("k", "4"),                              # X5
        ("m", "2"), ("m", "3"),                              # X6
    ]
    g, idx = _graph(labels, edges)
    comps = {"X1": "e", "X2": "fg", "X3": "hi", "X4": "j", "X5": "kl", "X6": "m"}
    return g, idx, {k: frozenset(idx[c] for c in v) for k, v in comps.items()}


def fig2_graph():
    """T-graph with maximal cliques C1 = {1,2,3,4} and C2 = {5,6,7} on the two
    branching nodes of an H-shaped tree."""
    labels = ["1", "2", "3", "4", "5", "6", "7",
              "e", "f", "g", "h", "i", "ii", "jj", "kk", "ll", "mm"]
    c1 = [(a, b) for i, a in enumerate("1234") for b in "1234"[i + 1:]]
    c2 = [("5", "6"), ("5", "7"), ("6", "7")]
    edges = c1 + c2 + [
        ("e", "1"), ("e", "2"), ("e", "3"),
        ("f", "g"), ("f", "1"), ("f", "3"), ("f", "7"),
        ("g", "1"), ("g", "3"), ("g", "5"), ("g", "7"),
        ("h", "i"), ("h", "1"), ("h", "4"),
        ("ii", "jj"), ("ii", "5"), ("ii", "6"), ("jj", "5"), ("jj", "6"),
        ("kk", "6"),
        ("ll", "6"), ("ll", "7"),
        ("mm", "7"),
    ]
    return _graph(labels, edges)


def h_tree():
    """Two adjacent branching nodes, each with two leaves (parent array)."""
    return [None, 0, 0, 0, 1, 1]


def fig3_poset():
    """Width-3 poset on elements 1..9 (ids 0..8) with three levels."""
    covers = [(1, 4), (1, 5), (2, 5), (3, 6), (4, 7), (5, 8), (6, 8), (6, 9)]
    return Poset(9, [(a - 1, b - 1) for a, b in covers])


FIG4_G_ATTACH = [{1}, {2}, {5}, {6}, {1, 2, 3}, {3, 5, 6}, {1, 2, 3, 4},
                 {3, 4, 5, 6}, set(range(1, 9))]
FIG4_H_ATTACH = [{1}, {2}, {5}, {6}, {1, 2, 3}, {4, 5, 6}, {1, 2, 3, 4},
                 {3, 4, 5, 6}, set(range(1, 9))]


def _pendant_graph(attach):
    n = 8 + len(attach)
    edges = [(a, b) for a in range(8) for b in range(a + 1, 8)]
    for i, s in enumerate(attach):
        edges += [(8 + i, c - 1) for c in sorted(s)]
    return Graph(n, edges)


def fig4_pair():
    """Non-isomorphic pair on the clique {1..8} (ids 0..7) with single-vertex
    components; they differ only in one blue-level attachment."""
    return _pendant_graph(FIG4_G_ATTACH), _pendant_graph(FIG4_H_ATTACH)
