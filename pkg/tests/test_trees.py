import networkx as nx
import pytest
from hypothesis import given, strategies as st

from sdiso.fixtures import h_tree
from sdiso.trees import (
    TreeParam, parse_tree, path_tree, serialize_tree, star, subdivide, suppress, trees_up_to_leaves,
)


def test_star_shape():
    s = star(4)
    assert s.k == 5 and s.branching == [0] and s.leaves == [1, 2, 3, 4]
    assert s.budget() == (1, 4)


def test_h_tree_budget():
    t = TreeParam.from_parents(h_tree())
    assert t.budget() == (2, 4)


def test_path_budget():
    assert path_tree(5).budget() == (0, 2)
    assert TreeParam(((),)).budget() == (0, 0)


def test_rejects_non_trees():
    with pytest.raises(ValueError):
        TreeParam.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        TreeParam.from_edges(4, [(0, 1), (2, 3)])


def test_subdivide_then_suppress_is_identity_up_to_shape():
    t = TreeParam.from_parents(h_tree())
    big, node_map, paths = subdivide(t, 3)
    assert big.k == t.k + 2 * len(t.edges())
    assert all(len(p) == 4 for p in paths.values())
    s = suppress(big)
    assert nx.is_isomorphic(nx.Graph(s.edges()), nx.Graph(t.edges()))


def test_parse_and_serialize():
    t = parse_tree("# H\nt 0 0 0 1 1\n")
    assert t.budget() == (2, 4)
    assert parse_tree(serialize_tree(t)) == t


def test_parse_uses_first_tree_line():
    assert parse_tree("t 0 0 2 2\nt 0\n").k == 5


@pytest.mark.parametrize("text", ["x 0\n", "t 5\n", "t 1\n", "", "# only a comment\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_tree(text)


@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=14))
def test_random_parent_arrays_roundtrip(raw):
    parents = [None] + [r % (i + 1) for i, r in enumerate(raw)]
    t = TreeParam.from_parents(parents)
    assert parse_tree(serialize_tree(t)) == TreeParam.from_parents(t.parents(0))
    s = suppress(t)
    assert all(len(a) != 2 for a in s.adj) or s.k <= 2
    assert len(s.leaves) == len(t.leaves) or t.k <= 2


@pytest.mark.parametrize("ell,count", [(0, 1), (1, 1), (2, 2), (3, 3), (4, 5), (5, 8)])
def test_trees_up_to_leaves_counts(ell, count):
    # K1, K2, then series-reduced trees by leaf count: 1 with 3 leaves,
    # 2 with 4 (star, H), 3 with 5
    trees = trees_up_to_leaves(ell)
    assert len(trees) == count
    for t in trees:
        assert all(len(a) != 2 for a in t.adj)
        assert len(t.leaves) <= max(ell, 0) or t.k == 1


def test_trees_up_to_leaves_sorted_and_distinct():
    trees = trees_up_to_leaves(6)
    keys = [(len(t.leaves), t.k) for t in trees]
    assert keys == sorted(keys)
    graphs = [nx.Graph(t.edges()) for t in trees if t.k > 1]
    for i, a in enumerate(graphs):
        for b in graphs[i + 1:]:
            assert not nx.is_isomorphic(a, b)
