import itertools
from collections import defaultdict

import pytest

from _support import corpus, perturb
from sdiso.chordal import maximal_cliques
from sdiso.fixtures import h_tree
from sdiso.graph import Graph, disjoint_union, is_isomorphism
from sdiso.instances import brute_iso, random_relabel, random_sd_graph, random_t_graph
from sdiso.interval import interval_canon, is_proper_interval
from sdiso.proper import (
    assignment_tree, is_rich, nonseparating_max_cliques, proper_central_clique, proper_sd_iso,
    proper_t_iso, rich_cliques,
)
from sdiso.sd import sd_iso
from sdiso.tgraph import t_iso
from sdiso.trees import TreeParam, path_tree, star

H = TreeParam.from_parents(h_tree())


def from_cliques(n, cliques):
    return Graph(n, sorted({(a, b) for c in cliques for a, b in itertools.combinations(sorted(c), 2)}))


def net():
    """Triangle 0,1,2 with a pendant path of length 2 at each corner."""
    return Graph(9, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 5), (5, 6), (2, 7), (7, 8)])


def no_rich_clique_graph():
    """Proper S_3-graph (and proper star-graph) without a rich clique: vertex 3
    is the center of the claw 1-3-2, 3-4, so it is not proper interval."""
    return from_cliques(6, [{0, 1, 3, 5}, {0, 2, 3}, {3, 4, 5}])


# -- rich and nonseparating cliques ------------------------------------------

def test_net_has_exactly_one_rich_clique():
    assert rich_cliques(net()) == [frozenset({0, 1, 2})]


def test_path_has_no_rich_clique():
    p = Graph(6, [(i, i + 1) for i in range(5)])
    assert rich_cliques(p) == []
    assert set(nonseparating_max_cliques(p)) == {frozenset({0, 1}), frozenset({4, 5})}


def test_nonseparating_small_cases():
    k4 = from_cliques(4, [{0, 1, 2, 3}])
    assert nonseparating_max_cliques(k4) == [frozenset(range(4))]
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert set(nonseparating_max_cliques(p3)) == {frozenset({0, 1}), frozenset({1, 2})}


def test_nested_attachments_are_not_rich():
    # attachments {0}, {1} and {0,1}: the widest antichain has two sets
    g = from_cliques(6, [{0, 1, 2}, {0, 3}, {0, 1, 4}, {1, 5}])
    assert not is_rich(g, [0, 1, 2])


def test_no_rich_clique_example_shape():
    g = no_rich_clique_graph()
    assert rich_cliques(g) == []
    assert not is_proper_interval(g)
    assert assignment_tree(g, star(3)) is None


@pytest.mark.parametrize("name,tree", [("S3", star(3)), ("S4", star(4)), ("H", H)])
def test_rich_clique_bound(name, tree):
    bound = tree.k + 2 * len(tree.edges())
    for seed in range(80):
        g, _ = random_t_graph(tree, 6 + seed % 8, seed, proper=True)
        assert len(rich_cliques(g)) <= bound


@pytest.mark.parametrize("name,tree", [("S3", star(3)), ("S4", star(4)), ("H", H)])
def test_nonseparating_count_equals_leaves_when_assignable(name, tree):
    assignable = 0
    for seed in range(80):
        g, _ = random_t_graph(tree, 6 + seed % 8, seed, proper=True)
        t = assignment_tree(g, tree)
        if t is None:
            continue
        assignable += 1
        want = 1 if t.k == 1 else len(t.leaves)
        assert len(nonseparating_max_cliques(g)) == want
    assert assignable >= 40


# -- proper S_d ---------------------------------------------------------------

@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_proper_sd_matches_brute_force(d):
    seen = [0, 0]
    for g, h in corpus(lambda s: random_sd_graph(5 + s % 8, d, s, proper=True)[0], 90, 500 * d):
        want = brute_iso(g, h).isomorphic
        got = proper_sd_iso(g, h, d)
        assert got.isomorphic == want
        if got.isomorphic:
            assert is_isomorphism(g, h, got.witness)
        seen[want] += 1
    assert seen[0] >= 10 and seen[1] >= 25


@pytest.mark.parametrize("seed", range(25))
def test_proper_sd_agrees_with_sd_iso(seed):
    d = 2 + seed % 3
    g, _ = random_sd_graph(8 + seed % 6, d, seed, proper=True)
    h = random_relabel(perturb(g, seed), seed)[0] if seed % 2 else random_relabel(g, seed)[0]
    assert proper_sd_iso(g, h, d).isomorphic == sd_iso(g, h, d).isomorphic


def test_proper_sd_two_is_interval_canon_on_proper_interval_graphs():
    buckets = defaultdict(list)
    for seed in range(200):
        g, _ = random_t_graph(path_tree(2), 5 + seed % 5, seed, proper=True)
        buckets[(g.n, g.m)].append(g)
    checked = 0
    for gs in buckets.values():
        for g, h in itertools.islice(itertools.combinations(gs, 2), 5):
            assert proper_sd_iso(g, h, 2).isomorphic == (interval_canon(g) == interval_canon(h))
            checked += 1
    assert checked > 40


@pytest.mark.parametrize("seed", range(20))
def test_generated_proper_sd_has_small_central_clique(seed):
    d = 2 + seed % 4
    g, rep = random_sd_graph(6 + seed, d, seed, proper=True)
    c, (xs, _) = proper_central_clique(g, d)
    assert len(xs) <= d
    assert frozenset(c) in {frozenset(k) for k in maximal_cliques(g)}


def test_proper_sd_shortcuts():
    assert proper_sd_iso(Graph(0), Graph(0), 2).isomorphic
    assert proper_sd_iso(Graph(2), Graph(3), 2).diagnostic
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert "chordal" in proper_sd_iso(c4, c4, 2).diagnostic


def test_proper_sd_net_is_s3():
    g = net()
    h = random_relabel(g, 4)[0]
    assert proper_sd_iso(g, h, 3).isomorphic
    assert not proper_sd_iso(g, h, 2).isomorphic


# -- proper T -----------------------------------------------------------------

@pytest.mark.parametrize("name,tree", [("S3", star(3)), ("S4", star(4)), ("H", H), ("P2", path_tree(2))])
def test_proper_t_matches_brute_force(name, tree):
    seen = [0, 0]
    for g, h in corpus(lambda s: random_t_graph(tree, 5 + s % 8, s, proper=True)[0], 75, 40 + 7 * len(name)):
        want = brute_iso(g, h).isomorphic
        got = proper_t_iso(g, h, tree)
        assert got.isomorphic == want
        if got.isomorphic:
            assert is_isomorphism(g, h, got.witness)
        seen[want] += 1
    assert seen[0] >= 5 and seen[1] >= 20


@pytest.mark.parametrize("name,tree", [("S3", star(3)), ("H", H)])
def test_strict_mode_fails_only_without_assignment(name, tree):
    outcome = [0, 0]
    for seed in range(60):
        g, _ = random_t_graph(tree, 6 + seed % 8, seed, proper=True)
        h = random_relabel(g, seed)[0]
        res = proper_t_iso(g, h, tree, fallback=False)
        outcome[res.isomorphic] += 1
        if res.isomorphic:
            assert is_isomorphism(g, h, res.witness)
        else:
            assert res.trace.get("inconclusive")
            assert assignment_tree(g, tree) is None
    assert outcome[0] >= 1 and outcome[1] >= 30


def test_no_rich_clique_example():
    g = no_rich_clique_graph()
    h = random_relabel(g, 9)[0]
    assert brute_iso(g, h).isomorphic
    strict = proper_t_iso(g, h, star(3), fallback=False)
    assert not strict.isomorphic and strict.trace["inconclusive"] and strict.diagnostic
    res = proper_t_iso(g, h, star(3))
    assert res.isomorphic and res.trace["fallback"] == 1
    assert is_isomorphism(g, h, res.witness)


def test_proper_t_net_on_star():
    g = net()
    assert assignment_tree(g, star(3)).budget() == (1, 3)
    res = proper_t_iso(g, random_relabel(g, 1)[0], star(3), fallback=False)
    assert res.isomorphic and res.trace["fallback"] == 0


def test_proper_t_complete_graphs():
    k4 = from_cliques(4, [range(4)])
    assert proper_t_iso(k4, k4, star(3)).isomorphic
    assert assignment_tree(k4, star(3)).k == 1


def test_proper_t_disconnected():
    a, _ = random_t_graph(star(3), 7, 2, proper=True)
    b, _ = random_t_graph(star(3), 6, 3, proper=True)
    g = disjoint_union(a, b)[0]
    h = random_relabel(disjoint_union(b, a)[0], 0)[0]
    res = proper_t_iso(g, h, star(3))
    assert res.isomorphic and is_isomorphism(g, h, res.witness)


@pytest.mark.parametrize("seed", range(15))
def test_proper_t_agrees_with_t_iso(seed):
    tree = [star(3), H, star(4)][seed % 3]
    g, _ = random_t_graph(tree, 6 + seed % 8, seed, proper=True)
    h = random_relabel(perturb(g, seed), seed)[0] if seed % 2 else random_relabel(g, seed)[0]
    assert proper_t_iso(g, h, tree).isomorphic == t_iso(g, h, tree).isomorphic
