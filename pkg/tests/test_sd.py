import itertools
from math import factorial

import pytest

from _support import corpus, perturb
from sdiso.chordal import maximal_cliques
from sdiso.fixtures import fig1_graph, fig4_pair
from sdiso.graph import Graph, is_automorphism, is_isomorphism
from sdiso.instances import brute_iso, intersection_graph, random_relabel, random_sd_graph
from sdiso.oracles import brute_aut
from sdiso.poset import CentralPoset, central_poset, width
from sdiso.sd import (
    NotSdGraphError, find_admissible_clique, recognize_sd, sd_aut, sd_iso, sd_iso_bounded_clique,
)


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def subdivided_star(d, length):
    edges = []
    nxt = 1
    for _ in range(d):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return Graph(nxt, edges)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_sd_iso_matches_brute_force(d):
    seen = [0, 0]
    for g, h in corpus(lambda s: random_sd_graph(5 + s % 8, d, s)[0], 90, 1000 * d):
        want = brute_iso(g, h).isomorphic
        if recognize_sd(h, d) is None:
            # perturbation left S_d: both must report non-isomorphic
            assert not want
        got = sd_iso(g, h, d)
        assert got.isomorphic == want, (g, h)
        if got.isomorphic:
            assert is_isomorphism(g, h, got.witness)
        seen[want] += 1
    assert seen[0] >= 10 and seen[1] >= 25


@pytest.mark.parametrize("d", [1, 2, 3])
def test_bounded_clique_matches_brute_force(d):
    for g, h in corpus(lambda s: random_sd_graph(5 + s % 8, d, s)[0], 60, 7000 + 100 * d):
        p = max(len(c) for c in maximal_cliques(g))
        want = brute_iso(g, h).isomorphic
        got = sd_iso_bounded_clique(g, h, p)
        assert got.isomorphic == want
        if got.isomorphic:
            assert is_isomorphism(g, h, got.witness)


def test_fig1_self_and_relabel():
    g, _, _ = fig1_graph()
    assert recognize_sd(g, 3) is not None
    assert recognize_sd(g, 2) is None
    h, _ = random_relabel(g, 11)
    for other in (g, h):
        res = sd_iso(g, other, 3)
        assert res.isomorphic and is_isomorphism(g, other, res.witness)


def test_fig4_not_isomorphic():
    g, h = fig4_pair()
    assert not brute_iso(g, h).isomorphic
    assert not sd_iso(g, h, 8).isomorphic
    assert not sd_iso_bounded_clique(g, h, 9).isomorphic


def test_fig4_sides_isomorphic_to_themselves():
    g, h = fig4_pair()
    for x in (g, h):
        res = sd_iso(x, random_relabel(x, 5)[0], 8)
        assert res.isomorphic


def test_count_and_clique_size_shortcuts():
    assert sd_iso(Graph(3), Graph(4), 1).diagnostic
    tri = complete(3)
    assert not sd_iso(tri, Graph(3, [(0, 1), (1, 2)]), 2)
    assert sd_iso(Graph(0), Graph(0), 1).isomorphic
    assert sd_iso(tri, tri, 1).isomorphic


def test_non_chordal_rejected():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    res = sd_iso(c4, c4, 2)
    assert not res.isomorphic and "chordal" in res.diagnostic


def test_d_must_be_positive():
    with pytest.raises(ValueError):
        sd_iso(Graph(1), Graph(1), 0)


@pytest.mark.parametrize("seed", range(12))
def test_clique_choice_does_not_change_verdict(seed):
    d = 2 + seed % 2
    g, _ = random_sd_graph(8 + seed % 5, d, seed)
    for h in (random_relabel(g, seed)[0], random_relabel(perturb(g, seed), seed)[0]):
        verdicts = set()
        for c in maximal_cliques(g):
            cp = central_poset(g, c)
            if isinstance(cp, CentralPoset) and width(cp.poset).width <= d:
                verdicts.add(sd_iso(g, h, d, clique=c).isomorphic)
        assert len(verdicts) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_aut_order(n):
    assert sd_aut(complete(n), 1).order() == factorial(n)


@pytest.mark.parametrize("d,length", [(2, 1), (3, 2), (4, 1), (4, 2), (5, 2)])
def test_subdivided_star_aut_order(d, length):
    # d = 2 is a path, whose reversal is the only symmetry
    want = 2 if d == 2 else factorial(d)
    g = subdivided_star(d, length)
    assert sd_aut(g, d).order() == want


@pytest.mark.parametrize("seed", range(40))
def test_sd_aut_matches_brute_force(seed):
    d = 1 + seed % 4
    g, _ = random_sd_graph(4 + seed % 10, d, seed)
    grp = sd_aut(g, d)
    ref = brute_aut(g)
    assert grp.order() == ref.order
    for x in grp.gens:
        assert is_automorphism(g, x)


def test_sd_aut_rejects_non_sd():
    with pytest.raises(NotSdGraphError):
        sd_aut(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 2)
    g, _, _ = fig1_graph()
    with pytest.raises(NotSdGraphError):
        sd_aut(g, 2)


@pytest.mark.parametrize("seed", range(15))
def test_generator_output_is_recognized(seed):
    d = 1 + seed % 4
    g, rep = random_sd_graph(6 + seed, d, seed)
    assert recognize_sd(g, d) is not None
    assert intersection_graph(rep) == g


def test_admissible_clique_is_maximal_with_small_width():
    for seed in range(20):
        g, _ = random_sd_graph(10, 3, seed)
        cp = find_admissible_clique(g, 3)
        assert width(cp.poset).width <= 3
        assert frozenset(cp.clique) in {frozenset(c) for c in maximal_cliques(g)}
