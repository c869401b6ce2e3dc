"""Acceptance report: one PASS/FAIL line per criterion.

Run under pytest (the lines are collected and printed in the terminal
summary) or directly with `python3 tests/test_acceptance.py`.  Time limits
and corpus sizes are pinned below.  A line marked REPORT is informational and
does not gate; a FAIL line that pytest does not assert on is explained in its
detail text.
"""

import itertools
import math
import random
import statistics
import sys
import time
from dataclasses import dataclass
from math import factorial
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from _support import (  # noqa: E402
    failing_cases, fig4_paired, independent_pairs, level_witness, planted_pair, two_set_cells,
)
from sdiso.chordal import maximal_cliques  # noqa: E402
from sdiso.fixtures import fig1_graph, fig3_poset, fig4_pair  # noqa: E402
from sdiso.graph import Graph, is_automorphism, is_isomorphism  # noqa: E402
from sdiso.instances import (  # noqa: E402
    brute_aut, brute_iso, brute_poset_iso, poset_to_sd, random_poset, random_relabel,
    random_sd_graph, random_t_graph,
)
from sdiso.oracles import brute_colored_aut_order  # noqa: E402
from sdiso.permgroup import (  # noqa: E402
    PermGroup, bcm_automorphism, colored_poset_aut, cycles, fhl_subgroup, schreier_sims,
)
from sdiso.poset import Poset, central_poset, width  # noqa: E402
from sdiso.proper import assignment_tree, proper_sd_iso, proper_t_iso  # noqa: E402
from sdiso.sd import sd_aut, sd_iso, sd_iso_bounded_clique  # noqa: E402
from sdiso.tgraph import t_iso  # noqa: E402
from sdiso.trees import star  # noqa: E402
from sdiso.venn import gamma_prime, induced_collection_perm, venn_good  # noqa: E402

# pinned sizes and limits
LIMITS = {1: 1.0, 2: 5.0, 3: 600.0, 4: 300.0, 5: 300.0, 6: 300.0, 7: 300.0}
SWEEP_PAIRS = 500            # per d, half planted, half independent
SWEEP_DS = (2, 3, 4)
SWEEP_MAX_N = 12
BOUNDED_P = 8
AUT_INSTANCES = 200
POSET_PAIRS = 300
SCALING_NS = (50, 100, 200, 400)
SCALING_SEEDS = 5
SCALING_MAX_EXPONENT = 5.0

LINES = []


@dataclass
class Line:
    label: str
    ok: bool
    detail: str
    gating: bool = True

    def render(self):
        tag = ("PASS" if self.ok else "FAIL") if self.gating else "REPORT"
        return f"[{tag}] {self.label}: {self.detail}"


def emit(line):
    LINES.append(line)
    print(line.render())
    return line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- 1 ------------------------------------------------------------------------

FIG1_COVERS = {("X3", "X2"), ("X2", "X1"), ("X6", "X1"), ("X2", "X4"), ("X5", "X4")}


def criterion_1():
    def work():
        g, idx, comps = fig1_graph()
        cp = central_poset(g, [idx[x] for x in "1234"])
        name = {i: k for i, b in enumerate(cp.bridges) for k, vs in comps.items() if vs == b.vertices}
        covers = {(name[a], name[b]) for a, b in cp.poset.covers()}
        return covers, width(cp.poset).width
    (covers, w), secs = timed(work)
    ok = covers == FIG1_COVERS and w == 3 and secs < LIMITS[1]
    return [Line("1 Fig. 1 central poset", ok,
                 f"covers {'match' if covers == FIG1_COVERS else sorted(covers)}, width {w}, {secs:.3f}s < {LIMITS[1]}s")]


# -- 2 ------------------------------------------------------------------------

def criterion_2():
    def work():
        pp = fig4_paired()
        gamma = colored_poset_aut(pp.poset)
        has_swap = pp.apex_q in gamma.orbit(pp.apex_p)
        final = gamma_prime(pp.collection, pp.levels, gamma, 8)
        no_swap = pp.apex_q not in final.orbit(pp.apex_p)
        g, h = fig4_pair()
        return has_swap, no_swap, sd_iso(g, h, 8).isomorphic, brute_iso(g, h).isomorphic
    (has_swap, no_swap, ours, brute), secs = timed(work)
    ok = has_swap and no_swap and not ours and not brute and secs < LIMITS[2]
    return [Line("2 Fig. 4 swap removal", ok,
                 f"swap in colored poset group {has_swap}, all swaps removed {no_swap}, "
                 f"sd_iso {'ISO' if ours else 'NOT-ISO'}, brute {'ISO' if brute else 'NOT-ISO'}, "
                 f"{secs:.2f}s < {LIMITS[2]}s")]


# -- 3 ------------------------------------------------------------------------

def sweep_pairs(make, d):
    """SWEEP_PAIRS pairs: planted relabelings, then independent draws."""
    half = SWEEP_PAIRS // 2
    seed0 = 100_000 * d
    planted = []
    for s in range(half):
        g = make(seed0 + s)
        planted.append((g, random_relabel(g, seed0 + s)[0]))
    indep, same = independent_pairs(make, SWEEP_PAIRS - half, seed0 + 50_000)
    return planted + indep, same


def _n_of(seed):
    return 5 + seed % (SWEEP_MAX_N - 4)


class Tally:
    def __init__(self):
        self.total = self.agree = self.iso = 0
        self.bad = []

    def add(self, want, got, tag=None):
        self.total += 1
        self.iso += want
        if want == got:
            self.agree += 1
        else:
            self.bad.append(tag)

    def text(self):
        return f"{self.agree}/{self.total} agree ({self.iso} isomorphic pairs)"


def criterion_3():
    t0 = time.perf_counter()
    tallies = {k: Tally() for k in ("sd", "bounded", "t", "proper-sd", "proper-t", "proper-t-strict")}
    strict_premise = [0, 0]     # disagreements without / with a valid assignment
    witness_ok = True
    independent_same = []
    for d in SWEEP_DS:
        pairs, same = sweep_pairs(lambda s: random_sd_graph(_n_of(s), d, s)[0], d)
        independent_same.append(same)
        for g, h in pairs:
            want = brute_iso(g, h).isomorphic
            for key, fn in (("sd", lambda: sd_iso(g, h, d)), ("t", lambda: t_iso(g, h, star(d)))):
                v = fn()
                tallies[key].add(want, v.isomorphic)
                witness_ok &= not v.isomorphic or is_isomorphism(g, h, v.witness)
            p = max(len(c) for c in maximal_cliques(g))
            if p <= BOUNDED_P:
                v = sd_iso_bounded_clique(g, h, p)
                tallies["bounded"].add(want, v.isomorphic)
                witness_ok &= not v.isomorphic or is_isomorphism(g, h, v.witness)
        pairs, same = sweep_pairs(lambda s: random_sd_graph(_n_of(s), d, s, proper=True)[0], d + 10)
        independent_same.append(same)
        for g, h in pairs:
            want = brute_iso(g, h).isomorphic
            v = proper_sd_iso(g, h, d)
            tallies["proper-sd"].add(want, v.isomorphic)
            witness_ok &= not v.isomorphic or is_isomorphism(g, h, v.witness)
        pairs, same = sweep_pairs(lambda s: random_t_graph(star(d), _n_of(s), s, proper=True)[0], d + 20)
        independent_same.append(same)
        for g, h in pairs:
            want = brute_iso(g, h).isomorphic
            v = proper_t_iso(g, h, star(d))
            tallies["proper-t"].add(want, v.isomorphic)
            witness_ok &= not v.isomorphic or is_isomorphism(g, h, v.witness)
            s = proper_t_iso(g, h, star(d), fallback=False)
            tallies["proper-t-strict"].add(want, s.isomorphic)
            if s.isomorphic != want:
                strict_premise[assignment_tree(g, star(d)) is not None] += 1
    secs = time.perf_counter() - t0
    in_time = secs < LIMITS[3]
    lines = []
    names = {
        "sd": "3a sd_iso", "bounded": f"3b sd_iso_bounded_clique (p <= {BOUNDED_P})",
        "t": "3c t_iso (T = S_d)", "proper-sd": "3d proper_sd_iso (proper corpus)",
        "proper-t": "3e proper_t_iso (proper corpus, default)",
    }
    for key, label in names.items():
        tl = tallies[key]
        lines.append(Line(label, tl.agree == tl.total and witness_ok and in_time, tl.text()))
    st = tallies["proper-t-strict"]
    lines.append(Line(
        "3f proper_t_iso assignment search alone (fallback=False)", st.agree == st.total,
        f"{st.text()}; all {strict_premise[0]} misses are graphs with no valid rich/nonseparating "
        f"clique assignment on any tree ({strict_premise[1]} other misses). "
        "Such proper T-graphs exist (e.g. cliques {0,1,3,5},{0,2,3},{3,4,5} on S_3), so the "
        "assignment-based test alone is incomplete; 3e decides these components with t_iso"))
    lines.append(Line(
        "3 oracle sweep", all(x.ok for x in lines[:5]),
        f"{len(SWEEP_DS)} x 3 corpora x {SWEEP_PAIRS} pairs (n <= {SWEEP_MAX_N}), witnesses verified "
        f"{witness_ok}, independent pairs with equal (n, m): {sum(independent_same)}, "
        f"{secs:.0f}s < {LIMITS[3]:.0f}s"))
    return lines, strict_premise


# -- 4 ------------------------------------------------------------------------

def criterion_4():
    t0 = time.perf_counter()
    agree, nontrivial, gens_ok = 0, 0, True
    for i in range(AUT_INSTANCES):
        d = 1 + i % 3
        g, _ = random_sd_graph(3 + i % 8, d, 40_000 + i)
        grp = sd_aut(g, d)
        ref = brute_aut(g).order
        agree += grp.order() == ref
        nontrivial += ref > 1
        gens_ok &= all(is_automorphism(g, x) for x in grp.gens)
    secs = time.perf_counter() - t0
    ok = agree == AUT_INSTANCES and gens_ok and secs < LIMITS[4]
    return [Line("4 automorphism order", ok,
                 f"{agree}/{AUT_INSTANCES} exact orders (n <= 10, d <= 3, {nontrivial} with nontrivial group), "
                 f"generators verified {gens_ok}, {secs:.1f}s < {LIMITS[4]:.0f}s")]


# -- 5 ------------------------------------------------------------------------

def relabel_poset(p, seed):
    rng = random.Random(seed)
    perm = list(range(p.n))
    rng.shuffle(perm)
    return Poset(p.n, [(perm[a], perm[b]) for a, b in p.relations()])


def criterion_5():
    t0 = time.perf_counter()
    agree = iso = 0
    for i in range(POSET_PAIRS):
        n, d = 1 + i % 8, 1 + i % 3
        p = random_poset(n, d, 60_000 + i)
        q = relabel_poset(p, i) if i % 2 == 0 else random_poset(n, 1 + (i // 2) % 3, 70_000 + i)
        want = brute_poset_iso(p, q)
        got = brute_iso(poset_to_sd(p), poset_to_sd(q)).isomorphic
        agree += want == got
        iso += want
    g = poset_to_sd(fig3_poset())
    big = maximal_cliques(g)[0]
    m8 = sorted(v + 1 for v in g.adj[11 + 7])
    secs = time.perf_counter() - t0
    ok = agree == POSET_PAIRS and len(big) == 11 and m8 == [1, 2, 3, 5, 6, 8] and secs < LIMITS[5]
    return [Line("5 reduction", ok,
                 f"{agree}/{POSET_PAIRS} pairs agree ({iso} isomorphic), Fig. 3 |C| = {len(big)}, "
                 f"M_8 = {set(m8)}, {secs:.1f}s < {LIMITS[5]:.0f}s")]


# -- 6 ------------------------------------------------------------------------

def criterion_6():
    t0 = time.perf_counter()
    pp = fig4_paired()
    gc, hc = two_set_cells(pp, 0)[:3], two_set_cells(pp, 1)[:3]
    ok_a = gc == (1, 2, 2) and hc == (0, 3, 3)
    planted = good = 0
    for seed in range(100):
        pq, x, _ = planted_pair(seed, 1 + seed % 3)
        planted += 1
        good += venn_good(pq.collection, None, induced_collection_perm(x, pq.collection))
    cases = failing_cases()
    found = sum(level_witness(c.collection, c.levels, x, d) is not None for c, x, d in cases)
    secs = time.perf_counter() - t0
    in_time = secs < LIMITS[6]
    return [
        Line("6a Venn cells on Fig. 4 blue sets", ok_a and in_time, f"G {gc} vs H {hc}"),
        Line("6b planted automorphisms Venn-good", good == planted and in_time, f"{good}/{planted}"),
        Line("6c failing collections have a <= d level witness", found == len(cases) and len(cases) > 0 and in_time,
             f"{found}/{len(cases)} failing group elements (d in 2, 3), {secs:.1f}s < {LIMITS[6]:.0f}s"),
    ]


# -- 7 ------------------------------------------------------------------------

def _cyc(n, *pts):
    p = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        p[a] = b
    return tuple(p)


def _random_colored_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    verts = list(range(n))
    rng.shuffle(verts)
    classes = []
    while verts:
        k = rng.randint(1, min(3, len(verts)))
        classes.append(verts[:k])
        verts = verts[k:]
    p = rng.random()
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]), classes


def criterion_7():
    t0 = time.perf_counter()
    orders_ok = True
    for n in range(1, 11):
        sym = schreier_sims([_cyc(n, 0, 1), _cyc(n, *range(n))], n) if n > 1 else PermGroup(1)
        orders_ok &= sym.order() == factorial(n)
        if n >= 3:
            alt = PermGroup(n, [_cyc(n, 0, 1, k) for k in range(2, n)])
            dih = PermGroup(n, [_cyc(n, *range(n)), tuple((-i) % n for i in range(n))])
            orders_ok &= alt.order() == factorial(n) // 2 and dih.order() == 2 * n
    fhl_ok, fhl_count = True, 0

    def even(x):
        return sum(len(c) - 1 for c in cycles(x)) % 2 == 0

    def pair_stab(x):
        return {x[0], x[1]} == {0, 1}

    for seed in range(40):
        rng = random.Random(seed)
        n = rng.randint(3, 8)
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        grp = PermGroup(n, gens)
        for test in (even, pair_stab):
            sub = fhl_subgroup(grp, test, grp.order())
            fhl_ok &= sub.order() == sum(1 for x in grp.elements() if test(x))
            fhl_count += 1
    bcm_agree = 0
    for seed in range(200):
        g, classes = _random_colored_graph(80_000 + seed)
        bcm_agree += bcm_automorphism(g, classes).order() == brute_colored_aut_order(g, classes)
    secs = time.perf_counter() - t0
    ok = orders_ok and fhl_ok and bcm_agree == 200 and secs < LIMITS[7]
    return [Line("7 group engine", ok,
                 f"S_n/A_n/D_n orders n <= 10 exact {orders_ok}, fhl {fhl_count} subgroup counts exact {fhl_ok}, "
                 f"bcm {bcm_agree}/200, {secs:.1f}s < {LIMITS[7]:.0f}s")]


# -- 8 ------------------------------------------------------------------------

def criterion_8():
    medians = []
    for n in SCALING_NS:
        ts = []
        for s in range(SCALING_SEEDS):
            g, _ = random_sd_graph(n, 3, 90_000 + s)
            h, _ = random_relabel(g, s)
            t0 = time.perf_counter()
            assert sd_iso(g, h, 3).isomorphic
            ts.append(time.perf_counter() - t0)
        medians.append(statistics.median(ts))
    xs = [math.log(n) for n in SCALING_NS]
    ys = [math.log(t) for t in medians]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    within = slope <= SCALING_MAX_EXPONENT
    cells = ", ".join(f"n={n}: {t * 1000:.0f} ms" for n, t in zip(SCALING_NS, medians))
    return [Line("8 scaling smoke (d = 3)", within,
                 f"medians {cells}; fitted exponent {slope:.2f} "
                 f"({'within' if within else 'above'} the {SCALING_MAX_EXPONENT:g} ceiling)", gating=False)]


# -- pytest entry points ------------------------------------------------------

def _check(lines):
    for line in lines:
        emit(line)
    return lines


def test_criterion_1_fig1_poset():
    assert all(x.ok for x in _check(criterion_1()))


def test_criterion_2_fig4_swaps():
    assert all(x.ok for x in _check(criterion_2()))


def test_criterion_3_oracle_sweep():
    lines, strict_premise = criterion_3()
    _check(lines)
    gating = [x for x in lines if not x.label.startswith("3f")]
    assert all(x.ok for x in gating)
    # the assignment-only mode may only miss graphs without a valid assignment
    assert strict_premise[1] == 0


def test_criterion_4_aut_order():
    assert all(x.ok for x in _check(criterion_4()))


def test_criterion_5_reduction():
    assert all(x.ok for x in _check(criterion_5()))


def test_criterion_6_venn():
    assert all(x.ok for x in _check(criterion_6()))


def test_criterion_7_groups():
    assert all(x.ok for x in _check(criterion_7()))


def test_criterion_8_scaling_report():
    _check(criterion_8())


if __name__ == "__main__":
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
               criterion_6, criterion_7, criterion_8):
        out = fn()
        for line in (out[0] if isinstance(out, tuple) else out):
            emit(line)
