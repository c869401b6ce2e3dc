"""Command-line front end.

    sdiso iso --alg sd --param 8 g.graph h.graph
    sdiso aut --alg sd --param 3 g.graph
    sdiso recognize-sd --d 3 g.graph
    sdiso gen sd --n 30 --d 3 --seed 7 [--truth rep.txt]
    sdiso reduce p.poset
    sdiso bench --suite small

Exit codes: 0 isomorphic / positive, 1 not isomorphic / negative, 2 usage or
input error, 3 refused by a size-guarded oracle.  Verdicts go to stdout,
diagnostics to stderr.
"""

import argparse
import csv
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .graph import ParseError, is_isomorphism, parse_graph, serialize_graph
from .oracles import OracleSizeError, brute_aut, brute_iso
from .permgroup import format_cycles
from .poset import parse_poset, serialize_poset
from .trees import parse_tree, serialize_tree, star

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3
ISO_ALGS = ("sd", "sd-small", "t", "proper-sd", "proper-t", "leafage", "brute")


class UsageError(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path):
    try:
        return parse_graph(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _int_param(param, what):
    try:
        return int(param)
    except (TypeError, ValueError):
        raise UsageError(f"--param must be an integer {what}") from None


def _tree_param(param):
    """An integer d means the star S_d, anything else is a tree file."""
    if param is None:
        raise UsageError("--param is required (integer d or tree file)")
    try:
        return star(int(param))
    except ValueError:
        pass
    try:
        return parse_tree(_read(param))
    except ValueError as exc:
        raise UsageError(f"{param}: {exc}") from None


def run_iso(alg, param, g, h):
    """IsoVerdict-like object (isomorphic, witness) for one algorithm."""
    from . import proper, sd, tgraph
    if alg == "brute":
        return brute_iso(g, h)
    if alg == "sd":
        return sd.sd_iso(g, h, _int_param(param, "d"))
    if alg == "sd-small":
        return sd.sd_iso_bounded_clique(g, h, _int_param(param, "p"))
    if alg == "proper-sd":
        return proper.proper_sd_iso(g, h, _int_param(param, "d"))
    if alg == "leafage":
        return tgraph.leafage_iso(g, h, _int_param(param, "leafage"))
    t = _tree_param(param)
    if alg == "t":
        return tgraph.t_iso(g, h, t)
    return proper.proper_t_iso(g, h, t)


def cmd_iso(args):
    g, h = _graph(args.g), _graph(args.h)
    if args.alg != "brute" and args.param is None:
        raise UsageError(f"--alg {args.alg} needs --param")
    from .chordal import NotChordalError
    try:
        v = run_iso(args.alg, args.param, g, h)
    except NotChordalError as exc:
        raise UsageError(str(exc)) from None
    diag = getattr(v, "diagnostic", None)
    if diag:
        print(diag, file=sys.stderr)
    if not v.isomorphic:
        print("NOT-ISOMORPHIC")
        return EXIT_NO
    print("ISOMORPHIC")
    if args.witness:
        if not is_isomorphism(g, h, v.witness):
            raise AssertionError("witness failed the edge check")
        print(" ".join(f"{a}->{b}" for a, b in enumerate(v.witness)))
    return EXIT_YES


def cmd_aut(args):
    g = _graph(args.g)
    if args.alg == "brute":
        res = brute_aut(g)
        order, gens = res.order, res.gens
    else:
        from .sd import sd_aut
        from .tgraph import t_aut
        try:
            if args.alg == "sd":
                grp = sd_aut(g, _int_param(args.param, "d"))
            else:
                grp = t_aut(g, _tree_param(args.param))
        except ValueError as exc:
            # NotSdGraphError, or a graph that is not a T-graph for the tree
            print(str(exc), file=sys.stderr)
            return EXIT_NO
        order, gens = grp.order(), grp.generators()
    print(f"order {order}")
    for p in gens:
        print(format_cycles(p))
    return EXIT_YES


def cmd_recognize(args):
    from .sd import recognize_sd
    from .poset import width
    g = _graph(args.g)
    cp = recognize_sd(g, args.d)
    if cp is None:
        print(f"NOT-S{args.d}")
        return EXIT_NO
    print(f"S{args.d}-GRAPH clique {' '.join(map(str, sorted(cp.clique)))} "
          f"width {width(cp.poset).width}")
    return EXIT_YES


def _serialize_rep(rep):
    lines = [serialize_tree(rep.tree).rstrip("\n")]
    lines += [f"s {v} " + " ".join(map(str, sorted(s))) for v, s in enumerate(rep.subtrees)]
    return "\n".join(lines) + "\n"


def cmd_gen(args):
    from . import instances
    kind = args.kind
    proper = args.proper or kind.startswith("proper-")
    base = kind.removeprefix("proper-")
    if base == "poset":
        if args.d is None:
            raise UsageError("gen poset needs --d")
        sys.stdout.write(serialize_poset(instances.random_poset(args.n, args.d, args.seed)))
        return EXIT_YES
    if base == "sd":
        if args.d is None:
            raise UsageError("gen sd needs --d")
        try:
            g, rep = instances.random_sd_graph(args.n, args.d, args.seed, proper=proper)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.tree is None and args.d is None:
            raise UsageError("gen t needs --tree or --d")
        t = _tree_param(args.tree if args.tree is not None else str(args.d))
        g, rep = instances.random_t_graph(t, args.n, args.seed, proper=proper)
    sys.stdout.write(serialize_graph(g))
    if args.truth:
        Path(args.truth).write_text(_serialize_rep(rep))
    return EXIT_YES


def cmd_reduce(args):
    from .instances import poset_to_sd
    try:
        p = parse_poset(_read(args.poset))
    except ParseError as exc:
        raise UsageError(f"{args.poset}: {exc}") from None
    sys.stdout.write(serialize_graph(poset_to_sd(p)))
    return EXIT_YES


# -- bench --------------------------------------------------------------------

SUITES = {
    # name: list of (generator, n values, d, algorithms, seeds)
    "small": ("sd", (8, 10, 12), 3, ("sd", "t", "brute"), range(5)),
    "proper": ("proper-sd", (8, 10, 12), 3, ("proper-sd", "sd", "brute"), range(5)),
    "scaling": ("sd", (50, 100, 200, 400), 3, ("sd",), range(3)),
}


def _bench_one(job):
    from .instances import random_relabel, random_sd_graph
    kind, n, d, algs, seed = job
    g, _ = random_sd_graph(n, d, seed, proper=kind.startswith("proper"))
    h, _ = random_relabel(g, seed + 1)
    rows = []
    for alg in algs:
        t0 = time.perf_counter()
        try:
            v = run_iso(alg, str(d), g, h)
            verdict = "ISOMORPHIC" if v.isomorphic else "NOT-ISOMORPHIC"
        except OracleSizeError:
            verdict = "REFUSED"
        ms = (time.perf_counter() - t0) * 1000
        rows.append((f"{kind}-n{n}-s{seed}", g.n, d, alg, f"{ms:.2f}", verdict))
    return rows


def cmd_bench(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    kind, ns, d, algs, seeds = SUITES[args.suite]
    jobs = [(kind, n, d, algs, s) for n in ns for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("instance", "n", "d", "algorithm", "millis", "verdict"))
    times = {}
    for rows in results:
        for row in rows:
            w.writerow(row)
            times.setdefault((row[3], row[1]), []).append(float(row[4]))
    for (alg, n), ms in sorted(times.items()):
        print(f"{alg} n={n} median {statistics.median(ms):.2f} ms", file=sys.stderr)
    return EXIT_YES


def build_parser():
    ap = argparse.ArgumentParser(prog="sdiso", description="Isomorphism of S_d-graphs and T-graphs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("iso", help="decide isomorphism of two graphs")
    p.add_argument("--alg", choices=ISO_ALGS, default="sd")
    p.add_argument("--param", help="d, clique bound p, leafage, or tree file (integer d = star S_d)")
    p.add_argument("--witness", action="store_true", help="print the bijection")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", help="automorphism group order and generators")
    p.add_argument("--alg", choices=("sd", "t", "brute"), default="sd")
    p.add_argument("--param")
    p.add_argument("g")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("recognize-sd", help="S_d check with an admissible clique")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("g")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("gen", help="seeded random instance to stdout")
    p.add_argument("kind", choices=("sd", "t", "poset", "proper-sd", "proper-t"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--tree", help="tree file for t instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--proper", action="store_true")
    p.add_argument("--truth", help="write the representation to this file")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="poset file to its S_d-graph")
    p.add_argument("poset")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="timing CSV for a named suite")
    p.add_argument("--suite", default="small")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleSizeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
