"""Command-line front end.

Output is line-oriented, one fact per line, and depends only on the input
bytes and flags; timings go to stderr.

Exit codes: 0 affirmative / success, 1 negative verdict, 2 usage or input
error, 3 internal failure.
"""
import argparse
import sys
import time

from . import acceptance, oracle
from .dsp2 import DEFAULT_SEED, decide, report
from .errors import DSPError, KindMismatch
from .graph import DIRECTED, UNDIRECTED, gen_random, gen_random_dag, read_graph, write_graph
from .min2dsp_dag import solve_dag
from .min2dsp_directed import min_k
from .min2dsp_undirected import solve_undirected
from .shortest_paths import Distances, topological_order


def _path_line(tag, path):
    return f"{tag} " + " ".join(str(v) for v in path)


def _emit(lines):
    for line in lines:
        print(line)


def _header(args, solver):
    return [f"SOLVER {solver}", f"SEED {args.seed}", f"TRIALS {args.trials}"]


def _is_dag(g):
    a = g.arcs
    return g.directed and topological_order(g.n, a.tail, a.head) is not None


def cmd_dsp2(args):
    g = read_graph(args.graph)
    if not g.directed:
        raise KindMismatch("dsp2 expects a directed graph file")
    q = args.terminals
    lines = _header(args, "dsp2_directed")
    if args.report:
        paths = report(g, *q, seed=args.seed, trials=args.trials)
        verdict = paths is not None
    else:
        paths = None
        verdict = decide(g, *q, seed=args.seed, trials=args.trials)
    lines.append(f"DISJOINT {'true' if verdict else 'false'}")
    if paths is not None:
        lines += [_path_line("P1", paths[0]), _path_line("P2", paths[1])]
    _emit(lines)
    return 0 if verdict else 1


def _min2dsp(g, q, args):
    """(solver id, k*, paths or None) with the kind-based dispatch."""
    if not g.directed:
        k, paths = solve_undirected(g, *q, seed=args.seed, trials=args.trials)
        return "min2dsp_undirected", k, paths
    if _is_dag(g):
        k, paths = solve_dag(g, *q, seed=args.seed, trials=args.trials, report=True)
        return "min2dsp_dag", k, paths
    k = min_k(g, *q, seed=args.seed, trials=args.trials, force_large=args.force_large)
    return "min2dsp_directed", k, None


def cmd_min2dsp(args):
    g = read_graph(args.graph)
    solver, k, paths = _min2dsp(g, args.terminals, args)
    lines = _header(args, solver)
    lines.append(f"MIN_INTERSECTIONS {k}")
    if paths is not None:
        lines += [_path_line("P1", paths[0]), _path_line("P2", paths[1])]
    _emit(lines)
    return 0


def cmd_oracle(args):
    g = read_graph(args.graph)
    q = args.terminals
    res = oracle.min_intersection(g, q, cap=args.cap, D=Distances(g))
    if res is None:
        print("error: a target is not reachable from its source", file=sys.stderr)
        return 2
    lines = ["SOLVER oracle",
             f"DISJOINT {'true' if res.internallyDisjointExists else 'false'}",
             f"MIN_INTERSECTIONS {res.k}",
             "CLASSES " + " ".join(sorted(res.classes)),
             _path_line("P1", res.witness[0]),
             _path_line("P2", res.witness[1])]
    _emit(lines)
    return 0


def cmd_gen(args):
    weights = (args.wmin, args.wmax)
    if args.kind == "dag":
        g = gen_random_dag(args.n, args.m, weights, args.seed)
    else:
        g = gen_random(args.n, args.m, weights, args.kind, args.seed)
    if args.output == "-":
        from .graph import serialize
        sys.stdout.write(serialize(g))
    else:
        write_graph(g, args.output)
    return 0


def cmd_selftest(args):
    results = acceptance.run_all(scale=args.scale)
    failed = [r.number for r in results if not r.passed]
    print(f"SELFTEST {'PASS' if not failed else 'FAIL'}")
    return 0 if not failed else 1


def _terminals(p):
    p.add_argument("graph", help="graph file (header '<directed|undirected> n m', then 'u v w' lines)")
    for name in ("s1", "t1", "s2", "t2"):
        p.add_argument(name, type=int)


def _solver_flags(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the random field assignment")
    p.add_argument("--trials", type=int, default=1, help="independent random evaluations")
    p.add_argument("--report", action="store_true", help="also print witness paths")
    p.add_argument("--force-large", action="store_true",
                   help="lift the vertex cap of the dense directed Min-2-DSP tables")


def build_parser():
    parser = argparse.ArgumentParser(prog="dspaths", description="Disjoint and minimum-overlap shortest paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dsp2", help="decide whether disjoint shortest paths exist (directed)")
    _terminals(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_dsp2)

    p = sub.add_parser("min2dsp", help="least number of shared vertices over shortest-path pairs")
    _terminals(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_min2dsp)

    p = sub.add_parser("oracle", help="exhaustive answer by path enumeration (small graphs)")
    _terminals(p)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="path enumeration cap per pair")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded random graph")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--kind", choices=[DIRECTED, UNDIRECTED, "dag"], default=DIRECTED)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the acceptance suites at reduced size")
    p.add_argument("--scale", type=float, default=0.1, help="fraction of the full instance counts")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "s1"):
        args.terminals = (args.s1, args.t1, args.s2, args.t2)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except DSPError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if isinstance(exc, oracle.CapExceeded):
            print("hint: shrink the instance or raise --cap", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"time {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
