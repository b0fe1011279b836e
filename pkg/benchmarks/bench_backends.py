"""Time the numba kernels against the pure-Python fallback.

Each backend runs in its own subprocess, since the backend is fixed at import
time by DSPATHS_DISABLE_NUMBA.  Every operation is called once to warm up
and then timed over a few repeats.  The warm-up column is the extra cost of
that first numba call; kernels are cached on disk, so it only shows real
compile time on a fresh checkout.

    python benchmarks/bench_backends.py [--repeats 3] [--size 1.0]
"""
import argparse
import json
import os
import subprocess
import sys
import time


def _cases(size):
    import numpy as np

    from dspaths import gf2
    from dspaths.dominators import build
    from dspaths.dsp2 import decide
    from dspaths.enum_poly import EdgeAssignment, FTable
    from dspaths.graph import WeightedGraph, gen_local_dag, gen_random
    from dspaths.min2dsp_dag import solve_dag
    from dspaths.min2dsp_undirected import solve_undirected
    from dspaths.shortest_paths import Distances, TightDag, topological_order

    n = max(200, int(20_000 * size))
    rng = np.random.default_rng(0)
    a = rng.integers(0, 1 << 64, size=20_000, dtype=np.uint64)
    b = rng.integers(0, 1 << 64, size=20_000, dtype=np.uint64)

    def field_products():
        acc = np.uint64(0)
        for x, y in zip(a, b):
            acc ^= gf2.gf_mul(x, y)
        return int(acc)

    sparse = gen_random(n, 3 * n, (1, 100), "directed", 1)

    def dijkstra_rows():
        D = Distances(sparse)
        for x in range(20):
            D.row(x)
        return int(D.row(0)[1] % 1000)

    def f_rows():
        D = Distances(sparse)
        F = FTable(sparse, D, EdgeAssignment(sparse, 1))
        for x in range(10):
            F.row(x)
        return int(F.row(0)[1] % 1000)

    def dominator_trees():
        D = Distances(sparse)
        return int(sum(int(build(TightDag(sparse, D, x)).depth[0]) for x in range(10)))

    small = gen_random(2000, 10_000, (1, 100), "directed", 13)

    def decide_2000():
        return bool(decide(small, 0, 1, 2, 3)) if Distances(small).dist(0, 1) < (1 << 62) else None

    dag = gen_local_dag(n, 3 * n, (1, 100), 6, 13)
    order = topological_order(dag.n, dag.tails, dag.heads)
    qd = tuple(int(order[i]) for i in (0, -1, 3, -5))

    def dag_corridor():
        return solve_dag(dag, *qd)[0]

    und = WeightedGraph("undirected", dag.n, dag.tails, dag.heads, dag.weights)

    def undirected_corridor():
        return solve_undirected(und, *qd)[0]

    return [
        ("gf2 mul x20000 (scalar loop)", field_products),
        (f"dijkstra 20 rows (n={n})", dijkstra_rows),
        (f"F rows x10 (n={n})", f_rows),
        (f"dominator trees x10 (n={n})", dominator_trees),
        ("decide (n=2000, m=10000)", decide_2000),
        (f"solve_dag corridor (n={n})", dag_corridor),
        (f"solve_undirected corridor (n={n})", undirected_corridor),
    ]


def worker(repeats, size):
    from dspaths._accel import backend_name

    out = {"backend": backend_name(), "rows": []}
    for label, fn in _cases(size):
        t = time.perf_counter()
        result = fn()
        first = time.perf_counter() - t
        times = []
        for _ in range(repeats):
            t = time.perf_counter()
            again = fn()
            times.append(time.perf_counter() - t)
            assert again == result, label
        out["rows"].append({"label": label, "first": first, "best": min(times), "result": repr(result)})
    print(json.dumps(out))


def run(disable, repeats, size):
    env = dict(os.environ)
    env.pop("DSPATHS_DISABLE_NUMBA", None)
    if disable:
        env["DSPATHS_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, __file__, "--worker", "--repeats", str(repeats),
                           "--size", str(size)], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--size", type=float, default=1.0, help="scale factor for graph sizes")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeats, args.size)
        return
    fast = run(False, args.repeats, args.size)
    slow = run(True, args.repeats, args.size)
    print(f"backends: {fast['backend']} vs {slow['backend']} (best of {args.repeats}, seconds)")
    print(f"{'operation':38} {'numba':>9} {'warm-up':>9} {'fallback':>9} {'speedup':>8}")
    for f, s in zip(fast["rows"], slow["rows"]):
        assert f["result"] == s["result"], f"backends disagree on {f['label']}"
        speedup = s["best"] / f["best"] if f["best"] > 0 else float("inf")
        compile_s = max(0.0, f["first"] - f["best"])
        print(f"{f['label']:38} {f['best']:9.3f} {compile_s:9.2f} {s['best']:9.3f} {speedup:7.1f}x")


if __name__ == "__main__":
    main()
