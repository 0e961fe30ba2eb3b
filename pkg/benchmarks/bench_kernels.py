"""Benchmark the lattice-span hot kernel: numba backend vs numpy fallback.

Runs the same workloads in two fresh subprocesses, one with HOMSTAB_NUMBA=1
(jit kernels) and one with HOMSTAB_NUMBA=0 (pure-numpy fallback), and
prints a comparison table.  The workloads exercise span_columns /
LatticeSpan on the shapes that dominate verifier runs: boundary matrices
of bar complexes and random sparse integer columns.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def workloads():
    rng = random.Random(20260826)

    def random_sparse(dim, ncols, nnz):
        cols = []
        for _ in range(ncols):
            col = {}
            for _ in range(nnz):
                col[rng.randrange(dim)] = rng.choice((-1, 1))
            cols.append(col)
        return dim, cols

    yield "boundary-like 600x1800, nnz 4", random_sparse(600, 1800, 4)
    yield "boundary-like 1000x3000, nnz 3", random_sparse(1000, 3000, 3)

    from homstab.groups import symmetric_group
    from homstab.homology_engine import trivial_module, BarComplex, BarBudget
    bc = BarComplex(trivial_module(symmetric_group(5)), 2, BarBudget())
    d2 = bc.boundary(2)
    yield "bar d2 of S5 (trivial Z)", (d2.nrows,
                                       [dict(c) for c in d2.cols])


def run_workloads(repeat):
    from homstab.exact_linalg import span_columns
    from homstab import kernels

    out = {"backend": kernels.backend_name(), "cases": []}
    for name, (dim, cols) in workloads():
        best = None
        rank = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            sp = span_columns(cols, dim)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
            rank = sp.rank()
        out["cases"].append({"name": name, "rank": rank, "secs": best})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        json.dump(run_workloads(args.repeat), sys.stdout)
        return

    results = []
    for flag in ("1", "0"):
        env = dict(os.environ, HOMSTAB_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__),
             "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True)
        results.append(json.loads(proc.stdout))

    jit, plain = results
    width = max(len(c["name"]) for c in jit["cases"])
    print(f"{'workload':<{width}}  {'rank':>6}  {jit['backend']:>10}  "
          f"{plain['backend']:>10}  {'speedup':>8}")
    for a, b in zip(jit["cases"], plain["cases"]):
        assert a["name"] == b["name"] and a["rank"] == b["rank"], \
            "backends disagree on results"
        speed = b["secs"] / a["secs"] if a["secs"] else float("inf")
        print(f"{a['name']:<{width}}  {a['rank']:>6}  {a['secs']:>9.4f}s  "
              f"{b['secs']:>9.4f}s  {speed:>7.2f}x")


if __name__ == "__main__":
    main()
