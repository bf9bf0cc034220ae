"""Benchmark: compiled scan kernel vs the pure-Python twin.

The scan is the hot loop behind the brute-force oracle, which dominates the
differential test suites.  Three workload families:

  * independent-set instances (boolean domain, binary constraints),
  * three-valued cardinality instances,
  * near-unsatisfiable dense instances (worst-case backtracking).

Usage: python benchmarks/bench_scan.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from zcsp import kernel
from zcsp.catalog import r_biclique, r_independent_set
from zcsp.relations import Constraint, cc0_complete, instance, language


def independent_set_case(rng, n=22, k=7):
    g = cc0_complete(language([r_independent_set()]))
    rel = g.relation_named("R_IS")
    cons = [Constraint((u, v), rel)
            for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25]
    return instance(n, cons, k, g), None


def cardinality_case(rng, n=18, t=4):
    g = cc0_complete(language([r_biclique()]))
    rel = g.relation_named("R_BC")
    cons = [Constraint((u, v), rel)
            for u in range(n // 2) for v in range(n // 2, n) if rng.random() < 0.4]
    inst = instance(n, cons, 2 * t, g, {1: t, 2: t})
    counts = [0, t, t]
    return inst, counts


def dense_case(rng, n=24, k=8):
    # dense enough that no solution exists: the scan exhausts the whole
    # count-feasible space
    g = cc0_complete(language([r_independent_set()]))
    rel = g.relation_named("R_IS")
    cons = [Constraint((u, v), rel)
            for u in range(n) for v in range(u + 1, n) if rng.random() < 0.75]
    return instance(n, cons, k, g), None


def run(backend, prog, k, counts, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = backend.scan_first(prog, k, counts)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", kernel.load_backend("python"))]
    try:
        backends.append(("cython", kernel.load_backend("cython")))
    except ImportError:
        print("compiled kernel not built; benchmarking the pure backend only")

    rng = random.Random(2024)
    cases = [
        ("independent-set n=22 k=7", *independent_set_case(rng)),
        ("cardinality n=18 t=4", *cardinality_case(rng)),
        ("dense-unsat n=24 k=8", *dense_case(rng)),
    ]

    print(f"{'case':30} {'backend':8} {'seconds':>10} {'nodes':>12}")
    for label, inst, counts in cases:
        prog = kernel.prepare_program(inst)
        reference = None
        timings = {}
        for name, backend in backends:
            secs, (assignment, nodes) = run(backend, prog, inst.k, counts, args.repeat)
            timings[name] = secs
            if reference is None:
                reference = assignment
            elif assignment != reference:
                raise SystemExit(f"backends disagree on {label}")
            print(f"{label:30} {name:8} {secs:10.4f} {nodes:12d}")
        if len(timings) == 2:
            print(f"{'':30} {'speedup':8} {timings['python'] / timings['cython']:9.1f}x")


if __name__ == "__main__":
    main()
