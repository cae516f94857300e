"""Compiled vs pure-Python kernels on the hot paths.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each case runs on both backends and checks that they return identical
results. Compiled times are the best of ``--repeat`` runs; the slower
pure-Python kernels run once.
"""

import argparse
import sys
import time

import numpy as np

from satchoice import _backend
from satchoice.analysis import critical_alpha
from satchoice.choice import GenConfig, generate, reduce_formula
from satchoice.exact import ImplicationGraph, dpll_sat
from satchoice.heuristics import run_heuristic


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(quick):
    scale = 10 if quick else 1
    f_heur = generate(GenConfig(n=30_000 // scale, k=3, t=2, seed=1, alpha=4.0))
    f_2sat = reduce_formula(generate(GenConfig(n=100_000 // scale, k=3, t=3, seed=2, alpha=4.5)), 2,
                            np.random.default_rng(0))
    graph = ImplicationGraph.from_formula(f_2sat)
    f_dpll = generate(GenConfig(n=100 if quick else 150, k=3, t=1, seed=3, alpha=4.2))

    def heur(be):
        r = run_heuristic(f_heur, "bsc", 7, trace=True, backend=be)
        return r.outcome, r.step, r.assignment.tobytes()

    def scc(be):
        comp, ncomp = graph.components(be)
        return ncomp, comp.tobytes()

    def dpll(be):
        r = dpll_sat(f_dpll, backend=be)
        return r.status, r.nodes

    def ode(be):
        return critical_alpha("bsc", 3, 2, step=1e-3 if quick else 1e-4, backend=be).alpha_star

    return [
        (f"BSC heuristic, n={f_heur.n}, m={f_heur.m}", heur),
        (f"Tarjan SCC, {graph.num_nodes} nodes, {graph.indices.size} edges", scc),
        (f"DPLL, n={f_dpll.n}, alpha=4.2", dpll),
        ("BSC critical density (RK4 + bisection)", ode),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    try:
        _backend.get("cython")
    except ImportError:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'case':<52} {'cython':>10} {'python':>10} {'speedup':>8}")
    for name, fn in cases(args.quick):
        tc, rc = best_time(lambda: fn("cython"), args.repeat)
        tp, rp = best_time(lambda: fn("python"), 1)
        if rc != rp:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<52} {tc:>9.4f}s {tp:>9.3f}s {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
