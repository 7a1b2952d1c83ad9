"""Compare the numba kernels with the pure-numpy fallback.

Each mode runs in its own interpreter because the switch is read at import
time. Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from exclgraph.bounds import independence_number
from exclgraph.graph import cycle_graph, from_edge_list
from exclgraph.sets import is_perfect, stable_sets

repeat, seed = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(seed)

def rand(n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edge_list(n, edges, [int(k) for k in rng.integers(1, 6, size=n)])

cases = {
    "branch_and_bound (n=40, p=0.3)": (lambda g: independence_number(g), [rand(40, 0.3) for _ in range(5)]),
    "stable_set_table (n=18, p=0.3)": (lambda g: stable_sets(g), [rand(18, 0.3) for _ in range(5)]),
    "odd_hole_search (n=14, p=0.4)": (lambda g: is_perfect(g), [rand(14, 0.4) for _ in range(5)]),
}
# compile (or load from cache) before timing
independence_number(cycle_graph(5)); stable_sets(cycle_graph(5)); is_perfect(cycle_graph(5))
out = {}
for name, (fn, graphs) in cases.items():
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for g in graphs:
            fn(g)
        best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps(out))
"""


def run(disable, repeat, seed):
    env = dict(os.environ, EXCLGRAPH_DISABLE_JIT="1" if disable else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat), str(seed)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    jit = run(False, args.repeat, args.seed)
    plain = run(True, args.repeat, args.seed)
    print(f"{'kernel':34s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}")
    for name in jit:
        print(f"{name:34s} {jit[name]:10.4f} {plain[name]:10.4f} {plain[name] / jit[name]:8.1f}x")


if __name__ == "__main__":
    main()
