"""Compiled kernels against their uncompiled bodies and brute force."""

import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings

from conftest import graphs
from exclgraph import kernels
from exclgraph.graph import from_edge_list
from exclgraph._jit import JIT_ENABLED, py_func
from oracles import brute_alpha, brute_perfect


def masks(g):
    return np.array(g.adj, dtype=np.uint64)


def test_bit_helpers():
    assert int(kernels.popcount(np.uint64(0b1011))) == 3
    assert int(kernels.lowest_index(np.uint64(0b1000))) == 3
    assert int(kernels.full_mask(64)) == 2**64 - 1
    assert int(kernels.full_mask(5)) == 31


@given(graphs(min_n=1, max_n=11, weighted=True))
def test_branch_and_bound_compiled_vs_python(g):
    # the kernel expects vertices relabelled by nonincreasing weight
    order = sorted(range(g.n), key=lambda v: (-g.weights[v], v))
    pos = {v: i for i, v in enumerate(order)}
    g = from_edge_list(g.n, [(pos[i], pos[j]) for i, j in g.edges()], [g.weights[v] for v in order])
    w = np.array([int(x * 8) for x in g.weights], dtype=np.int64)
    v1, m1 = kernels.max_weight_stable_set(masks(g), w, g.n)
    v2, m2 = py_func(kernels.max_weight_stable_set)(masks(g), w, g.n)
    assert int(v1) == int(v2) and int(m1) == int(m2)
    assert int(v1) == brute_alpha(g.n, g.edges(), [int(x) for x in w])
    assert g.is_stable([v for v in range(g.n) if int(m1) >> v & 1])


@given(graphs(max_n=12))
def test_stable_set_table(g):
    table = kernels.stable_set_table(masks(g), g.n)
    assert table.shape == (2**g.n,)
    for m in range(0, 2**g.n, max(1, 2**g.n // 64)):
        vs = [v for v in range(g.n) if m >> v & 1]
        assert bool(table[m]) == g.is_stable(vs)
    assert np.array_equal(table, py_func(kernels.stable_set_table)(masks(g), g.n))


@given(graphs(max_n=8))
@settings(max_examples=40)
def test_odd_hole_search(g):
    mask, kind = kernels.find_odd_hole(masks(g), g.n)
    assert (int(kind) < 0) == brute_perfect(g.n, g.edges())
    if int(kind) >= 0:
        vs = [v for v in range(g.n) if int(mask) >> v & 1]
        assert len(vs) >= 5 and len(vs) % 2 == 1


def test_jit_flag_default():
    assert JIT_ENABLED == (os.environ.get("EXCLGRAPH_DISABLE_JIT", "") not in ("1", "true", "yes", "on"))


def test_fallback_path_gives_identical_reports():
    code = (
        "import json; from exclgraph._jit import JIT_ENABLED; from exclgraph import *;"
        "import numpy as np; rng = np.random.default_rng(7);"
        "gs = [random_graph(int(rng.integers(1, 10)), 0.5, rng) for _ in range(40)];"
        "print(json.dumps([JIT_ENABLED] + [[str(independence_number(g).value),"
        " independence_number(g).witness, is_perfect(g).witness, len(in_stab(g, [0] * g.n).certificate)]"
        " for g in gs]))"
    )
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, EXCLGRAPH_DISABLE_JIT=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(out.stdout)
    assert outs[0].startswith("[true") and outs[1].startswith("[false")
    assert outs[0].split(",", 1)[1] == outs[1].split(",", 1)[1]
