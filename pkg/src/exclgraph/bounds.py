"""Classical, quantum and exclusivity-principle bounds of a weighted graph.

* ``independence_number``      maximum weight of a stable set (exact)
* ``lovasz_theta``             Lovasz number, bracketed by certified bounds
* ``fractional_packing_number`` clique-constrained LP optimum (exact)

For every graph ``alpha <= theta <= alpha_star``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import kernels, lp
from .graph import VertexSet, VertexWeightedGraph, check_cap, enumerate_maximal_cliques
from .sdp import EntryConstraints, SolverNonConvergence, eig_margin, solve_with_fallback

DEFAULT_CAP = 64
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 500

_INT64_SAFE = 1 << 62


class OrderingViolation(RuntimeError):
    """alpha <= theta <= alpha_star failed beyond tolerance (a solver bug)."""


class StableSetResult(NamedTuple):
    value: Fraction
    witness: VertexSet


class PackingResult(NamedTuple):
    value: Fraction
    p: tuple[Fraction, ...]
    cliques: tuple[VertexSet, ...]
    cover: tuple[Fraction, ...]  # optimal dual: one weight per maximal clique


@dataclass
class ThetaResult:
    lower: float
    upper: float
    witness: np.ndarray  # trace-one PSD matrix vanishing on edges
    dual: np.ndarray  # edge multipliers of the dual certificate
    iterations: int
    refined: bool = False

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)


def _integer_weights(weights) -> tuple[list[int], int]:
    L = 1
    for w in weights:
        L = L * w.denominator // math.gcd(L, w.denominator)
    return [int(w * L) for w in weights], L


def independence_number(g: VertexWeightedGraph, cap: int = DEFAULT_CAP) -> StableSetResult:
    """Exact maximum-weight stable set by branch and bound."""
    check_cap("independence_number", g.n, min(cap, 64))
    if g.n == 0:
        return StableSetResult(Fraction(0), ())
    iw, L = _integer_weights(g.weights)
    order = sorted(range(g.n), key=lambda v: (-iw[v], v))
    pos = {v: i for i, v in enumerate(order)}
    adj = np.zeros(g.n, dtype=np.uint64)
    for i, v in enumerate(order):
        row = 0
        for u in g.neighbors(v):
            row |= 1 << pos[u]
        adj[i] = np.uint64(row)
    if sum(iw) < _INT64_SAFE:
        w = np.array([iw[v] for v in order], dtype=np.int64)
        value, mask = kernels.max_weight_stable_set(adj, w, g.n)
    else:
        # weights too large for int64: run the uncompiled body on Python ints
        w = np.array([iw[v] for v in order], dtype=object)
        value, mask = kernels.py_max_weight_stable_set(adj, w, g.n)
    mask = int(mask)
    witness = tuple(sorted(order[i] for i in range(g.n) if mask >> i & 1))
    return StableSetResult(Fraction(int(value), L), witness)


def fractional_packing_number(g: VertexWeightedGraph, cap: int = DEFAULT_CAP) -> PackingResult:
    """Exact optimum of ``max w.p`` s.t. ``p >= 0`` and ``sum_{i in C} p_i <= 1``
    for every maximal clique ``C``.
    """
    check_cap("fractional_packing_number", g.n, cap)
    if g.n == 0:
        return PackingResult(Fraction(0), (), (), ())
    cliques = enumerate_maximal_cliques(g)
    rows = []
    for C in cliques:
        row = [0] * g.n
        for v in C:
            row[v] = 1
        rows.append(row)
    res = lp.maximize(g.weights, rows, [1] * len(rows))
    if res.status != lp.OPTIMAL:  # pragma: no cover - bounded and feasible by construction
        raise RuntimeError(f"clique LP returned {res.status}")
    return PackingResult(res.value, tuple(res.x), tuple(cliques), tuple(res.duals_ub))


def theta_program(g: VertexWeightedGraph):
    """``(C, constraints, b, W)`` for  max <W, X>, tr X = 1, X_ij = 0 on edges, X PSD."""
    n = g.n
    sw = np.sqrt(g.weight_array())
    W = np.outer(sw, sw)
    entries = [[(i, i, 1.0) for i in range(n)]]
    entries += [[(i, j, 1.0), (j, i, 1.0)] for i, j in g.edges()]
    cons = EntryConstraints.from_lists(n, entries)
    b = np.zeros(cons.m)
    b[0] = 1.0
    return -W, cons, b, W


def lovasz_theta(
    g: VertexWeightedGraph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = DEFAULT_CAP,
) -> ThetaResult:
    """Lovasz number of ``(G, w)`` bracketed to within ``tol``.

    ``lower`` is the objective of an exactly feasible primal matrix and
    ``upper`` is ``lambda_max(W + sum_e y_e E_e)`` for the dual multipliers
    ``y``, which bounds theta from above for any ``y``.
    Raises ``SolverNonConvergence`` carrying the best bracket when the gap
    stays above ``tol``.
    """
    check_cap("lovasz_theta", g.n, cap)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = g.n
    if n == 0:
        return ThetaResult(0.0, 0.0, np.zeros((0, 0)), np.zeros(0), 0)
    C, cons, b, W = theta_program(g)
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    ei, ej = edges[:, 0], edges[:, 1]
    I = np.eye(n)

    def certify(X, y, Z):
        Xh = 0.5 * (X + X.T)
        Xh[ei, ej] = 0.0
        Xh[ej, ei] = 0.0
        Xh /= np.trace(Xh)
        lam = np.linalg.eigvalsh(Xh)[0]
        if lam < 0:
            Xh = (Xh - lam * I) / (1.0 - n * lam)
        lo = float(np.vdot(W, Xh))
        D = W.copy()
        D[ei, ej] += y[1:]
        D[ej, ei] += y[1:]
        hi = float(np.linalg.eigvalsh(D)[-1] + eig_margin(D))
        return lo, hi, Xh

    X0 = I / n
    y0 = np.zeros(cons.m)
    y0[0] = -(np.linalg.eigvalsh(W)[-1] + 1.0)
    res = solve_with_fallback(C, cons, b, X0, y0, certify, tol, max_iter)
    out = ThetaResult(res.lower, res.upper, res.witness, res.dual[1:], res.iterations, res.refined)
    if not res.converged:
        raise SolverNonConvergence("lovasz_theta", res.lower, res.upper, out)
    return out


@dataclass
class BoundsReport:
    alpha: Fraction
    alpha_witness: VertexSet
    theta_lower: float
    theta_upper: float
    theta_witness: np.ndarray
    alpha_star: Fraction
    alpha_star_witness: tuple[Fraction, ...]
    clique_cover: tuple[Fraction, ...] = ()

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "alpha_witness": list(self.alpha_witness),
            "theta": {"lower": self.theta_lower, "upper": self.theta_upper},
            "alpha_star": str(self.alpha_star),
            "alpha_star_witness": [str(p) for p in self.alpha_star_witness],
        }


def bounds_report(
    g: VertexWeightedGraph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = DEFAULT_CAP,
) -> BoundsReport:
    a = independence_number(g, cap)
    th = lovasz_theta(g, tol, max_iter, cap)
    fp = fractional_packing_number(g, cap)
    if float(a.value) > th.upper + tol or th.lower > float(fp.value) + tol:
        raise OrderingViolation(
            f"alpha={a.value} theta=[{th.lower}, {th.upper}] alpha_star={fp.value}"
        )
    return BoundsReport(a.value, a.witness, th.lower, th.upper, th.witness, fp.value, fp.p, fp.cover)
