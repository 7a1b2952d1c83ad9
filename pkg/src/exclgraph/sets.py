"""Membership in STAB(G) <= TH(G) <= QSTAB(G) and perfectness.

STAB(G) is the convex hull of stable labelings (classical assignments),
TH(G) the theta body (quantum assignments) and QSTAB(G) the
clique-constrained polytope (assignments obeying the exclusivity
principle). The three coincide exactly when G is perfect.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels, lp
from .bounds import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    fractional_packing_number,
    independence_number,
    lovasz_theta,
)
from .graph import (
    VertexSet,
    VertexWeightedGraph,
    check_cap,
    enumerate_maximal_cliques,
    to_fraction,
)
from .sdp import EntryConstraints, eig_margin, solve_with_fallback

STAB_CAP = 20
PERFECT_CAP = 18
RESULT3_CAP = 14
QSTAB_BAND = Fraction(1, 10**12)

STAB, TH, QSTAB = "STAB", "TH", "QSTAB"


class AssignmentError(ValueError):
    """Probability vector of the wrong length or with a negative entry."""


@dataclass
class MembershipVerdict:
    body: str
    inside: bool | None  # None: the solver could not decide
    boundary: bool = False
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "body": self.body,
            "inside": self.inside,
            "boundary": self.boundary,
            "certificate": self.certificate,
        }


def probability_assignment(g: VertexWeightedGraph, p: Sequence) -> tuple[Fraction, ...]:
    """Validate ``p`` against ``g`` and convert it exactly to rationals."""
    if len(p) != g.n:
        raise AssignmentError(f"assignment has {len(p)} entries, graph has {g.n} vertices")
    try:
        q = tuple(to_fraction(x) for x in p)
    except ValueError as exc:
        raise AssignmentError(str(exc)) from None
    for i, x in enumerate(q):
        if x < 0:
            raise AssignmentError(f"entry {i} is negative: {x}")
    return q


def in_qstab(g: VertexWeightedGraph, p: Sequence) -> MembershipVerdict:
    """Exact check of every maximal-clique constraint ``sum_C p <= 1``."""
    q = probability_assignment(g, p)
    worst, worst_clique = Fraction(0), ()
    for C in enumerate_maximal_cliques(g):
        s = sum((q[v] for v in C), Fraction(0))
        if s > worst:
            worst, worst_clique = s, C
    inside = worst <= 1 + QSTAB_BAND
    boundary = abs(worst - 1) <= QSTAB_BAND
    if inside:
        cert = {"max_clique_sum": str(worst), "clique": list(worst_clique)}
    else:
        cert = {"violated_clique": list(worst_clique), "sum": str(worst)}
    return MembershipVerdict(QSTAB, inside, boundary, cert)


def stable_sets(g: VertexWeightedGraph, cap: int = STAB_CAP) -> list[VertexSet]:
    """All nonempty stable sets, ordered by their bitmask value."""
    check_cap("stable_sets", g.n, cap)
    table = kernels.stable_set_table(g.masks_u64(), g.n)
    out = []
    for m in np.flatnonzero(table)[1:]:
        m = int(m)
        out.append(tuple(v for v in range(g.n) if m >> v & 1))
    return out


def in_stab(g: VertexWeightedGraph, p: Sequence, cap: int = STAB_CAP) -> MembershipVerdict:
    """Exact LP feasibility: is ``p`` a convex combination of stable labelings?

    Inside: the combination itself. Outside: weights ``w >= 0`` and a bound
    ``t`` with ``w.x <= t`` for every stable labeling ``x`` but ``w.p > t``.
    """
    q = probability_assignment(g, p)
    sets = stable_sets(g, cap)
    ncols = len(sets)
    A_eq = [[1 if i in S else 0 for S in sets] for i in range(g.n)]
    res = lp.maximize([0] * ncols, [[1] * ncols], [1], A_eq, list(q))
    if res.status == lp.OPTIMAL:
        combo = [(lam, S) for lam, S in zip(res.x, sets) if lam]
        empty = 1 - sum((lam for lam, _ in combo), Fraction(0))
        cert = {
            "combination": [{"weight": str(lam), "stable_set": list(S)} for lam, S in combo],
            "empty_set_weight": str(empty),
        }
        return MembershipVerdict(STAB, True, False, cert)
    t = res.farkas_ub[0]
    w = [max(-u, Fraction(0)) for u in res.farkas_eq]
    cert = {"weights": [str(x) for x in w], "bound": str(t), "value": str(sum(a * b for a, b in zip(w, q)))}
    return MembershipVerdict(STAB, False, False, cert)


def theta_body_program(g: VertexWeightedGraph, p: Sequence[float]):
    """Moment-matrix program: maximise the least eigenvalue ``t`` of

        M = [[1, p^T], [p, M']],  diag(M') = p,  M'_ij = 0 on edges

    over the free entries of ``M'``. Written for ``Y = M - tI`` as
    ``min Y_00`` in standard form, so ``t = 1 - Y_00``.
    """
    n = g.n
    N = n + 1
    entries = []
    b = []
    for i in range(1, N):
        entries.append([(0, i, 1.0), (i, 0, 1.0)])
        b.append(2.0 * p[i - 1])
    for i in range(1, N):
        entries.append([(0, 0, 1.0), (i, i, -1.0)])
        b.append(1.0 - p[i - 1])
    for i, j in g.edges():
        entries.append([(i + 1, j + 1, 1.0), (j + 1, i + 1, 1.0)])
        b.append(0.0)
    cons = EntryConstraints.from_lists(N, entries)
    C = np.zeros((N, N))
    C[0, 0] = 1.0
    return C, cons, np.array(b)


def moment_matrix(g: VertexWeightedGraph, p: Sequence[float], free: np.ndarray | None = None) -> np.ndarray:
    """``M`` with the fixed entries from ``p``; off-diagonal non-edge entries
    of the ``p``-block come from ``free`` (zero when omitted)."""
    n = g.n
    M = np.zeros((n + 1, n + 1))
    if free is not None:
        M[1:, 1:] = 0.5 * (free[1:, 1:] + free[1:, 1:].T)
    A = g.adjacency_matrix()
    M[1:, 1:][A] = 0.0
    M[0, 0] = 1.0
    M[0, 1:] = M[1:, 0] = p
    M[np.arange(1, n + 1), np.arange(1, n + 1)] = p
    return M


def in_th(
    g: VertexWeightedGraph,
    p: Sequence,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MembershipVerdict:
    """Theta-body membership through moment-matrix feasibility.

    The certified slack ``t`` (least eigenvalue of the best moment matrix)
    is bracketed; ``p`` is inside when ``t >= -tol``. Inside certificates
    carry the PSD moment matrix, outside ones the dual multipliers and the
    bound ``t <= t_upper < -tol`` they imply.
    """
    q = probability_assignment(g, p)
    pf = np.array([float(x) for x in q])
    n = g.n
    N = n + 1
    C, cons, b = theta_body_program(g, pf)
    M0 = moment_matrix(g, pf)
    t0 = np.linalg.eigvalsh(M0)[0] - 1.0
    Y0 = M0 - t0 * np.eye(N)
    y0 = np.zeros(cons.m)
    y0[n : 2 * n] = 1.0 / (2 * max(n, 1))
    psum = float(pf.sum())

    def certify(Y, y, Z):
        Mh = moment_matrix(g, pf, Y)
        t_lo = float(np.linalg.eigvalsh(Mh)[0] - eig_margin(Mh))
        Zc = C - cons.adjoint(y)
        Zc = 0.5 * (Zc + Zc.T)
        lamZ = float(np.linalg.eigvalsh(Zc)[0] - eig_margin(Zc))
        trace_bound = 1.0 + psum - N * t_lo
        t_hi = 1.0 - (float(b @ y) + min(0.0, lamZ) * trace_bound)
        return t_lo, min(t_hi, 1.0), Mh

    res = solve_with_fallback(C, cons, b, Y0, y0, certify, tol / 2, max_iter)
    t_lo, t_hi = res.lower, res.upper
    diag = {"t_lower": t_lo, "t_upper": t_hi, "iterations": res.iterations}
    if t_lo >= -tol:
        cert = dict(diag, moment_matrix=res.witness.tolist())
        return MembershipVerdict(TH, True, t_lo <= tol, cert)
    if t_hi < -tol:
        cert = dict(diag, dual=res.dual.tolist())
        return MembershipVerdict(TH, False, False, cert)
    if res.converged:
        cert = dict(diag, moment_matrix=res.witness.tolist())
        return MembershipVerdict(TH, True, True, cert)
    return MembershipVerdict(TH, None, False, dict(diag, status="indeterminate"))


# -- perfectness ----------------------------------------------------------------


class PerfectResult(NamedTuple):
    perfect: bool
    witness: VertexSet | None
    kind: str | None  # "hole" or "antihole"


def is_perfect(g: VertexWeightedGraph, cap: int = PERFECT_CAP) -> PerfectResult:
    """No induced odd hole or odd antihole of length >= 5.

    Exhaustive search over odd vertex subsets; the witness is the smallest
    such subset (ties: smallest bitmask).
    """
    check_cap("is_perfect", g.n, cap)
    if g.n < 5:
        return PerfectResult(True, None, None)
    mask, kind = kernels.find_odd_hole(g.masks_u64(), g.n)
    if kind < 0:
        return PerfectResult(True, None, None)
    mask = int(mask)
    witness = tuple(v for v in range(g.n) if mask >> v & 1)
    return PerfectResult(False, witness, "hole" if kind == 0 else "antihole")


def random_weights(n: int, rng: np.random.Generator) -> list[Fraction]:
    """Rational weights ``k/8`` drawn uniformly from ``[1, 5]``."""
    return [Fraction(int(k), 8) for k in rng.integers(8, 41, size=n)]


def result3_check(
    g: VertexWeightedGraph,
    tol: float = DEFAULT_TOL,
    directions: int = 200,
    seed: int = 0,
    cap: int = RESULT3_CAP,
) -> bool:
    """Does the computed collapse of the three bounds match perfectness?

    Perfect graphs must give ``alpha = theta = alpha_star`` (within ``tol``)
    for unit weights and for every random positive weighting; imperfect
    graphs must show a strict gap beyond ``tol`` for at least one of them.
    """
    check_cap("result3_check", g.n, cap)
    perfect = is_perfect(g).perfect
    rng = np.random.default_rng(seed)
    weightings = [None] + [random_weights(g.n, rng) for _ in range(directions)]
    for w in weightings:
        h = g if w is None else g.with_weights(w)
        a = independence_number(h).value
        th = lovasz_theta(h, tol)
        s = fractional_packing_number(h).value
        separated = float(a) < th.lower - tol or th.upper + tol < float(s)
        if perfect:
            collapsed = a == s and th.lower - tol <= float(a) <= th.upper + tol
            if not collapsed:
                return False
        elif separated:
            return True
    return perfect
