"""Small dense semidefinite programs in standard form.

    minimise    <C, X>
    subject to  <A_k, X> = b_k   (k = 0..m-1)
                X PSD

with dual  maximise b.y  s.t.  Z = C - sum_k y_k A_k  PSD.

The solver is an infeasible primal-dual path-following method using the
HKM search direction and a Mehrotra predictor-corrector step. Constraint
matrices are sparse: each ``A_k`` is a handful of unit entries, which keeps
the Schur complement assembly at ``O(nnz^2)``.

Callers supply a ``certify`` callback mapping an iterate to rigorous
``(lower, upper)`` bounds on the quantity they care about; iteration stops
once the bracket is narrower than the requested tolerance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

log = logging.getLogger(__name__)

REFINE_MAX_N = 40


class SolverNonConvergence(RuntimeError):
    """The bracket did not close within the iteration budget."""

    def __init__(self, what: str, lower: float, upper: float, result=None):
        super().__init__(f"{what}: bracket [{lower:.9g}, {upper:.9g}] did not close")
        self.lower = lower
        self.upper = upper
        self.result = result


@dataclass
class EntryConstraints:
    """Constraint matrices listed by nonzero entries ``A_k[a, b] = v``.

    Symmetric matrices must list both ``(a, b)`` and ``(b, a)``.
    """

    n: int
    m: int
    k: np.ndarray
    a: np.ndarray
    b: np.ndarray
    v: np.ndarray
    _S: sp.csr_matrix = field(init=False, repr=False)

    def __post_init__(self):
        self.k = np.asarray(self.k, dtype=np.int64)
        self.a = np.asarray(self.a, dtype=np.int64)
        self.b = np.asarray(self.b, dtype=np.int64)
        self.v = np.asarray(self.v, dtype=float)
        T = len(self.k)
        self._S = sp.csr_matrix((self.v, (np.arange(T), self.k)), shape=(T, self.m))

    @classmethod
    def from_lists(cls, n: int, entries: list[list[tuple[int, int, float]]]) -> "EntryConstraints":
        ks, as_, bs, vs = [], [], [], []
        for k, ent in enumerate(entries):
            for a, b, v in ent:
                ks.append(k)
                as_.append(a)
                bs.append(b)
                vs.append(v)
        return cls(n, len(entries), np.array(ks), np.array(as_), np.array(bs), np.array(vs))

    def apply(self, X: np.ndarray) -> np.ndarray:
        return np.bincount(self.k, weights=self.v * X[self.b, self.a], minlength=self.m)

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        np.add.at(out, (self.a, self.b), self.v * y[self.k])
        return out

    def schur(self, X: np.ndarray, G: np.ndarray) -> np.ndarray:
        # M_kl = tr(A_k X A_l G)
        K = X[np.ix_(self.b, self.a)] * G[np.ix_(self.a, self.b)]
        M = self._S.T @ (self._S.T @ K.T).T
        return 0.5 * (M + M.T)


@dataclass
class SDPResult:
    X: np.ndarray
    y: np.ndarray
    Z: np.ndarray
    lower: float
    upper: float
    witness: np.ndarray | None
    dual: np.ndarray | None
    iterations: int
    converged: bool
    refined: bool = False

    @property
    def gap(self) -> float:
        return self.upper - self.lower


Certify = Callable[[np.ndarray, np.ndarray, np.ndarray], tuple[float, float, np.ndarray]]


def _sym(A):
    return 0.5 * (A + A.T)


def _max_step(L: np.ndarray, D: np.ndarray) -> float:
    # largest alpha with L L^T + alpha D PSD
    Li = sla.solve_triangular(L, np.eye(L.shape[0]), lower=True)
    lam = np.linalg.eigvalsh(_sym(Li @ D @ Li.T))[0]
    return np.inf if lam >= 0 else -1.0 / lam


class _Tracker:
    def __init__(self, certify: Certify):
        self.certify = certify
        self.lower = -np.inf
        self.upper = np.inf
        self.witness = None
        self.dual = None

    def update(self, X, y, Z) -> None:
        lo, hi, wit = self.certify(X, y, Z)
        if lo > self.lower:
            self.lower, self.witness = lo, wit
        if hi < self.upper:
            self.upper, self.dual = hi, y.copy()


def solve(
    C: np.ndarray,
    cons: EntryConstraints,
    b: np.ndarray,
    X0: np.ndarray,
    y0: np.ndarray,
    certify: Certify,
    tol: float,
    max_iter: int = 500,
    gamma: float = 0.95,
) -> SDPResult:
    """Primal-dual interior point from a strictly positive-definite start."""
    n = C.shape[0]
    X = X0.copy()
    y = y0.copy()
    Z = _sym(C - cons.adjoint(y))
    track = _Tracker(certify)
    it = 0
    stalls = 0
    for it in range(1, max_iter + 1):
        track.update(X, y, Z)
        if track.upper - track.lower <= tol:
            break
        Rp = b - cons.apply(X)
        Rd = _sym(C - Z - cons.adjoint(y))
        mu = np.vdot(X, Z) / n
        try:
            LX = np.linalg.cholesky(X)
            LZ = np.linalg.cholesky(Z)
            G = sla.cho_solve((LZ, True), np.eye(n))
            G = _sym(G)
            M = cons.schur(X, G)
            Mf = sla.cho_factor(M)
        except (np.linalg.LinAlgError, sla.LinAlgError):
            log.debug("factorisation failed at iteration %d", it)
            break
        XRdG = X @ Rd @ G
        base = Rp + cons.apply(XRdG)

        def direction(smu, corr):
            H = smu * G - X
            if corr is not None:
                H = H - corr
            dy = sla.cho_solve(Mf, base - cons.apply(H))
            dZ = _sym(Rd - cons.adjoint(dy))
            dX = _sym(H - X @ dZ @ G)
            return dX, dy, dZ

        dX, dy, dZ = direction(0.0, None)
        ap = min(1.0, _max_step(LX, dX))
        ad = min(1.0, _max_step(LZ, dZ))
        mu_aff = np.vdot(X + ap * dX, Z + ad * dZ) / n
        sigma = min(1.0, max(0.0, mu_aff / mu) ** 3) if mu > 0 else 0.0
        dX, dy, dZ = direction(sigma * mu, dX @ dZ @ G)
        ap = min(1.0, gamma * _max_step(LX, dX))
        ad = min(1.0, gamma * _max_step(LZ, dZ))
        X = _sym(X + ap * dX)
        y = y + ad * dy
        Z = _sym(Z + ad * dZ)
        stalls = stalls + 1 if max(ap, ad) < 1e-9 else 0
        if stalls >= 3:
            log.debug("step lengths collapsed at iteration %d", it)
            break
    else:
        track.update(X, y, Z)
    converged = track.upper - track.lower <= tol
    return SDPResult(X, y, Z, track.lower, track.upper, track.witness, track.dual, it, converged)


def refine_kkt(
    C: np.ndarray,
    cons: EntryConstraints,
    b: np.ndarray,
    result: SDPResult,
    certify: Certify,
    tol: float,
    iters: int = 200,
) -> SDPResult:
    """Alternating projections onto the optimality conditions.

    Alternates between the affine set {A(X) = b, A*(y) + Z = C,
    <C, X> = b.y} and the cone {X PSD, Z PSD}, starting from the solver's
    last iterate. Only the certified bounds are trusted, so the bracket can
    only tighten.
    """
    n, m = C.shape[0], cons.m
    iu = np.triu_indices(n)
    scale = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))
    N = len(iu[0])

    def svec(A):
        return A[iu] * scale

    def smat(v):
        A = np.zeros((n, n))
        A[iu] = v / scale
        return A + np.triu(A, 1).T

    Acols = np.array([svec(_sym(cons.adjoint(np.eye(m)[k]))) for k in range(m)])  # m x N
    rows = []
    rhs = []
    # A(X) = b
    rows.append(np.hstack([Acols, np.zeros((m, m)), np.zeros((m, N))]))
    rhs.append(b)
    # svec(A*(y)) + svec(Z) = svec(C)
    rows.append(np.hstack([np.zeros((N, N)), Acols.T, np.eye(N)]))
    rhs.append(svec(C))
    # <C, X> - b.y = 0
    rows.append(np.hstack([svec(C), -b, np.zeros(N)])[None, :])
    rhs.append(np.zeros(1))
    Lop = np.vstack(rows)
    r = np.concatenate(rhs)
    Lpinv = np.linalg.pinv(Lop)

    track = _Tracker(certify)
    track.lower, track.upper = result.lower, result.upper
    track.witness, track.dual = result.witness, result.dual
    v = np.concatenate([svec(result.X), result.y, svec(result.Z)])
    for _ in range(iters):
        v = v - Lpinv @ (Lop @ v - r)
        X = smat(v[:N])
        y = v[N : N + m]
        Z = smat(v[N + m :])
        track.update(X, y, Z)
        if track.upper - track.lower <= tol:
            break
        w, V = np.linalg.eigh(X)
        X = (V * np.clip(w, 0, None)) @ V.T
        w, V = np.linalg.eigh(Z)
        Z = (V * np.clip(w, 0, None)) @ V.T
        v = np.concatenate([svec(X), y, svec(Z)])
    return SDPResult(
        X,
        y,
        Z,
        track.lower,
        track.upper,
        track.witness,
        track.dual,
        result.iterations,
        track.upper - track.lower <= tol,
        refined=True,
    )


def solve_with_fallback(C, cons, b, X0, y0, certify, tol, max_iter=500) -> SDPResult:
    res = solve(C, cons, b, X0, y0, certify, tol, max_iter)
    if not res.converged and C.shape[0] <= REFINE_MAX_N:
        log.info("interior point stopped with gap %.3g; refining", res.gap)
        res = refine_kkt(C, cons, b, res, certify, tol)
    return res


def eig_margin(A: np.ndarray) -> float:
    """Slack covering the backward error of a symmetric eigensolve on ``A``."""
    n = max(A.shape[0], 1)
    return 16.0 * n * np.finfo(float).eps * max(np.linalg.norm(A), 1.0)
