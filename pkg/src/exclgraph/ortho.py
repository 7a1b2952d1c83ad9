"""Orthonormal representations with a handle.

Vectors ``v_i`` form an orthonormal representation of the complement of G:
``<v_i, v_j> = 0`` whenever ``ij`` is an edge of G. With a unit handle
``psi`` the quantum probabilities are ``p_i = <psi, v_i>^2`` and their
weighted sum never exceeds the Lovasz number of ``(G, w)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg as sla

from .graph import VertexWeightedGraph

DEGENERATE_NORM2 = 1e-12


class Violation(NamedTuple):
    kind: str  # "orthogonality", "norm" or "handle"
    i: int
    j: int
    value: float


@dataclass(frozen=True)
class OrthonormalRepresentation:
    handle: np.ndarray  # shape (d,)
    vectors: np.ndarray  # shape (n, d)
    degenerate: tuple[int, ...] = ()  # vertices given an arbitrary admissible vector

    @property
    def dim(self) -> int:
        return self.handle.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "handle": [float(x) for x in self.handle],
            "vectors": [[float(x) for x in v] for v in self.vectors],
        }

    @classmethod
    def from_json(cls, obj) -> "OrthonormalRepresentation":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            d = int(obj["dim"])
            handle = np.asarray(obj["handle"], dtype=float)
            vectors = np.asarray(obj["vectors"], dtype=float).reshape(-1, d) if obj["vectors"] else np.zeros((0, d))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"OR JSON schema violation: {exc}") from None
        if handle.shape != (d,):
            raise ValueError(f"handle has length {handle.shape}, expected {d}")
        return cls(handle, vectors)


def verify_or(
    g: VertexWeightedGraph, rep: OrthonormalRepresentation, tol: float = 1e-9
) -> tuple[bool, list[Violation]]:
    """Unit norms and orthogonality on every edge of ``g``, within ``tol``."""
    if rep.n != g.n:
        raise ValueError(f"representation has {rep.n} vectors, graph has {g.n} vertices")
    if rep.vectors.ndim != 2 or rep.vectors.shape[1] != rep.dim:
        raise ValueError("vector dimension does not match handle dimension")
    out = []
    h = float(np.linalg.norm(rep.handle))
    if abs(h - 1.0) > tol:
        out.append(Violation("handle", -1, -1, h))
    norms = np.linalg.norm(rep.vectors, axis=1)
    for i, nv in enumerate(norms):
        if abs(nv - 1.0) > tol:
            out.append(Violation("norm", i, i, float(nv)))
    for i, j in g.edges():
        ip = float(rep.vectors[i] @ rep.vectors[j])
        if abs(ip) > tol:
            out.append(Violation("orthogonality", i, j, ip))
    return not out, out


def quantum_assignment(rep: OrthonormalRepresentation) -> np.ndarray:
    """Squared handle projections ``p_i = <psi, v_i>^2``."""
    return (rep.vectors @ rep.handle) ** 2


def or_value(rep: OrthonormalRepresentation, weights: Sequence) -> float:
    w = np.array([float(x) for x in weights])
    if w.shape[0] != rep.n:
        raise ValueError(f"{w.shape[0]} weights for {rep.n} vectors")
    return float(w @ quantum_assignment(rep))


def umbrella_or(n: int) -> OrthonormalRepresentation:
    """Three-dimensional umbrella for the odd cycle ``C_n``.

    Handle ``(0, 0, 1)``; rib ``i`` sits at azimuth ``2*pi*i*k/n`` with
    ``k = (n - 1) / 2`` so consecutive ribs are almost opposite, and the
    common height ``c`` is chosen to make them orthogonal.
    """
    if not isinstance(n, int) or n < 5 or n % 2 == 0:
        raise ValueError(f"umbrella needs odd n >= 5, got {n!r}")
    cos_pi_n = math.cos(math.pi / n)
    c = math.sqrt(cos_pi_n / (1.0 + cos_pi_n))
    s = math.sqrt(1.0 - c * c)
    k = (n - 1) // 2
    ang = 2.0 * np.pi * np.arange(n) * k / n
    vectors = np.column_stack([s * np.cos(ang), s * np.sin(ang), np.full(n, c)])
    return OrthonormalRepresentation(np.array([0.0, 0.0, 1.0]), vectors)


def _orthogonalize(vectors: np.ndarray, g: VertexWeightedGraph, active: np.ndarray, sweeps: int = 20) -> None:
    # project each active vector off the span of its active neighbours
    for _ in range(sweeps):
        worst = 0.0
        for i in np.flatnonzero(active):
            nb = [j for j in g.neighbors(i) if active[j]]
            if not nb:
                continue
            B = vectors[nb]
            ip = np.abs(B @ vectors[i]).max()
            worst = max(worst, ip)
            if ip <= 1e-14:
                continue
            Q = sla.orth(B.T)
            v = vectors[i] - Q @ (Q.T @ vectors[i])
            nv = np.linalg.norm(v)
            if nv < 1e-8:
                active[i] = False
                continue
            vectors[i] = v / nv
        if worst <= 1e-14:
            return


def or_from_theta_witness(
    g: VertexWeightedGraph, witness: np.ndarray, tol: float = 1e-6
) -> OrthonormalRepresentation:
    """Factor an optimal theta matrix ``X = U U^T`` into vectors plus a handle.

    Rows ``u_i`` of ``U`` are orthogonal on edges because ``X`` vanishes
    there; ``v_i = u_i / |u_i|`` and ``psi`` is the normalised
    ``sum_i sqrt(w_i) u_i``. Cauchy-Schwarz then gives an OR value of at
    least ``<W, X>``. Vertices with ``u_i ~ 0`` get a unit vector orthogonal
    to their neighbours, adding a dimension when none is left.
    """
    n = g.n
    X = 0.5 * (np.asarray(witness, dtype=float) + np.asarray(witness, dtype=float).T)
    if X.shape != (n, n):
        raise ValueError(f"witness has shape {X.shape}, expected {(n, n)}")
    if n == 0:
        return OrthonormalRepresentation(np.array([1.0]), np.zeros((0, 1)))
    lam, V = np.linalg.eigh(X)
    if lam[-1] <= 0:
        raise ValueError(f"witness is not positive semidefinite with positive trace (rank diagnostics: eigenvalues {lam})")
    keep = lam > lam[-1] * 1e-13
    U = V[:, keep] * np.sqrt(lam[keep])
    sw = np.sqrt(g.weight_array())
    h = sw @ U
    hn = np.linalg.norm(h)
    if hn == 0:
        raise ValueError("witness has zero objective; no handle can be extracted")
    psi = h / hn
    norms2 = (U * U).sum(axis=1)
    active = norms2 > DEGENERATE_NORM2 * max(norms2.max(), 1.0)
    vectors = np.zeros_like(U)
    vectors[active] = U[active] / np.sqrt(norms2[active])[:, None]
    _orthogonalize(vectors, g, active)

    degenerate = [int(i) for i in np.flatnonzero(~active)]
    for i in degenerate:
        nb = [j for j in g.neighbors(i) if active[j]]
        basis = sla.null_space(vectors[nb]) if nb else np.eye(vectors.shape[1])
        if basis.shape[1] == 0:
            vectors = np.hstack([vectors, np.zeros((n, 1))])
            psi = np.append(psi, 0.0)
            v = np.zeros(vectors.shape[1])
            v[-1] = 1.0
        else:
            proj = basis @ (basis.T @ psi)
            pn = np.linalg.norm(proj)
            v = proj / pn if pn > 1e-12 else basis[:, 0]
        vectors[i] = v
        active[i] = True
    return OrthonormalRepresentation(psi, vectors, tuple(degenerate))
