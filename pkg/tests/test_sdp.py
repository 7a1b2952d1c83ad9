import numpy as np
import pytest

from exclgraph.bounds import theta_program
from exclgraph.graph import cycle_graph
from exclgraph.sdp import EntryConstraints, eig_margin, refine_kkt, solve, solve_with_fallback


def random_constraints(rng, n, m):
    entries = []
    for _ in range(m):
        k = int(rng.integers(1, 4))
        ent = []
        for _ in range(k):
            a, b = (int(x) for x in rng.integers(0, n, size=2))
            v = float(rng.normal())
            ent.append((a, b, v))
            if a != b:
                ent.append((b, a, v))
        entries.append(ent)
    return EntryConstraints.from_lists(n, entries)


def dense(cons):
    mats = []
    for k in range(cons.m):
        A = np.zeros((cons.n, cons.n))
        sel = cons.k == k
        np.add.at(A, (cons.a[sel], cons.b[sel]), cons.v[sel])
        mats.append(A)
    return mats


def test_apply_adjoint_are_transposes(rng):
    for _ in range(20):
        n, m = 6, 5
        cons = random_constraints(rng, n, m)
        X = rng.normal(size=(n, n))
        X = X + X.T
        y = rng.normal(size=m)
        assert np.isclose(cons.apply(X) @ y, np.vdot(X, cons.adjoint(y)))


def test_apply_matches_dense(rng):
    cons = random_constraints(rng, 5, 4)
    X = rng.normal(size=(5, 5))
    X = X + X.T
    assert np.allclose(cons.apply(X), [np.vdot(A, X) for A in dense(cons)])


def test_schur_matches_dense(rng):
    n, m = 5, 6
    cons = random_constraints(rng, n, m)
    B = rng.normal(size=(n, n))
    X = B @ B.T + np.eye(n)
    B = rng.normal(size=(n, n))
    G = B @ B.T + np.eye(n)
    mats = dense(cons)
    ref = np.array([[np.trace(Ak @ X @ Al @ G) for Al in mats] for Ak in mats])
    assert np.allclose(cons.schur(X, G), 0.5 * (ref + ref.T))


def plain_certify(C, cons, b):
    def certify(X, y, Z):
        # duality gap of an interior iterate: not rigorous, enough for the generic solver test
        return float(b @ y), float(np.vdot(C, X)), X

    return certify


def test_generic_sdp_against_closed_form():
    # min <C, X>, tr X = 1: optimum is lambda_min(C)
    rng = np.random.default_rng(5)
    B = rng.normal(size=(4, 4))
    C = B + B.T
    cons = EntryConstraints.from_lists(4, [[(i, i, 1.0) for i in range(4)]])
    b = np.array([1.0])
    y0 = np.array([np.linalg.eigvalsh(C)[0] - 1.0])
    res = solve(C, cons, b, np.eye(4) / 4, y0, plain_certify(C, cons, b), 1e-9)
    assert res.converged
    assert abs(res.upper - np.linalg.eigvalsh(C)[0]) < 1e-7


def test_theta_program_brackets():
    g = cycle_graph(5)
    C, cons, b, W = theta_program(g)
    assert cons.m == 1 + g.num_edges
    assert np.allclose(W, np.ones((5, 5)))


def test_refine_tightens_bracket():
    g = cycle_graph(5)
    C, cons, b, W = theta_program(g)

    def certify(X, y, Z):
        Xh = 0.5 * (X + X.T)
        for i, j in g.edges():
            Xh[i, j] = Xh[j, i] = 0.0
        Xh /= np.trace(Xh)
        lam = np.linalg.eigvalsh(Xh)[0]
        if lam < 0:
            Xh = (Xh - lam * np.eye(5)) / (1 - 5 * lam)
        D = W.copy()
        for (i, j), yk in zip(g.edges(), y[1:]):
            D[i, j] += yk
            D[j, i] += yk
        return float(np.vdot(W, Xh)), float(np.linalg.eigvalsh(D)[-1] + eig_margin(D)), Xh

    y0 = np.zeros(cons.m)
    y0[0] = -6.0
    rough = solve(C, cons, b, np.eye(5) / 5, y0, certify, 1e-12, max_iter=4)
    assert not rough.converged
    fine = refine_kkt(C, cons, b, rough, certify, 1e-8)
    assert fine.refined
    assert fine.lower >= rough.lower and fine.upper <= rough.upper
    assert fine.lower <= np.sqrt(5) + 1e-9 <= fine.upper + 2e-9
    full = solve_with_fallback(C, cons, b, np.eye(5) / 5, y0, certify, 1e-8)
    assert full.converged and abs(full.lower - np.sqrt(5)) < 1e-7


def test_eig_margin_scales():
    assert eig_margin(np.eye(3)) > 0
    assert eig_margin(100 * np.eye(3)) > eig_margin(np.eye(3))


@pytest.mark.parametrize("n", [0, 1])
def test_eig_margin_tiny(n):
    assert eig_margin(np.zeros((n, n))) > 0
