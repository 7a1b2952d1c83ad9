"""Bitmask kernels for the combinatorial hot loops.

Graphs enter as ``adj: uint64[n]`` where bit ``j`` of ``adj[i]`` marks the
edge ``ij``; ``n <= 64``. Every kernel is compiled with numba unless
``EXCLGRAPH_DISABLE_JIT`` is set, in which case the same bodies run as
ordinary Python on numpy scalars.
"""

import numpy as np

from ._jit import njit, py_func

ZERO = np.uint64(0)
ONE = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit
def bit(v):
    return ONE << np.uint64(v)


@njit
def full_mask(n):
    if n >= 64:
        return ALL
    return (ONE << np.uint64(n)) - ONE


@njit
def lowest_index(m):
    # m must be nonzero
    i = 0
    while (m & ONE) == ZERO:
        m = m >> ONE
        i += 1
    return i


@njit
def popcount(m):
    c = 0
    while m != ZERO:
        m = m & (m - ONE)
        c += 1
    return c


@njit
def max_weight_stable_set(adj, w, n):
    """Exact maximum-weight stable set by depth-first branch and bound.

    ``w`` holds positive integer weights sorted in nonincreasing order
    (vertex ``i`` of the kernel is the ``i``-th heaviest). Returns
    ``(value, mask)``. Self-contained so that ``py_func`` also runs on
    object arrays of Python ints.
    """
    one = np.uint64(1)
    zero = np.uint64(0)
    best_mask = zero
    if n == 0:
        return 0, best_mask
    best = w[0] - w[0]  # zero of the weight dtype
    size = n + 2
    st_cur = np.empty(size, dtype=w.dtype)
    st_P = np.empty(size, dtype=np.uint64)
    st_S = np.empty(size, dtype=np.uint64)
    st_cur[0] = best
    st_P[0] = np.uint64(0xFFFFFFFFFFFFFFFF) if n >= 64 else (one << np.uint64(n)) - one
    st_S[0] = zero
    top = 1
    while top > 0:
        top -= 1
        cur = st_cur[top]
        P = st_P[top]
        S = st_S[top]
        if P == zero:
            if cur > best:
                best = cur
                best_mask = S
            continue
        # greedy clique cover of P; the lowest index in each clique is its
        # heaviest vertex because of the weight ordering
        bound = cur
        R = P
        while R != zero:
            u = 0
            t = R
            while (t & one) == zero:
                t = t >> one
                u += 1
            bound += w[u]
            K = one << np.uint64(u)
            cand = R & adj[u]
            while cand != zero:
                v = 0
                t = cand
                while (t & one) == zero:
                    t = t >> one
                    v += 1
                K = K | (one << np.uint64(v))
                cand = cand & adj[v]
            R = R & ~K
        if bound <= best:
            continue
        v = 0
        t = P
        while (t & one) == zero:
            t = t >> one
            v += 1
        bv = one << np.uint64(v)
        # exclude v (explored second)
        st_cur[top] = cur
        st_P[top] = P & ~bv
        st_S[top] = S
        top += 1
        # include v (explored first)
        st_cur[top] = cur + w[v]
        st_P[top] = P & ~adj[v] & ~bv
        st_S[top] = S | bv
        top += 1
    return best, best_mask


py_max_weight_stable_set = py_func(max_weight_stable_set)


@njit
def stable_set_table(adj, n):
    """Boolean table over all ``2**n`` masks: True where the mask is stable."""
    total = 1 << n
    ok = np.zeros(total, dtype=np.bool_)
    ok[0] = True
    for m in range(1, total):
        # split off the highest vertex
        h = 0
        t = m
        while t > 1:
            t >>= 1
            h += 1
        rest = m ^ (1 << h)
        if ok[rest] and (adj[h] & np.uint64(rest)) == ZERO:
            ok[m] = True
    return ok


@njit
def _is_induced_cycle(adj, S, k):
    # every member has exactly two neighbours inside S, and S is connected
    R = S
    while R != ZERO:
        v = lowest_index(R)
        if popcount(adj[v] & S) != 2:
            return False
        R = R & ~bit(v)
    reach = bit(lowest_index(S))
    frontier = reach
    while frontier != ZERO:
        nxt = ZERO
        F = frontier
        while F != ZERO:
            u = lowest_index(F)
            nxt = nxt | (adj[u] & S)
            F = F & ~bit(u)
        frontier = nxt & ~reach
        reach = reach | nxt
    return popcount(reach) == k


@njit
def find_odd_hole(adj, n):
    """Smallest induced odd hole or odd antihole with at least 5 vertices.

    Returns ``(mask, kind)`` with kind 0 for a hole, 1 for an antihole and
    ``(0, -1)`` when none exists. Among equal sizes the numerically smallest
    mask wins; a hole is preferred over an antihole on the same mask.
    """
    full = full_mask(n)
    comp = np.empty(n, dtype=np.uint64)
    for v in range(n):
        comp[v] = ~adj[v] & full & ~bit(v)
    best_mask = ZERO
    best_kind = -1
    best_size = n + 1
    total = 1 << n
    for m in range(total):
        k = popcount(np.uint64(m))
        if k < 5 or k % 2 == 0 or k >= best_size:
            continue
        S = np.uint64(m)
        if _is_induced_cycle(adj, S, k):
            best_mask, best_kind, best_size = S, 0, k
        elif _is_induced_cycle(comp, S, k):
            best_mask, best_kind, best_size = S, 1, k
    return best_mask, best_kind
