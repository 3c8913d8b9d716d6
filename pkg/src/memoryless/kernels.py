"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

Permutations are rows of an integer array: ``p[s]`` is the image of point
``s``. Left composition by a generator ``g`` maps ``p`` to ``g[p]``.

The public names at the bottom dispatch on :data:`memoryless._accel.USE_NUMBA`.
The ``*_nb`` and ``*_np`` variants stay importable so the two paths can be
compared directly (tests and ``benchmarks/bench_kernels.py`` do this).
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit

# 20! < 2**63 - 1 < 21!
MAX_RANK_DEGREE = 20
# dense distance tables hold m! int8 entries
MAX_DENSE_DEGREE = 10

_CHUNK_CELLS = 1 << 22


def factorial_table(m):
    return np.array([math.factorial(i) for i in range(m + 1)], dtype=np.int64)


# --------------------------------------------------------------------------
# Lehmer ranking
# --------------------------------------------------------------------------

def rank_rows_np(perms):
    perms = np.asarray(perms)
    k, m = perms.shape
    fact = factorial_table(m)
    ranks = np.zeros(k, dtype=np.int64)
    for i in range(m - 1):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        ranks += smaller.astype(np.int64) * fact[m - 1 - i]
    return ranks


@njit
def _rank_one(p, fact):
    m = p.shape[0]
    used = np.int64(0)
    acc = np.int64(0)
    for i in range(m):
        v = np.int64(p[i])
        below = used & ((np.int64(1) << v) - 1)
        c = 0
        while below:
            below &= below - 1
            c += 1
        acc += (v - c) * fact[m - 1 - i]
        used |= np.int64(1) << v
    return acc


@njit
def rank_rows_nb(perms, fact):
    k = perms.shape[0]
    out = np.empty(k, dtype=np.int64)
    for r in range(k):
        out[r] = _rank_one(perms[r], fact)
    return out


def unrank_rows(ranks, m):
    """Inverse of :func:`rank_rows` (numpy only; used for reporting, not in loops)."""
    ranks = np.array(ranks, dtype=np.int64).reshape(-1)
    fact = factorial_table(m)
    k = ranks.shape[0]
    avail = np.ones((k, m), dtype=bool)
    out = np.empty((k, m), dtype=np.int32)
    rest = ranks.copy()
    for i in range(m):
        digit, rest = np.divmod(rest, fact[m - 1 - i])
        # position of the (digit+1)-th available value
        pos = np.argmax(np.cumsum(avail, axis=1) == (digit + 1)[:, None], axis=1)
        out[:, i] = pos
        avail[np.arange(k), pos] = False
    return out


# --------------------------------------------------------------------------
# Composition
# --------------------------------------------------------------------------

def left_compose_all(gens, perms):
    """Row ``i * len(gens) + j`` of the result is ``gens[j] o perms[i]``."""
    gens = np.asarray(gens)
    perms = np.asarray(perms)
    out = gens[:, perms]  # (r, k, m)
    return np.ascontiguousarray(out.transpose(1, 0, 2)).reshape(-1, gens.shape[1])


# --------------------------------------------------------------------------
# Dense breadth-first search over a Cayley graph
# --------------------------------------------------------------------------

@njit
def bfs_dense_nb(gens, start, fact):
    m = start.shape[0]
    total = fact[m]
    dist = np.full(total, -1, dtype=np.int8)
    queue = np.empty((total, m), dtype=np.int8)
    qdist = np.empty(total, dtype=np.int8)
    tmp = np.empty(m, dtype=np.int8)
    for s in range(m):
        queue[0, s] = start[s]
    dist[_rank_one(queue[0], fact)] = 0
    qdist[0] = 0
    head = 0
    tail = 1
    r = gens.shape[0]
    while head < tail:
        d = qdist[head] + 1
        for j in range(r):
            for s in range(m):
                tmp[s] = gens[j, queue[head, s]]
            rk = _rank_one(tmp, fact)
            if dist[rk] < 0:
                dist[rk] = d
                for s in range(m):
                    queue[tail, s] = tmp[s]
                qdist[tail] = d
                tail += 1
        head += 1
    return dist


def bfs_dense_np(gens, start):
    gens = np.asarray(gens, dtype=np.int8)
    start = np.asarray(start, dtype=np.int8)
    m = start.shape[0]
    fact = factorial_table(m)
    dist = np.full(fact[m], -1, dtype=np.int8)
    dist[rank_rows_np(start[None])[0]] = 0
    frontier = start[None]
    d = 0
    r = gens.shape[0]
    step = max(1, _CHUNK_CELLS // (r * m))
    while len(frontier):
        parts = []
        for lo in range(0, len(frontier), step):
            cand = left_compose_all(gens, frontier[lo:lo + step])
            rk, first = np.unique(rank_rows_np(cand), return_index=True)
            fresh = dist[rk] < 0
            dist[rk[fresh]] = d + 1
            parts.append(cand[first[fresh]])
        frontier = np.concatenate(parts) if parts else frontier[:0]
        d += 1
    return dist


# --------------------------------------------------------------------------
# Stabilizer-chain sifting
# --------------------------------------------------------------------------

@njit
def sift_nb(g, base, start, stop, in_orbit, trans_inv):
    h = g.copy()
    tmp = np.empty_like(h)
    m = h.shape[0]
    for i in range(start, stop):
        beta = h[base[i]]
        if not in_orbit[i, beta]:
            return h, i
        for s in range(m):
            tmp[s] = trans_inv[i, beta, h[s]]
        for s in range(m):
            h[s] = tmp[s]
    return h, stop


def sift_np(g, base, start, stop, in_orbit, trans_inv):
    h = np.array(g, copy=True)
    for i in range(start, stop):
        beta = h[base[i]]
        if not in_orbit[i, beta]:
            return h, i
        h = trans_inv[i, beta][h]
    return h, stop


# --------------------------------------------------------------------------
# Dispatch
# --------------------------------------------------------------------------

def rank_rows(perms):
    perms = np.ascontiguousarray(perms)
    if perms.shape[1] > MAX_RANK_DEGREE:
        raise ValueError(f"Lehmer ranks overflow int64 beyond degree {MAX_RANK_DEGREE}")
    if USE_NUMBA:
        return rank_rows_nb(perms, factorial_table(perms.shape[1]))
    return rank_rows_np(perms)


def bfs_dense(gens, start):
    """Distances from ``start`` under left multiplication by ``gens``.

    Returns an int8 array indexed by Lehmer rank; -1 marks unreached permutations.
    """
    start = np.asarray(start)
    if start.shape[0] > MAX_DENSE_DEGREE:
        raise ValueError(f"dense search needs degree <= {MAX_DENSE_DEGREE}")
    gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int8).reshape(-1, start.shape[0]))
    if USE_NUMBA:
        return bfs_dense_nb(gens, start.astype(np.int8), factorial_table(start.shape[0]))
    return bfs_dense_np(gens, start)


def sift(g, base, start, stop, in_orbit, trans_inv):
    if USE_NUMBA:
        return sift_nb(g, base, start, stop, in_orbit, trans_inv)
    return sift_np(g, base, start, stop, in_orbit, trans_inv)


__all__ = [
    "HAVE_NUMBA",
    "USE_NUMBA",
    "MAX_DENSE_DEGREE",
    "MAX_RANK_DEGREE",
    "bfs_dense",
    "factorial_table",
    "left_compose_all",
    "rank_rows",
    "sift",
    "unrank_rows",
]
