"""BFS kernels over CSR adjacency, with numba acceleration.

Everything hot in this package funnels through the three functions below:
single-source hop distances, demand-weighted path-length accumulation and
per-source eccentricities.  Each has two implementations:

* a numba ``@njit`` version (default when numba imports cleanly), and
* a vectorized pure-numpy fallback.

Set ``MWASP_DISABLE_NUMBA=1`` in the environment to force the numpy path
(used by the benchmark in ``benchmarks/bench_kernels.py`` and by the kernel
equivalence tests).  Both paths return identical distances; floating-point
EPL totals may differ in the last ulp because summation order differs.

CSR convention: ``indices[indptr[v]:indptr[v+1]]`` are the neighbors of
``v`` in ascending order; ``indptr`` is int64, ``indices`` int32.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("MWASP_DISABLE_NUMBA", "").strip().lower()
_DISABLE = _flag in {"1", "true", "yes", "on"}

try:
    if _DISABLE:
        raise ImportError("numba disabled via MWASP_DISABLE_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# pure-numpy implementations (frontier expansion)
# ---------------------------------------------------------------------------


def _gather_neighbors(indptr, indices, frontier):
    """Concatenate the CSR neighbor slices of every frontier node."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return indices[:0]
    shift = starts - np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(total, dtype=np.int64) + np.repeat(shift, counts)
    return indices[pos]


def _bfs_distances_numpy(indptr, indices, source):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = np.int32(0)
    while frontier.size:
        neigh = _gather_neighbors(indptr, indices, frontier)
        fresh = np.unique(neigh[dist[neigh] < 0])
        if fresh.size == 0:
            break
        d += 1
        dist[fresh] = d
        frontier = fresh.astype(np.int64)
    return dist


def _epl_over_pairs_numpy(indptr, indices, srcs, ptr, dsts, wgts):
    n = indptr.shape[0] - 1
    total = 0.0
    for si in range(srcs.shape[0]):
        s = int(srcs[si])
        lo, hi = int(ptr[si]), int(ptr[si + 1])
        targets = dsts[lo:hi]
        dist = np.full(n, -1, dtype=np.int32)
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        d = np.int32(0)
        while frontier.size and (dist[targets] < 0).any():
            neigh = _gather_neighbors(indptr, indices, frontier)
            fresh = np.unique(neigh[dist[neigh] < 0])
            if fresh.size == 0:
                break
            d += 1
            dist[fresh] = d
            frontier = fresh.astype(np.int64)
        dt = dist[targets]
        if (dt < 0).any():
            bad = int(np.argmax(dt < 0))
            return total, s, int(targets[bad])
        total += 2.0 * float(np.dot(wgts[lo:hi], dt))
    return total, -1, -1


def _eccentricities_numpy(indptr, indices):
    n = indptr.shape[0] - 1
    ecc = np.empty(n, dtype=np.int32)
    for s in range(n):
        dist = _bfs_distances_numpy(indptr, indices, s)
        ecc[s] = -1 if (dist < 0).any() else dist.max()
    return ecc


# ---------------------------------------------------------------------------
# numba implementations (queue-based BFS, early exit on demand targets)
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _bfs_distances_numba(indptr, indices, source):
        n = indptr.shape[0] - 1
        dist = np.full(n, -1, dtype=np.int32)
        queue = np.empty(n, dtype=np.int32)
        dist[source] = 0
        queue[0] = source
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        return dist

    @njit(cache=True)
    def _epl_over_pairs_numba(indptr, indices, srcs, ptr, dsts, wgts):
        n = indptr.shape[0] - 1
        dist = np.empty(n, dtype=np.int32)
        queue = np.empty(n, dtype=np.int32)
        # want[v] == si marks v as a pending target of source index si
        want = np.full(n, -1, dtype=np.int64)
        total = 0.0
        for si in range(srcs.shape[0]):
            s = srcs[si]
            lo, hi = ptr[si], ptr[si + 1]
            for k in range(lo, hi):
                want[dsts[k]] = si
            remaining = hi - lo
            dist[:] = -1
            dist[s] = 0
            queue[0] = s
            head, tail = 0, 1
            while head < tail and remaining > 0:
                u = queue[head]
                head += 1
                du = dist[u]
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if dist[v] < 0:
                        dist[v] = du + 1
                        queue[tail] = v
                        tail += 1
                        if want[v] == si:
                            remaining -= 1
            if remaining > 0:
                for k in range(lo, hi):
                    if dist[dsts[k]] < 0:
                        return total, s, dsts[k]
            for k in range(lo, hi):
                total += 2.0 * wgts[k] * dist[dsts[k]]
        return total, np.int32(-1), np.int32(-1)

    @njit(cache=True)
    def _eccentricities_numba(indptr, indices):
        n = indptr.shape[0] - 1
        ecc = np.empty(n, dtype=np.int32)
        dist = np.empty(n, dtype=np.int32)
        queue = np.empty(n, dtype=np.int32)
        for s in range(n):
            dist[:] = -1
            dist[s] = 0
            queue[0] = s
            head, tail = 0, 1
            far = np.int32(0)
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if du > far:
                    far = du
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if dist[v] < 0:
                        dist[v] = du + 1
                        queue[tail] = v
                        tail += 1
            ecc[s] = -1 if tail < n else far
        return ecc


# ---------------------------------------------------------------------------
# public dispatch
# ---------------------------------------------------------------------------


def bfs_distances(indptr, indices, source: int) -> np.ndarray:
    """Hop distances from ``source``; ``-1`` marks unreachable nodes."""
    if NUMBA_ENABLED:
        return _bfs_distances_numba(indptr, indices, np.int32(source))
    return _bfs_distances_numpy(indptr, indices, source)


def epl_over_pairs(indptr, indices, srcs, ptr, dsts, wgts):
    """Sum ``2 * w * dist(src, dst)`` over pair groups, source by source.

    ``srcs[i]``'s targets are ``dsts[ptr[i]:ptr[i+1]]`` with per-direction
    weights ``wgts[...]``; the factor 2 accounts for the symmetric entry.
    Returns ``(total, bad_u, bad_v)`` with ``bad_u == -1`` on success, else
    the first unreachable pair in canonical order.
    """
    if srcs.shape[0] == 0:
        return 0.0, -1, -1
    if NUMBA_ENABLED:
        total, bu, bv = _epl_over_pairs_numba(indptr, indices, srcs, ptr, dsts, wgts)
    else:
        total, bu, bv = _epl_over_pairs_numpy(indptr, indices, srcs, ptr, dsts, wgts)
    return float(total), int(bu), int(bv)


def eccentricities(indptr, indices) -> np.ndarray:
    """BFS eccentricity of every node; ``-1`` where the graph is disconnected."""
    if NUMBA_ENABLED:
        return _eccentricities_numba(indptr, indices)
    return _eccentricities_numpy(indptr, indices)
