"""Compiled BFS kernels over CSR adjacency (``offsets``, ``nbrs``).

Sentinels: ``girth`` returns 0 for an acyclic graph, ``eccentricities``
marks an unreachable vertex with -1.
"""

import numba
import numpy as np
from numba import njit, prange


@njit(cache=True)
def bfs_distances(offsets, nbrs, src, max_depth):
    n = offsets.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if max_depth >= 0 and du >= max_depth:
            continue
        for k in range(offsets[u], offsets[u + 1]):
            w = nbrs[k]
            if dist[w] < 0:
                dist[w] = du + 1
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True)
def pair_distance(offsets, nbrs, src, dst):
    if src == dst:
        return 0
    n = offsets.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(offsets[u], offsets[u + 1]):
            w = nbrs[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                if w == dst:
                    return dist[w]
                queue[tail] = w
                tail += 1
    return -1


@njit(cache=True)
def _girth_roots(offsets, nbrs, lo, hi, best):
    # shortest cycle through each root in [lo, hi); best == 0 means none yet
    n = offsets.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for root in range(lo, hi):
        dist[root] = 0
        parent[root] = -1
        queue[0] = root
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            # any cycle closed from u has length >= 2*du
            if best > 0 and 2 * du >= best:
                break
            for k in range(offsets[u], offsets[u + 1]):
                w = nbrs[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    length = du + dist[w] + 1
                    if best == 0 or length < best:
                        best = length
        for i in range(tail):
            dist[queue[i]] = -1
    return best


@njit(cache=True)
def girth(offsets, nbrs):
    n = offsets.shape[0] - 1
    return _girth_roots(offsets, nbrs, 0, n, 0)


@njit(cache=True, parallel=True)
def girth_chunked(offsets, nbrs, bounds):
    nchunks = bounds.shape[0] - 1
    found = np.zeros(nchunks, dtype=np.int64)
    for i in prange(nchunks):
        found[i] = _girth_roots(offsets, nbrs, bounds[i], bounds[i + 1], 0)
    best = 0
    for i in range(nchunks):
        if found[i] > 0 and (best == 0 or found[i] < best):
            best = found[i]
    return best


@njit(cache=True)
def _ecc_roots(offsets, nbrs, lo, hi, out):
    n = offsets.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for root in range(lo, hi):
        dist[root] = 0
        queue[0] = root
        head, tail = 0, 1
        ecc = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > ecc:
                ecc = du
            for k in range(offsets[u], offsets[u + 1]):
                w = nbrs[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        out[root] = ecc if tail == n else -1
        for i in range(tail):
            dist[queue[i]] = -1


@njit(cache=True)
def eccentricities(offsets, nbrs):
    n = offsets.shape[0] - 1
    out = np.empty(n, dtype=np.int64)
    _ecc_roots(offsets, nbrs, 0, n, out)
    return out


@njit(cache=True, parallel=True)
def eccentricities_chunked(offsets, nbrs, bounds):
    n = offsets.shape[0] - 1
    out = np.empty(n, dtype=np.int64)
    for i in prange(bounds.shape[0] - 1):
        _ecc_roots(offsets, nbrs, bounds[i], bounds[i + 1], out)
    return out


def chunk_bounds(n, threads):
    parts = max(1, min(n, 4 * threads))
    return np.linspace(0, n, parts + 1).astype(np.int64)


def set_threads(threads):
    threads = max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(threads)
    return threads
