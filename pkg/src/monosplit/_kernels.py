"""Hot inner loops, compiled with numba when available.

Every kernel has a pure-numpy twin.  Set ``MONOSPLIT_DISABLE_NUMBA=1`` to force
the numpy path (useful for debugging and for the benchmark comparison).
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("MONOSPLIT_DISABLE_NUMBA", "") not in ("1", "true", "yes")


# ---------------------------------------------------------------------------
# exchange adjacency: pairs of bitmasks whose symmetric difference has 2 bits

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def _popcount_np(x: np.ndarray) -> np.ndarray:
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


def exchange_pairs_numpy(masks: np.ndarray) -> np.ndarray:
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    out = []
    for i in range(masks.shape[0] - 1):
        diff = _popcount_np(masks[i + 1 :] ^ masks[i])
        js = np.nonzero(diff == 2)[0] + i + 1
        if js.size:
            out.append(np.column_stack((np.full(js.size, i, dtype=np.int64), js.astype(np.int64))))
    if not out:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(out)


if HAVE_NUMBA:

    @njit(cache=True)
    def _popcount_nb(x):
        c = 0
        while x:
            x &= x - np.uint64(1)
            c += 1
        return c

    @njit(cache=True)
    def _exchange_pairs_nb(masks):
        n = masks.shape[0]
        count = 0
        for i in range(n):
            for j in range(i + 1, n):
                if _popcount_nb(masks[i] ^ masks[j]) == 2:
                    count += 1
        out = np.empty((count, 2), dtype=np.int64)
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                if _popcount_nb(masks[i] ^ masks[j]) == 2:
                    out[k, 0] = i
                    out[k, 1] = j
                    k += 1
        return out

    def exchange_pairs_numba(masks: np.ndarray) -> np.ndarray:
        return _exchange_pairs_nb(np.ascontiguousarray(masks, dtype=np.uint64))

else:  # pragma: no cover
    exchange_pairs_numba = exchange_pairs_numpy


# ---------------------------------------------------------------------------
# Fomin-Zelevinsky matrix mutation


def mutate_numpy(B: np.ndarray, k: int) -> np.ndarray:
    B = np.asarray(B, dtype=np.int64)
    col = B[:, k]
    row = B[k, :]
    prod = np.outer(col, row)
    out = B + np.sign(col)[:, None] * np.maximum(prod, 0)
    out[k, :] = -B[k, :]
    out[:, k] = -B[:, k]
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _mutate_nb(B, k):
        n = B.shape[0]
        out = np.empty_like(B)
        for i in range(n):
            for j in range(n):
                if i == k or j == k:
                    out[i, j] = -B[i, j]
                else:
                    p = B[i, k] * B[k, j]
                    if p > 0:
                        s = 1 if B[i, k] > 0 else -1
                        out[i, j] = B[i, j] + s * p
                    else:
                        out[i, j] = B[i, j]
        return out

    def mutate_numba(B: np.ndarray, k: int) -> np.ndarray:
        return _mutate_nb(np.ascontiguousarray(B, dtype=np.int64), k)

else:  # pragma: no cover
    mutate_numba = mutate_numpy


# ---------------------------------------------------------------------------
# BFS distance profiles: profile[v, r] = number of vertices at distance r from v,
# truncated to ``width`` columns (pass diameter + 1 for the full profile)


def distance_profiles_numpy(indptr: np.ndarray, indices: np.ndarray, width: int) -> np.ndarray:
    n = indptr.shape[0] - 1
    rows = []
    for s in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        r = 0
        while frontier.size:
            r += 1
            nbrs = np.concatenate([indices[indptr[v] : indptr[v + 1]] for v in frontier])
            nbrs = np.unique(nbrs)
            nbrs = nbrs[dist[nbrs] < 0]
            dist[nbrs] = r
            frontier = nbrs
        rows.append(np.bincount(dist[dist >= 0], minlength=width)[:width])
    return np.array(rows, dtype=np.int64).reshape(n, width)


if HAVE_NUMBA:

    @njit(cache=True)
    def _distance_profiles_nb(indptr, indices, width):
        n = indptr.shape[0] - 1
        out = np.zeros((n, width), dtype=np.int64)
        dist = np.empty(n, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        for s in range(n):
            dist[:] = -1
            dist[s] = 0
            head = 0
            tail = 1
            queue[0] = s
            while head < tail:
                v = queue[head]
                head += 1
                if dist[v] < width:
                    out[s, dist[v]] += 1
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue[tail] = w
                        tail += 1
        return out

    def distance_profiles_numba(indptr: np.ndarray, indices: np.ndarray, width: int) -> np.ndarray:
        return _distance_profiles_nb(
            np.ascontiguousarray(indptr, dtype=np.int64),
            np.ascontiguousarray(indices, dtype=np.int64),
            width,
        )

else:  # pragma: no cover
    distance_profiles_numba = distance_profiles_numpy


if USE_NUMBA:
    exchange_pairs = exchange_pairs_numba
    mutate = mutate_numba
    distance_profiles = distance_profiles_numba
else:
    exchange_pairs = exchange_pairs_numpy
    mutate = mutate_numpy
    distance_profiles = distance_profiles_numpy
