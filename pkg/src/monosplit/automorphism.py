"""Automorphism groups of finite connected graphs by backtracking.

Vertices are refined by (degree, BFS distance profile).  The search fixes the
image of a root vertex and extends along a BFS order: each later vertex has an
already-mapped BFS parent, so its image must be a neighbour of the parent's
image.  Adjacency to all previously mapped vertices is checked through the
neighbour lists only.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Sequence

import numpy as np

from . import _kernels
from .errors import ArgumentError, ResourceError

MAX_VERTICES = 10_000


def _normalize(adjacency: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(adjacency)
    adj = [sorted(set(int(w) for w in nbrs)) for nbrs in adjacency]
    for v, nbrs in enumerate(adj):
        for w in nbrs:
            if not 0 <= w < n or w == v:
                raise ArgumentError(f"bad edge ({v},{w})")
            if v not in adj[w]:
                raise ArgumentError(f"adjacency is not symmetric at ({v},{w})")
    return adj


def _bfs_order(adj: list[list[int]], root: int) -> tuple[list[int], list[int], list[int]]:
    order, parent, dist = [root], [-1] * len(adj), [-1] * len(adj)
    dist[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                parent[w] = v
                order.append(w)
                q.append(w)
    return order, parent, dist


def vertex_invariants(adj: list[list[int]]) -> list[tuple]:
    n = len(adj)
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adj])
    indices = np.array([w for a in adj for w in a], dtype=np.int64)
    _, _, dist0 = _bfs_order(adj, 0)
    width = 2 * max(dist0) + 1  # diameter <= 2 * eccentricity(0)
    prof = _kernels.distance_profiles(indptr, indices, width)
    return [(len(adj[v]), tuple(int(x) for x in prof[v])) for v in range(n)]


def all_automorphisms(adjacency: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Every automorphism as an image tuple, sorted lexicographically."""
    adj = _normalize(adjacency)
    n = len(adj)
    if n > MAX_VERTICES:
        raise ResourceError(f"graph has {n} vertices, limit is {MAX_VERTICES}")
    if n == 0:
        return [()]
    order, parent, dist = _bfs_order(adj, 0)
    if len(order) != n:
        raise ArgumentError("graph is not connected")
    inv = vertex_invariants(adj)
    adjsets = [set(a) for a in adj]
    position = {v: i for i, v in enumerate(order)}
    # neighbours of order[i] that appear earlier in the order
    earlier = [[w for w in adj[v] if position[w] < i] for i, v in enumerate(order)]

    found: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def candidates(i: int):
        v = order[i]
        if i == 0:
            pool = range(n)
        else:
            pool = adj[image[parent[v]]]
        for w in pool:
            if used[w] or inv[w] != inv[v]:
                continue
            if not all(image[u] in adjsets[w] for u in earlier[i]):
                continue
            # w may not be adjacent to the image of a mapped non-neighbour of v
            if sum(1 for x in adj[w] if used[x]) != len(earlier[i]):
                continue
            yield w

    # iterative depth-first search; recursion would overflow on large graphs
    stack = [candidates(0)]
    while stack:
        i = len(stack) - 1
        v = order[i]
        if image[v] >= 0:
            used[image[v]] = False
            image[v] = -1
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            continue
        image[v] = w
        used[w] = True
        if i + 1 == n:
            found.append(tuple(image))
        else:
            stack.append(candidates(i + 1))
    return sorted(found)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """p after q."""
    return tuple(p[x] for x in q)


def _closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def graph_automorphisms(adjacency: Sequence[Sequence[int]]) -> tuple[int, list[tuple[int, ...]]]:
    """Order of the automorphism group and a deterministic generating set.

    Generators are picked greedily from the lexicographically sorted group.
    """
    group = all_automorphisms(adjacency)
    n = len(adjacency)
    gens: list[tuple[int, ...]] = []
    generated = {tuple(range(n))}
    for g in group:
        if g not in generated:
            gens.append(g)
            generated = _closure(gens, n)
            if len(generated) == len(group):
                break
    return len(group), gens


def brute_force_automorphism_count(adjacency: Sequence[Sequence[int]]) -> int:
    """Count automorphisms by checking every permutation; tiny graphs only."""
    import itertools

    adj = _normalize(adjacency)
    n = len(adj)
    if n > 9:
        raise ResourceError("brute force is limited to 9 vertices")
    edges = {(a, b) for a in range(n) for b in adj[a]}
    return sum(
        1
        for p in itertools.permutations(range(n))
        if all((p[a], p[b]) in edges for a, b in edges)
    )
