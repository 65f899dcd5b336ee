"""n-diagonals, n-angulations and exchange graphs of a convex polygon.

Vertices of the d-gon are labeled 0..d-1 anticlockwise.  A chord (i, j) is an
n-diagonal when it cuts the polygon into two pieces that can each be cut into
n-gons, i.e. both sides carry a number of boundary edges congruent to 1 modulo
n-2 (for n = 3 every chord qualifies).  An n-angulation is a maximal set of
pairwise noncrossing n-diagonals; all of its faces are n-gons.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import ArgumentError


def d_param(k: int, n: int) -> int:
    """Number of polygon vertices for the type (k, n) cluster category."""
    if k < 1 or n < 3:
        raise ArgumentError(f"need k >= 1 and n >= 3, got k={k}, n={n}")
    return (k + 1) * (n - 2) + 2


@dataclass(frozen=True, order=True)
class NDiagonal:
    i: int
    j: int
    d: int
    n: int

    def __post_init__(self):
        if not (0 <= self.i < self.j < self.d):
            raise ArgumentError(f"diagonal endpoints must satisfy 0 <= i < j < d: {self}")
        if not _is_n_diagonal(self.d, self.n, self.i, self.j):
            raise ArgumentError(f"({self.i},{self.j}) is not a {self.n}-diagonal of the {self.d}-gon")

    @property
    def sides(self) -> tuple[int, int]:
        """Boundary edge counts on the two sides, (i -> j, j -> i) anticlockwise."""
        return (self.j - self.i, self.d - (self.j - self.i))

    @property
    def n_gon_side(self) -> int | None:
        """Start vertex of the side that is a single n-gon, if any.

        Both sides qualify when d = 2n - 2; the side starting at ``i`` is
        reported in that case.
        """
        a, b = self.sides
        if a == self.n - 1:
            return self.i
        if b == self.n - 1:
            return self.j
        return None

    def crosses(self, other: NDiagonal) -> bool:
        a, b = self.i, self.j
        c, e = other.i, other.j
        if len({a, b, c, e}) < 4:
            return False
        return (a < c < b) != (a < e < b)

    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)


def _is_n_diagonal(d: int, n: int, i: int, j: int) -> bool:
    gap = (j - i) % d
    if gap < 2 or d - gap < 2:
        return False
    return (gap - 1) % (n - 2) == 0 and (d - gap - 1) % (n - 2) == 0


def make_diagonal(d: int, n: int, i: int, j: int) -> NDiagonal:
    i, j = i % d, j % d
    if i > j:
        i, j = j, i
    return NDiagonal(i, j, d, n)


def enumerate_n_diagonals(d: int, n: int) -> list[NDiagonal]:
    """All n-diagonals of the d-gon, sorted by endpoints."""
    if d < 4 or n < 3:
        raise ArgumentError(f"need d >= 4 and n >= 3, got d={d}, n={n}")
    return [NDiagonal(i, j, d, n) for i in range(d) for j in range(i + 2, d) if _is_n_diagonal(d, n, i, j)]


@dataclass(frozen=True)
class NAngulation:
    d: int
    n: int
    diagonals: tuple[NDiagonal, ...]

    def __post_init__(self):
        object.__setattr__(self, "diagonals", tuple(sorted(set(self.diagonals))))

    @classmethod
    def from_pairs(cls, d: int, n: int, pairs) -> NAngulation:
        return cls(d, n, tuple(make_diagonal(d, n, i, j) for i, j in pairs))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(x.pair() for x in self.diagonals)

    def key(self) -> tuple[tuple[int, int], ...]:
        return self.pairs()

    def faces(self) -> list[tuple[int, ...]]:
        """Vertex cycles of the complementary regions."""
        faces = [tuple(range(self.d))]
        for diag in self.diagonals:
            for idx, f in enumerate(faces):
                if diag.i in f and diag.j in f:
                    a, b = f.index(diag.i), f.index(diag.j)
                    if a > b:
                        a, b = b, a
                    if b - a in (1, len(f) - 1):
                        continue
                    faces[idx : idx + 1] = [f[a : b + 1], f[b:] + f[: a + 1]]
                    break
        return faces

    def is_valid(self) -> bool:
        expected = (self.d - 2) // (self.n - 2) - 1
        if (self.d - 2) % (self.n - 2) or len(self.diagonals) != expected:
            return False
        for x, y in itertools.combinations(self.diagonals, 2):
            if x.crosses(y):
                return False
        return all(len(f) == self.n for f in self.faces())

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "diagonals": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, data: dict | str) -> NAngulation:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_pairs(int(data["d"]), int(data["n"]), [tuple(p) for p in data["diagonals"]])


def _check_divisible(d: int, n: int) -> None:
    if d < 4 or n < 3:
        raise ArgumentError(f"need d >= 4 and n >= 3, got d={d}, n={n}")
    if (d - 2) % (n - 2):
        raise ArgumentError(f"(d-2)={d - 2} is not divisible by (n-2)={n - 2}")


def _angulate(verts: tuple[int, ...], n: int):
    """Yield diagonal-pair lists cutting the polygon ``verts`` into n-gons.

    The face containing the closing edge (verts[-1], verts[0]) is chosen first;
    its other corners split the remaining boundary into sub-polygons.
    """
    size = len(verts)
    if size == n:
        yield []
        return
    # corner indices 0 = c_0 < c_1 < ... < c_{n-1} = size-1, each gap g with (g-1) % (n-2) == 0
    for inner in itertools.combinations(range(1, size - 1), n - 2):
        corners = (0, *inner, size - 1)
        gaps = [corners[t + 1] - corners[t] for t in range(n - 1)]
        if any(g > 1 and (g - 1) % (n - 2) for g in gaps):
            continue
        parts = []
        for t in range(n - 1):
            a, b = corners[t], corners[t + 1]
            if b - a > 1:
                parts.append(verts[a : b + 1])
        sub_lists = [list(_angulate(p, n)) for p in parts]
        chords = [tuple(sorted((p[0], p[-1]))) for p in parts]
        for combo in itertools.product(*sub_lists):
            out = list(chords)
            for c in combo:
                out.extend(c)
            yield out


def enumerate_n_angulations(d: int, n: int) -> list[NAngulation]:
    """Every n-angulation of the d-gon, in canonical (lexicographic) order."""
    _check_divisible(d, n)
    keys = sorted({tuple(sorted(pairs)) for pairs in _angulate(tuple(range(d)), n)})
    return [NAngulation.from_pairs(d, n, k) for k in keys]


def rotate(r: int, a: NAngulation) -> NAngulation:
    """Rotate every diagonal by r steps (mod d)."""
    return NAngulation.from_pairs(a.d, a.n, [(i + r, j + r) for i, j in a.pairs()])


@dataclass(frozen=True)
class ExchangeGraph:
    d: int
    n: int
    vertices: tuple[NAngulation, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def index(self) -> dict:
        return {v.key(): i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "vertices": [[list(p) for p in v.pairs()] for v in self.vertices],
            "adjacency": self.adjacency,
        }

    def to_dot(self) -> str:
        return graph_to_dot(f"exchange_{self.d}_{self.n}", len(self.vertices), self.edges,
                            [str(list(v.pairs())) for v in self.vertices])


def graph_to_dot(name: str, n_vertices: int, edges, labels=None) -> str:
    lines = [f"graph {name} {{"]
    for v in range(n_vertices):
        if labels is None:
            lines.append(f"  {v};")
        else:
            lines.append(f'  {v} [label="{labels[v]}"];')
    for a, b in sorted(edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def exchange_graph(d: int, n: int) -> ExchangeGraph:
    """Graph on n-angulations; adjacent iff the diagonal sets differ in one element."""
    angs = enumerate_n_angulations(d, n)
    diag_index = {x.pair(): b for b, x in enumerate(enumerate_n_diagonals(d, n))}
    if len(diag_index) <= 64:
        masks = np.zeros(len(angs), dtype=np.uint64)
        for idx, a in enumerate(angs):
            m = 0
            for p in a.pairs():
                m |= 1 << diag_index[p]
            masks[idx] = np.uint64(m)
        pairs = _kernels.exchange_pairs(masks)
        edges = tuple((int(a), int(b)) for a, b in pairs)
    else:
        edges = _exchange_edges_by_hashing(angs)
    return ExchangeGraph(d, n, tuple(angs), tuple(sorted(edges)))


def _exchange_edges_by_hashing(angs: list[NAngulation]) -> tuple[tuple[int, int], ...]:
    buckets: dict = {}
    for idx, a in enumerate(angs):
        keys = a.pairs()
        for t in range(len(keys)):
            buckets.setdefault(keys[:t] + keys[t + 1 :], []).append(idx)
    edges = set()
    for members in buckets.values():
        for x, y in itertools.combinations(sorted(members), 2):
            edges.add((x, y))
    return tuple(sorted(edges))
