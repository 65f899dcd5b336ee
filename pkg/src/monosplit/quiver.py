"""Quivers with potential, exchange matrices and matrix mutation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ArgumentError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class PotentialTerm:
    coef: int
    arrows: tuple[str, ...]  # a cyclic path, read left to right


@dataclass(frozen=True)
class QuiverWithPotential:
    vertices: int
    arrows: tuple[Arrow, ...]
    potential: tuple[PotentialTerm, ...] = ()
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ArgumentError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.vertices and 0 <= a.target < self.vertices):
                raise ArgumentError(f"arrow {a.name} has an endpoint outside 0..{self.vertices - 1}")
        by_name = {a.name: a for a in self.arrows}
        for term in self.potential:
            if not term.arrows:
                raise ArgumentError("empty potential term")
            for x, y in zip(term.arrows, term.arrows[1:] + term.arrows[:1]):
                if x not in by_name or y not in by_name:
                    raise ArgumentError(f"potential term uses unknown arrow in {term.arrows}")
                if by_name[x].target != by_name[y].source:
                    raise ArgumentError(f"potential term {term.arrows} is not a cycle")

    def arrow_counts(self) -> np.ndarray:
        """a[i, j] = number of arrows i -> j."""
        a = np.zeros((self.vertices, self.vertices), dtype=np.int64)
        for arr in self.arrows:
            a[arr.source, arr.target] += 1
        return a

    def exchange_matrix(self) -> np.ndarray:
        a = self.arrow_counts()
        return a - a.T

    def vertex_cycle(self, term: PotentialTerm) -> list[int]:
        by_name = {a.name: a for a in self.arrows}
        return [by_name[x].source for x in term.arrows]

    def to_json(self) -> dict:
        a = self.arrow_counts()
        arrows = [[i, j, int(a[i, j])] for i in range(self.vertices) for j in range(self.vertices) if a[i, j]]
        return {
            "vertices": self.vertices,
            "arrows": arrows,
            "named_arrows": [[x.name, x.source, x.target] for x in self.arrows],
            "potential": [
                {"coef": t.coef, "cycle": self.vertex_cycle(t), "word": list(t.arrows)} for t in self.potential
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> QuiverWithPotential:
        if isinstance(data, str):
            data = json.loads(data)
        if "named_arrows" in data:
            arrows = tuple(Arrow(str(n), int(s), int(t)) for n, s, t in data["named_arrows"])
        else:
            arrows = tuple(
                Arrow(f"a{i}_{j}_{c}", int(i), int(j)) for i, j, cnt in data["arrows"] for c in range(int(cnt))
            )
        potential = []
        for t in data.get("potential", []):
            if "word" in t:
                potential.append(PotentialTerm(int(t["coef"]), tuple(t["word"])))
            else:
                potential.append(PotentialTerm(int(t["coef"]), _word_from_vertex_cycle(arrows, t["cycle"])))
        return cls(int(data["vertices"]), arrows, tuple(potential))


def _word_from_vertex_cycle(arrows, cycle) -> tuple[str, ...]:
    word = []
    for x, y in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
        cands = sorted(a.name for a in arrows if a.source == x and a.target == y)
        if len(cands) != 1:
            raise ArgumentError(f"vertex cycle {cycle} does not determine arrows uniquely; give 'word'")
        word.append(cands[0])
    return tuple(word)


def exchange_matrix(q: QuiverWithPotential) -> np.ndarray:
    return q.exchange_matrix()


def is_skew_symmetric(B: np.ndarray) -> bool:
    B = np.asarray(B)
    return B.shape[0] == B.shape[1] and bool(np.array_equal(B, -B.T))


def mutate(B, k: int) -> np.ndarray:
    """Fomin-Zelevinsky mutation of a skew-symmetric matrix at vertex k (0-based)."""
    B = np.asarray(B, dtype=np.int64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ArgumentError("exchange matrix must be square")
    if not 0 <= k < B.shape[0]:
        raise ArgumentError(f"vertex {k} out of range 0..{B.shape[0] - 1}")
    return _kernels.mutate(B, k)


def mutate_reference(B, k: int) -> list[list[int]]:
    """Entry-by-entry mutation rule in plain Python (test oracle)."""
    B = [[int(x) for x in row] for row in np.asarray(B)]
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if k in (i, j):
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


def euler_pairing_cy3(q: QuiverWithPotential) -> np.ndarray:
    """chi_ij = a_ij - a_ji; skew-symmetric by construction."""
    a = q.arrow_counts()
    return a - a.T


def a_k_quiver(k: int) -> QuiverWithPotential:
    """Linear A_k quiver 0 -> 1 -> ... -> k-1 with zero potential."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    return QuiverWithPotential(k, tuple(Arrow(f"a{i}", i, i + 1) for i in range(k - 1)))


def double_bubble_quiver() -> QuiverWithPotential:
    """Two vertices, e: 0 -> 1 and f: 1 -> 0, potential (ef)^2."""
    arrows = (Arrow("e", 0, 1), Arrow("f", 1, 0))
    return QuiverWithPotential(2, arrows, (PotentialTerm(1, ("e", "f", "e", "f")),))


def conifold_quiver() -> QuiverWithPotential:
    """Two arrows each way, potential efe'f' - ef'e'f."""
    arrows = (Arrow("e", 0, 1), Arrow("e'", 0, 1), Arrow("f", 1, 0), Arrow("f'", 1, 0))
    potential = (
        PotentialTerm(1, ("e", "f", "e'", "f'")),
        PotentialTerm(-1, ("e", "f'", "e'", "f")),
    )
    return QuiverWithPotential(2, arrows, potential)


def flip_mutation_compatible(t, arc: int) -> bool:
    """Does flipping ``arc`` mutate the dual exchange matrix at ``arc``?

    Quiver vertices are arc ids; the flipped arc keeps its id.
    """
    from .surface import dual_quiver_with_potential, flip

    before = dual_quiver_with_potential(t).exchange_matrix()
    after = dual_quiver_with_potential(flip(t, arc)).exchange_matrix()
    return bool(np.array_equal(after, mutate(before, arc)))
