"""The six-chamber groupoid of the A_2 arrangement.

Chambers are elements of S_3 written as reduced words in the simple
transpositions; crossing wall i from chamber w leads to w s_i, which walks the
hexagon L - L1 - L12 - L121 - L21 - L2 - L.  A morphism is a source chamber
plus letters (i, +1) for a positive crossing and (i, -1) for the inverse of
the positive crossing in the opposite direction.  Morphisms compose like
functors, so a path read left to right realizes the braid read right to left.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

import numpy as np

from .braids import BraidWord, braid_eq, generator_images, is_pure
from .errors import ArgumentError

CHAMBERS = ("L", "L1", "L12", "L121", "L21", "L2")
BASE = "L"

_PERM = {
    "L": (0, 1, 2),
    "L1": (1, 0, 2),
    "L2": (0, 2, 1),
}


def _compose_perm(p, q):
    return tuple(p[q[k]] for k in range(3))


def _perm_of(name: str) -> tuple[int, int, int]:
    out = (0, 1, 2)
    for ch in name[1:]:
        out = _compose_perm(out, _PERM["L" + ch])
    return out


_BY_PERM = {_perm_of(c): c for c in CHAMBERS}


def neighbour(chamber: str, wall: int) -> str:
    if chamber not in CHAMBERS or wall not in (1, 2):
        raise ArgumentError(f"bad chamber/wall {chamber!r}, {wall}")
    return _BY_PERM[_compose_perm(_perm_of(chamber), _PERM[f"L{wall}"])]


@dataclass(frozen=True)
class GroupoidMorphism:
    source: str
    word: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.source not in CHAMBERS:
            raise ArgumentError(f"unknown chamber {self.source!r}")
        object.__setattr__(self, "word", tuple((int(i), int(e)) for i, e in self.word))
        for i, e in self.word:
            if i not in (1, 2) or e not in (1, -1):
                raise ArgumentError(f"bad letter ({i},{e})")

    @property
    def target(self) -> str:
        c = self.source
        for i, _ in self.word:
            c = neighbour(c, i)
        return c

    def is_loop(self) -> bool:
        return self.target == self.source

    def __str__(self) -> str:
        letters = " ".join(("F" if e > 0 else "f") + str(i) for i, e in self.word)
        return f"{self.source}: {letters}".rstrip()

    @classmethod
    def parse(cls, text: str) -> GroupoidMorphism:
        """Read ``"L121: F2 F1 F2"``; lower-case letters are inverses."""
        head, _, rest = text.partition(":")
        word = []
        for tok in rest.split():
            mt = re.fullmatch(r"([Ff])([12])", tok)
            if not mt:
                raise ArgumentError(f"bad groupoid letter {tok!r}")
            word.append((int(mt.group(2)), 1 if mt.group(1) == "F" else -1))
        return cls(head.strip(), tuple(word))


def identity(chamber: str) -> GroupoidMorphism:
    return GroupoidMorphism(chamber, ())


def compose(f: GroupoidMorphism, g: GroupoidMorphism) -> GroupoidMorphism:
    """f after g."""
    if g.target != f.source:
        raise ArgumentError(f"cannot compose: target {g.target} != source {f.source}")
    return GroupoidMorphism(g.source, g.word + f.word)


def invert(f: GroupoidMorphism) -> GroupoidMorphism:
    return GroupoidMorphism(f.target, tuple((i, -e) for i, e in reversed(f.word)))


def realization(f: GroupoidMorphism) -> BraidWord:
    return BraidWord(3, tuple(i * e for i, e in reversed(f.word)))


def morphism_eq(f: GroupoidMorphism, g: GroupoidMorphism) -> bool:
    if (f.source, f.target) != (g.source, g.target):
        raise ArgumentError("morphisms have different source or target")
    return braid_eq(realization(f), realization(g))


def is_pure_loop(f: GroupoidMorphism) -> bool:
    if not f.is_loop():
        raise ArgumentError("purity is checked on loops")
    return is_pure(realization(f))


R1 = np.array([[-1, 1], [0, 1]], dtype=np.int64)
R2 = np.array([[1, 0], [1, -1]], dtype=np.int64)
_R = {1: R1, 2: R2}


def k_matrix(f: GroupoidMorphism) -> np.ndarray:
    out = np.eye(2, dtype=np.int64)
    for i, _ in f.word:
        out = _R[i] @ out
    return out


def six_composites() -> list[np.ndarray]:
    eye = np.eye(2, dtype=np.int64)
    return [eye, R1, R2, R1 @ R2, R2 @ R1, R1 @ R2 @ R1]


def is_permutation_matrix(a: np.ndarray) -> bool:
    a = np.asarray(a)
    return bool(np.isin(a, (0, 1)).all() and (a.sum(axis=0) == 1).all() and (a.sum(axis=1) == 1).all())


def only_identity_is_permutation() -> bool:
    perms = [a for a in six_composites() if is_permutation_matrix(a)]
    return len(perms) == 1 and np.array_equal(perms[0], np.eye(2))


def _key(a: np.ndarray) -> tuple[int, ...]:
    return tuple(int(x) for x in a.ravel())


def k_matrices_up_to(length: int) -> set[tuple[int, ...]]:
    """Every k_matrix value over morphisms of word length <= length.

    States (chamber, matrix) are finite, so the search saturates quickly and
    still covers every word.
    """
    seen = set()
    frontier = {(c, _key(np.eye(2, dtype=np.int64))) for c in CHAMBERS}
    seen |= frontier
    for _ in range(length):
        nxt = set()
        for c, key in frontier:
            mat = np.array(key, dtype=np.int64).reshape(2, 2)
            for i in (1, 2):
                st = (neighbour(c, i), _key(_R[i] @ mat))
                if st not in seen:
                    nxt.add(st)
        seen |= nxt
        frontier = nxt
    return {key for _, key in seen}


def enumerate_to_base_by_source(length: int) -> dict[str, int]:
    """Distinct morphisms of word length <= length ending at the base chamber."""
    if length < 0:
        raise ArgumentError("length must be >= 0")
    found: dict[str, set] = {c: set() for c in CHAMBERS}
    # walk backwards from the base: prepend letters to a path ending at L
    start = GroupoidMorphism(BASE, ())
    found[BASE].add(generator_images(realization(start)))
    seen = {(BASE, generator_images(realization(start)))}
    q = deque([(start, 0)])
    while q:
        f, n = q.popleft()
        if n == length:
            continue
        for i in (1, 2):
            for e in (1, -1):
                src = neighbour(f.source, i)
                g = GroupoidMorphism(src, ((i, e),) + f.word)
                key = (src, generator_images(realization(g)))
                if key in seen:
                    continue
                seen.add(key)
                found[src].add(key[1])
                q.append((g, n + 1))
    return {c: len(v) for c, v in found.items()}


def enumerate_to_base(length: int) -> int:
    return sum(enumerate_to_base_by_source(length).values())


def rigidity_report() -> dict:
    return {
        "six_composites": [a.tolist() for a in six_composites()],
        "distinct": len({_key(a) for a in six_composites()}) == 6,
        "only_identity_is_permutation": only_identity_is_permutation(),
        "braid_relation": bool(np.array_equal(R1 @ R2 @ R1, R2 @ R1 @ R2)),
    }
