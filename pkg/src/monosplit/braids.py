"""Braid words, the Artin action on free groups, and arcs in the punctured disc.

Punctures sit at 1..m on the real line and the base arc ``b_i`` is the
segment from i to i+1.  ``x_k`` is the loop from a base point at the top of
the disc around puncture k, so ``x_1 x_2 ... x_m`` is the boundary loop.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import freegroup as fg
from .errors import ArgumentError


@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple[int, ...]  # +i for sigma_i, -i for its inverse

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.m < 1:
            raise ArgumentError("need at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.m:
                raise ArgumentError(f"generator {x} out of range for {self.m} strands")

    @classmethod
    def parse(cls, m: int, text: str) -> BraidWord:
        """Read a word such as ``"s1 S2 s1"``; capitals are inverses."""
        tokens = re.findall(r"[sS]\d+|\S", text)
        letters = []
        for tok in tokens:
            if not re.fullmatch(r"[sS]\d+", tok):
                raise ArgumentError(f"bad braid letter {tok!r}")
            i = int(tok[1:])
            letters.append(i if tok[0] == "s" else -i)
        return cls(m, tuple(letters))

    @classmethod
    def identity(cls, m: int) -> BraidWord:
        return cls(m, ())

    def __mul__(self, other: BraidWord) -> BraidWord:
        _check_same(self, other)
        return BraidWord(self.m, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.m, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.m, base.letters * abs(k))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(("s" if x > 0 else "S") + str(abs(x)) for x in self.letters)


def _check_same(*ws) -> None:
    if len({w.m for w in ws}) != 1:
        raise ArgumentError("strand counts differ")


def sigma(m: int, i: int, sign: int = 1) -> BraidWord:
    return BraidWord(m, (i * sign,))


def _letter_images(m: int, s: int) -> list[fg.Word]:
    img: list[fg.Word] = [()] + [(k,) for k in range(1, m + 1)]
    i = abs(s)
    if s > 0:
        img[i] = (i, i + 1, -i)
        img[i + 1] = (i,)
    else:
        img[i] = (i + 1,)
        img[i + 1] = (-(i + 1), i, i + 1)
    return img


def generator_images(w: BraidWord) -> tuple[fg.Word, ...]:
    """Images of x_1..x_m (index 0 is a dummy), letters acting right to left."""
    return _generator_images(w.m, w.letters)


@lru_cache(maxsize=4096)
def _generator_images(m: int, letters: tuple[int, ...]) -> tuple[fg.Word, ...]:
    table: list[fg.Word] = [()] + [(k,) for k in range(1, m + 1)]
    for s in letters:
        # phi_{p s}(x) = phi_p(phi_s(x))
        table = [()] + [fg.substitute(img, table) for img in _letter_images(m, s)[1:]]
    return tuple(table)


def artin_apply(w: BraidWord, x: fg.Word, m: int | None = None) -> fg.Word:
    if m is not None and m != w.m:
        raise ArgumentError("strand counts differ")
    if any(abs(g) > w.m or g == 0 for g in x):
        raise ArgumentError(f"free word uses a generator outside 1..{w.m}")
    return fg.substitute(fg.reduce(x), generator_images(w))


def braid_eq(w1: BraidWord, w2: BraidWord) -> bool:
    _check_same(w1, w2)
    return generator_images(w1) == generator_images(w2)


def is_trivial(w: BraidWord) -> bool:
    return braid_eq(w, BraidWord.identity(w.m))


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Strand permutation as a 1-based image tuple: perm[k-1] is where k goes."""
    perm = list(range(1, w.m + 1))
    # apply letters right to left to positions
    for s in reversed(w.letters):
        i = abs(s)
        perm = [i + 1 if p == i else i if p == i + 1 else p for p in perm]
    return tuple(perm)


def is_pure(w: BraidWord) -> bool:
    return permutation(w) == tuple(range(1, w.m + 1))


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class Arc:
    braid: BraidWord
    base: int

    def __post_init__(self):
        if not 1 <= self.base < self.braid.m:
            raise ArgumentError(f"base arc b_{self.base} needs 1 <= i < {self.braid.m}")

    @classmethod
    def base_arc(cls, m: int, i: int) -> Arc:
        return cls(BraidWord.identity(m), i)

    @property
    def m(self) -> int:
        return self.braid.m

    def to_json(self) -> dict:
        return {"braid": str(self.braid), "base": self.base}

    @classmethod
    def from_json(cls, m: int, data: dict) -> Arc:
        text = data.get("braid", "")
        return cls(BraidWord.parse(m, "" if text == "1" else text), int(data["base"]))


def apply_to_arc(w: BraidWord, a: Arc) -> Arc:
    return Arc(w * a.braid, a.base)


def endpoints(a: Arc) -> frozenset[int]:
    perm = permutation(a.braid)
    return frozenset((perm[a.base - 1], perm[a.base]))


def braid_twist(a: Arc) -> BraidWord:
    return a.braid * sigma(a.m, a.base) * a.braid.inverse()


def arc_eq(a1: Arc, a2: Arc) -> bool:
    _check_same(a1.braid, a2.braid)
    return endpoints(a1) == endpoints(a2) and braid_eq(braid_twist(a1), braid_twist(a2))


def boundary_curve(a: Arc) -> fg.Word:
    """Cyclically reduced word for the boundary of a neighbourhood of ``a``."""
    i = a.base
    return fg.cyclic_reduce(artin_apply(a.braid, (i, i + 1)))


def _to_interval_basis(w: fg.Word) -> fg.Word:
    """Rewrite in g_j = x_1 ... x_j, whose letters count real-axis crossings.

    g_j crosses the segment (j, j+1) once, so a cyclically reduced word in the
    g's meets each segment minimally.
    """
    images: list[fg.Word] = [()]
    for k in range(1, max((abs(x) for x in w), default=0) + 1):
        images.append(fg.reduce(((-(k - 1),) if k > 1 else ()) + (k,)))
    return fg.cyclic_reduce(fg.substitute(w, images))


def interior_intersection(a1: Arc, a2: Arc) -> int:
    """Minimal number of transverse crossings between the interiors of two arcs."""
    _check_same(a1.braid, a2.braid)
    if arc_eq(a1, a2):
        return 0
    # move a2 to its base arc
    gamma = a2.braid.inverse() * a1.braid
    curve = _to_interval_basis(boundary_curve(Arc(gamma, a1.base)))
    j = a2.base
    crossings = sum(1 for x in curve if abs(x) == j)
    shared = len(endpoints(a1) & endpoints(a2))
    k, odd = divmod(crossings - shared, 2)
    if odd or k < 0:
        raise ArithmeticError(f"inconsistent crossing count {crossings} with {shared} shared endpoints")
    return k


@dataclass(frozen=True)
class RankClass:
    kind: str  # Equal, Rank0, Rank1, Rank2SharedEndpoints, Rank2Interior, Higher
    shared: int = 0
    interior: int = 0

    def __str__(self) -> str:
        if self.kind == "Higher":
            return f"Higher(shared={self.shared}, interior={self.interior})"
        return self.kind


def hf_rank_class(a1: Arc, a2: Arc) -> RankClass:
    if arc_eq(a1, a2):
        return RankClass("Equal", 2, 0)
    shared = len(endpoints(a1) & endpoints(a2))
    k = interior_intersection(a1, a2)
    if k == 0 and shared < 3:
        kind = {0: "Rank0", 1: "Rank1", 2: "Rank2SharedEndpoints"}[shared]
        return RankClass(kind, shared, 0)
    if k == 1 and shared == 0:
        return RankClass("Rank2Interior", 0, 1)
    return RankClass("Higher", shared, k)


# ---------------------------------------------------------------------------
# pure braids


def pure_generator(m: int, i: int, j: int) -> BraidWord:
    """A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^{-1}, 1 <= i < j <= m."""
    if not 1 <= i < j <= m:
        raise ArgumentError(f"need 1 <= i < j <= {m}")
    conj = BraidWord(m, tuple(range(j - 1, i, -1)))
    return conj * BraidWord(m, (i, i)) * conj.inverse()


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    return a * b * a.inverse() * b.inverse()


def forget_strand(w: BraidWord, strand: int) -> BraidWord:
    """Delete the strand that starts at position ``strand`` from a pure braid."""
    if not is_pure(w):
        raise ArgumentError("forgetting a strand needs a pure braid")
    if not 1 <= strand <= w.m:
        raise ArgumentError(f"strand {strand} out of range 1..{w.m}")
    # track which original strand occupies each position, scanning left to right
    pos = list(range(1, w.m + 1))
    out = []
    for s in w.letters:
        i = abs(s)
        a, b = pos[i - 1], pos[i]
        if strand not in (a, b):
            # position of this crossing once the forgotten strand is removed
            shift = 1 if pos.index(strand) < i - 1 else 0
            out.append((i - shift) * (1 if s > 0 else -1))
        pos[i - 1], pos[i] = b, a
    return BraidWord(w.m - 1, tuple(out))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def in_kernel(w: BraidWord, forget: tuple[int, int] = (1, 2)) -> bool:
    """Trivial after forgetting each of the two designated strands (m = 3)."""
    if w.m != 3:
        raise ArgumentError("kernel membership is defined on three strands")
    return all(exponent_sum(forget_strand(w, s)) == 0 for s in forget)
