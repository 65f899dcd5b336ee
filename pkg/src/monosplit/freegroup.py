"""Reduced words in a free group.

A word is a tuple of nonzero ints; ``k`` is the k-th generator and ``-k`` its
inverse.
"""
from __future__ import annotations

from collections.abc import Iterable

Word = tuple[int, ...]


def reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def mul(*words: Word) -> Word:
    return reduce(x for w in words for x in w)


def cyclic_reduce(w: Word) -> Word:
    w = reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def substitute(w: Word, images: dict[int, Word] | list[Word]) -> Word:
    """Apply the endomorphism sending generator k to ``images[k]``.

    ``images`` is indexed by generator number (a list must carry a dummy at 0).
    """
    out: list[int] = []
    for x in w:
        img = images[x] if x > 0 else inverse(images[-x])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def to_str(w: Word, names: str = "x") -> str:
    if not w:
        return "1"
    return " ".join(f"{names}{abs(x)}" + ("^-1" if x < 0 else "") for x in w)
