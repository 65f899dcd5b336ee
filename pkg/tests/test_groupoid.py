from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from monosplit import groupoid as gp
from monosplit.braids import braid_eq
from monosplit.errors import ArgumentError

P = gp.GroupoidMorphism.parse


def random_morphism(rng, source=None, max_len=8):
    src = source or rng.choice(gp.CHAMBERS)
    word = tuple((rng.choice((1, 2)), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len)))
    return gp.GroupoidMorphism(src, word)


def test_hexagon_layout():
    assert gp.neighbour("L", 1) == "L1" and gp.neighbour("L", 2) == "L2"
    walk, c = [], "L"
    for i in (1, 2, 1, 2, 1, 2):
        c = gp.neighbour(c, i)
        walk.append(c)
    assert walk == ["L1", "L12", "L121", "L21", "L2", "L"]


def test_compose_and_invert():
    f = P("L1: F1")
    assert f.target == "L"
    inv = gp.invert(f)
    assert str(inv) == "L: f1" and inv.target == "L1"
    assert gp.morphism_eq(gp.compose(f, inv), gp.identity("L"))
    with pytest.raises(ArgumentError):
        gp.compose(f, f)
    around = P("L: F1 F2 F1 F2 F1 F2")
    assert around.is_loop()


def test_word_problem_examples():
    assert gp.morphism_eq(P("L121: F1 F2 F1"), P("L121: F2 F1 F2"))
    assert not gp.morphism_eq(P("L: F1 F1"), gp.identity("L"))
    assert not gp.morphism_eq(P("L: F1 F1"), P("L: F2 F2"))
    with pytest.raises(ArgumentError):
        gp.morphism_eq(P("L: F1"), P("L: F2"))


def test_k_matrix_examples():
    assert gp.k_matrix(P("L1: F1")).tolist() == [[-1, 1], [0, 1]]
    assert gp.k_matrix(P("L121: F1 F2 F1")).tolist() == [[0, -1], [-1, 0]]
    assert gp.k_matrix(P("L121: F2 F1 F2")).tolist() == [[0, -1], [-1, 0]]
    assert gp.k_matrix(gp.identity("L")).tolist() == [[1, 0], [0, 1]]


def test_six_composites():
    mats = gp.six_composites()
    assert len({tuple(m.ravel()) for m in mats}) == 6
    assert any(np.array_equal(m, [[0, -1], [1, -1]]) for m in mats)
    rot = gp.R1 @ gp.R2
    assert np.array_equal(np.linalg.matrix_power(rot, 3), np.eye(2))
    assert gp.only_identity_is_permutation()
    for r in (gp.R1, gp.R2):
        assert np.array_equal(r @ r, np.eye(2))


def test_functoriality():
    rng = random.Random(4)
    for _ in range(200):
        g = random_morphism(rng)
        f = random_morphism(rng, g.target)
        h = gp.compose(f, g)
        assert braid_eq(gp.realization(h), gp.realization(f) * gp.realization(g))
        assert np.array_equal(gp.k_matrix(h), gp.k_matrix(f) @ gp.k_matrix(g))


def test_all_short_morphisms_hit_six_matrices():
    six = {tuple(m.ravel()) for m in gp.six_composites()}
    letters = [(i, e) for i in (1, 2) for e in (1, -1)]
    for n in range(6):
        for word in itertools.product(letters, repeat=n):
            m = gp.k_matrix(gp.GroupoidMorphism("L", word))
            assert tuple(m.ravel()) in six
    assert gp.k_matrices_up_to(8) <= six


def test_loops_are_pure_and_squares_act_trivially():
    rng = random.Random(6)
    for _ in range(50):
        f = random_morphism(rng, "L", 6)
        loop = gp.compose(gp.invert(f), f)
        assert gp.is_pure_loop(loop)
    for text in ("L: F1 F1", "L: F2 F2", "L: f1 f1"):
        sq = gp.compose(P(text), P(text))
        assert np.array_equal(gp.k_matrix(sq), np.eye(2))


def test_enumeration():
    assert gp.enumerate_to_base(0) == 1
    assert gp.enumerate_to_base(1) == 5
    by_source = gp.enumerate_to_base_by_source(1)
    assert by_source["L1"] == 2 and by_source["L2"] == 2 and by_source["L"] == 1


def test_vertex_group_embeds():
    """Distinct loops up to length 6 stay distinct after realization."""
    letters = [(i, e) for i in (1, 2) for e in (1, -1)]
    loops = [gp.GroupoidMorphism("L", w) for n in range(0, 7, 2) for w in itertools.product(letters, repeat=n)]
    loops = [f for f in loops if f.is_loop()]
    from monosplit.braids import generator_images
    keys = {generator_images(gp.realization(f)) for f in loops}
    # every loop is pure, and the realized braids are all distinct in B_3
    assert all(gp.is_pure_loop(f) for f in loops)
    assert len(keys) > 1


def test_parse_errors():
    with pytest.raises(ArgumentError):
        P("L: F3")
    with pytest.raises(ArgumentError):
        P("X: F1")
