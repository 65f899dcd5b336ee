from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monosplit import braids as br
from monosplit.errors import ArgumentError
from polyline_oracle import oracle_intersection

B = br.BraidWord.parse
base = br.Arc.base_arc


@st.composite
def braid_words(draw, m=None, max_len=12):
    m = m or draw(st.integers(2, 5))
    letters = draw(st.lists(st.integers(1, m - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len))
    return br.BraidWord(m, tuple(letters))


def test_letter_rules():
    assert br.artin_apply(B(2, "s1"), (1,)) == (1, 2, -1)
    assert br.artin_apply(B(2, "s1"), (2,)) == (1,)
    assert br.artin_apply(B(2, "S1"), (1,)) == (2,)
    assert br.artin_apply(B(2, "S1"), (2,)) == (-2, 1, 2)


def test_relations():
    assert br.braid_eq(B(3, "s1 s2 s1"), B(3, "s2 s1 s2"))
    assert br.braid_eq(B(4, "s1 s3"), B(4, "s3 s1"))
    assert not br.braid_eq(B(3, "s1"), B(3, "s2"))
    assert br.is_trivial(B(3, "s1 S1 s2 S2"))


def test_parse_and_print():
    w = B(4, "s1 S3 s2")
    assert w.letters == (1, -3, 2)
    assert str(w) == "s1 S3 s2"
    with pytest.raises(ArgumentError):
        B(3, "s3")
    with pytest.raises(ArgumentError):
        B(3, "t1")


def test_strand_mismatch():
    with pytest.raises(ArgumentError):
        br.braid_eq(B(3, "s1"), B(4, "s1"))


def test_permutation():
    assert br.permutation(B(3, "s1")) == (2, 1, 3)
    assert br.permutation(B(3, "s1 s1")) == (1, 2, 3)
    p = br.permutation(B(3, "s1 s2"))
    assert sorted(p) == [1, 2, 3] and all(p[i] != i + 1 for i in range(3))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_group_action_law(data):
    m = data.draw(st.integers(2, 5))
    w1 = data.draw(braid_words(m))
    w2 = data.draw(braid_words(m))
    x = tuple(data.draw(st.lists(st.integers(1, m).flatmap(lambda i: st.sampled_from([i, -i])), min_size=1, max_size=4)))
    assert br.artin_apply(w1 * w2, x) == br.artin_apply(w1, br.artin_apply(w2, x))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_congruence(data):
    m = data.draw(st.integers(3, 4))
    w = data.draw(braid_words(m, 6))
    u, v = B(m, "s1 s2 s1"), B(m, "s2 s1 s2")
    assert br.braid_eq(w * u, w * v) and br.braid_eq(u * w, v * w)
    assert br.is_trivial(w * w.inverse())


def test_arc_examples():
    assert br.arc_eq(br.apply_to_arc(B(3, "s1"), base(3, 1)), base(3, 1))
    assert br.endpoints(br.apply_to_arc(B(3, "s2"), base(3, 1))) == {1, 3}
    full = B(4, "s1 s2 s3 s1 s2 s1") ** 2
    for i in (1, 2, 3):
        assert br.arc_eq(br.apply_to_arc(full, base(4, i)), base(4, i))
    assert not br.arc_eq(base(3, 1), base(3, 2))


def test_twist():
    assert br.braid_eq(br.braid_twist(base(3, 2)), B(3, "s2"))
    ta, tb = br.braid_twist(base(3, 1)), br.braid_twist(base(3, 2))
    assert br.braid_eq(ta * tb * ta, tb * ta * tb)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_twist_equivariance(data):
    m = data.draw(st.integers(3, 5))
    w = data.draw(braid_words(m, 6))
    a = br.Arc(data.draw(braid_words(m, 6)), data.draw(st.integers(1, m - 1)))
    lhs = br.braid_twist(br.apply_to_arc(w, a))
    rhs = w * br.braid_twist(a) * w.inverse()
    assert br.braid_eq(lhs, rhs)


def test_intersection_examples():
    assert br.interior_intersection(base(3, 1), base(3, 2)) == 0
    assert br.interior_intersection(base(4, 1), base(4, 3)) == 0
    a1 = br.apply_to_arc(B(4, "s2"), base(4, 1))
    a2 = br.apply_to_arc(B(4, "s3"), base(4, 2))
    assert br.interior_intersection(a1, a2) == 1
    assert br.interior_intersection(base(3, 1), br.apply_to_arc(B(3, "s2 s2"), base(3, 1))) == 0


def test_intersection_matches_polyline_oracle():
    rng = random.Random(5)
    seen = set()
    for _ in range(250):
        m = rng.randint(3, 5)
        w1 = tuple(rng.choice((1, -1)) * rng.randint(1, m - 1) for _ in range(rng.randint(0, 5)))
        w2 = tuple(rng.choice((1, -1)) * rng.randint(1, m - 1) for _ in range(rng.randint(0, 5)))
        i1, i2 = rng.randint(1, m - 1), rng.randint(1, m - 1)
        a1, a2 = br.Arc(br.BraidWord(m, w1), i1), br.Arc(br.BraidWord(m, w2), i2)
        if br.arc_eq(a1, a2):
            continue
        k = br.interior_intersection(a1, a2)
        seen.add(k)
        assert k == oracle_intersection(m, w1, i1, w2, i2), (m, w1, i1, w2, i2)
    assert {0, 1, 2, 3} <= seen


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_intersection_symmetric_and_invariant(data):
    m = data.draw(st.integers(3, 5))
    a1 = br.Arc(data.draw(braid_words(m, 5)), data.draw(st.integers(1, m - 1)))
    a2 = br.Arc(data.draw(braid_words(m, 5)), data.draw(st.integers(1, m - 1)))
    w = data.draw(braid_words(m, 5))
    k = br.interior_intersection(a1, a2)
    assert k == br.interior_intersection(a2, a1)
    assert k == br.interior_intersection(br.apply_to_arc(w, a1), br.apply_to_arc(w, a2))
    c = br.hf_rank_class(a1, a2)
    assert c == br.hf_rank_class(a2, a1)
    assert c == br.hf_rank_class(br.apply_to_arc(w, a1), br.apply_to_arc(w, a2))


def test_rank_classes():
    assert br.hf_rank_class(base(3, 1), base(3, 2)).kind == "Rank1"
    assert br.hf_rank_class(base(4, 1), base(4, 3)).kind == "Rank0"
    assert br.hf_rank_class(base(3, 1), br.apply_to_arc(B(3, "s2 s2"), base(3, 1))).kind == "Rank2SharedEndpoints"
    a1 = br.apply_to_arc(B(4, "s2"), base(4, 1))
    a2 = br.apply_to_arc(B(4, "s3"), base(4, 2))
    assert br.hf_rank_class(a1, a2).kind == "Rank2Interior"
    assert br.hf_rank_class(base(3, 1), base(3, 1)).kind == "Equal"
    wrapped = br.apply_to_arc(B(4, "s2 s2 s2 s2"), base(4, 1))
    assert br.hf_rank_class(wrapped, base(4, 3)) == br.RankClass("Higher", 0, 2)
    both = br.apply_to_arc(B(4, "s1 s1 s3 s3"), base(4, 2))
    assert br.hf_rank_class(both, base(4, 2)) == br.RankClass("Higher", 2, 1)


def test_all_arcs_equal_on_two_strands():
    a = br.apply_to_arc(B(2, "s1 s1 S1 s1"), base(2, 1))
    assert br.hf_rank_class(a, base(2, 1)).kind == "Equal"


def test_pure_braids_and_forgetting():
    a12, a13, a23 = (br.pure_generator(3, i, j) for i, j in ((1, 2), (1, 3), (2, 3)))
    for g in (a12, a13, a23):
        assert br.is_pure(g)
    assert br.braid_eq(br.forget_strand(a12, 3), B(2, "s1 s1"))
    assert br.is_trivial(br.forget_strand(a23, 3))
    assert br.is_trivial(br.forget_strand(a13, 2)) is False
    c = br.commutator(a12, a23)
    assert br.in_kernel(c) and not br.is_trivial(c)
    # forgetting strand 1 or 2 kills A_12; the other generators survive one of them
    assert br.in_kernel(a12)
    assert not br.in_kernel(a13) and not br.in_kernel(a23)
    with pytest.raises(ArgumentError):
        br.forget_strand(B(3, "s1"), 1)


def test_kernel_is_conjugation_stable():
    rng = random.Random(8)
    gens = [br.pure_generator(3, i, j) for i, j in ((1, 2), (1, 3), (2, 3))]
    c = br.commutator(gens[0], gens[2])
    for _ in range(30):
        g = br.BraidWord(3, ())
        for _ in range(rng.randint(1, 4)):
            g = g * rng.choice(gens) ** rng.choice((1, -1))
        assert br.in_kernel(g * c * g.inverse())


def test_forgetting_is_a_homomorphism():
    rng = random.Random(9)
    gens = [br.pure_generator(3, i, j) for i, j in ((1, 2), (1, 3), (2, 3))]
    for _ in range(30):
        u = gens[rng.randrange(3)] ** rng.choice((1, -1))
        v = gens[rng.randrange(3)] ** rng.choice((1, -1))
        for s in (1, 2, 3):
            lhs = br.forget_strand(u * v, s)
            rhs = br.forget_strand(u, s) * br.forget_strand(v, s)
            assert br.braid_eq(lhs, rhs)
