from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monosplit.errors import ArgumentError
from monosplit.quiver import (
    Arrow,
    PotentialTerm,
    QuiverWithPotential,
    a_k_quiver,
    conifold_quiver,
    double_bubble_quiver,
    euler_pairing_cy3,
    is_skew_symmetric,
    mutate,
    mutate_reference,
)


@st.composite
def skew_matrices(draw, max_n=6, max_entry=3):
    n = draw(st.integers(1, max_n))
    B = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.integers(-max_entry, max_entry))
            B[i, j], B[j, i] = x, -x
    return B


@settings(max_examples=200, deadline=None)
@given(skew_matrices(), st.data())
def test_mutation_matches_reference(B, data):
    k = data.draw(st.integers(0, B.shape[0] - 1))
    assert mutate(B, k).tolist() == mutate_reference(B, k)


@settings(max_examples=200, deadline=None)
@given(skew_matrices(), st.data())
def test_mutation_is_an_involution(B, data):
    k = data.draw(st.integers(0, B.shape[0] - 1))
    once = mutate(B, k)
    assert is_skew_symmetric(once)
    assert np.array_equal(mutate(once, k), B)


def test_a2_mutation():
    B = a_k_quiver(2).exchange_matrix()
    assert mutate(B, 0).tolist() == [[0, -1], [1, 0]]


def test_a3_mutation_creates_arrow():
    B = a_k_quiver(3).exchange_matrix()
    assert mutate(B, 1).tolist() == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]


def test_bad_vertex():
    with pytest.raises(ArgumentError):
        mutate(a_k_quiver(2).exchange_matrix(), 2)


def test_examples():
    assert double_bubble_quiver().exchange_matrix().tolist() == [[0, 0], [0, 0]]
    assert double_bubble_quiver().arrow_counts().tolist() == [[0, 1], [1, 0]]
    assert conifold_quiver().arrow_counts().tolist() == [[0, 2], [2, 0]]
    chi = euler_pairing_cy3(a_k_quiver(3))
    assert is_skew_symmetric(chi)


def test_potential_must_be_cycles():
    arrows = (Arrow("a", 0, 1), Arrow("b", 1, 2))
    with pytest.raises(ArgumentError):
        QuiverWithPotential(3, arrows, (PotentialTerm(1, ("a", "b")),))
    with pytest.raises(ArgumentError):
        QuiverWithPotential(2, (Arrow("a", 0, 5),))


def test_json_roundtrip():
    q = conifold_quiver()
    back = QuiverWithPotential.from_json(q.to_json())
    assert back == q
