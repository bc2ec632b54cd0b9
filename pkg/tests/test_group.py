from __future__ import annotations

from hypothesis import given, strategies as st

from oracles import word_ball_sizes
from torusgrowth.group import (
    BudgetExceeded,
    GroupElement,
    GroupParams,
    bfs_ball,
    identity,
    invert,
    multiply,
    t_action,
    word_element,
)

import pytest

P2 = GroupParams(2)
elements = st.builds(GroupElement, st.integers(-4, 4), st.integers(-50, 50), st.integers(-50, 50))


def test_t_action_on_basis():
    assert t_action(P2, (1, 0), 1) == (0, 1)
    assert t_action(P2, (0, 1), 1) == (-1, 5)
    assert t_action(P2, (3, -7), 0) == (3, -7)


@given(st.integers(2, 6), st.integers(-5, 5), st.integers(-5, 5), st.integers(-20, 20), st.integers(-20, 20))
def test_t_action_composes(k, m, l, x0, x1):
    p = GroupParams(k)
    assert t_action(p, t_action(p, (x0, x1), m), l) == t_action(p, (x0, x1), m + l)


def test_conjugation_and_fiber():
    t = GroupElement(1, 0, 0)
    a = GroupElement(0, 1, 0)
    assert multiply(P2, multiply(P2, t, a), invert(P2, t)) == GroupElement(0, 0, 1)
    assert multiply(P2, a, GroupElement(0, 0, 1)) == GroupElement(0, 1, 1)
    assert invert(P2, GroupElement(1, 0, 1)) == GroupElement(-1, -1, 0)


@given(elements, elements, elements)
def test_associative(g, h, u):
    assert multiply(P2, multiply(P2, g, h), u) == multiply(P2, g, multiply(P2, h, u))


@given(elements)
def test_inverse(g):
    assert multiply(P2, g, invert(P2, g)) == identity()
    assert multiply(P2, invert(P2, g), g) == identity()


@pytest.mark.parametrize("k", [2, 3])
def test_ball_matches_word_enumeration(k):
    table = bfs_ball(GroupParams(k), 4)
    assert table.ball_sizes == word_ball_sizes(k, 4)
    assert table.sphere_sizes[:2] == [1, 6]


def test_geodesic_words_have_bfs_length():
    table = bfs_ball(P2, 5, keep_words=True)
    for g, d in table.distances.items():
        w = table.geodesic(g)
        assert len(w) == d and word_element(P2, w) == g


def test_budget():
    with pytest.raises(BudgetExceeded):
        bfs_ball(P2, 6, max_visited=100)
    with pytest.raises(ValueError):
        GroupParams(1)
