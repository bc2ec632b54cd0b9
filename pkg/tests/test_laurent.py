from __future__ import annotations

from hypothesis import given, strategies as st

from torusgrowth.group import GroupParams, bfs_ball
from torusgrowth.laurent import (
    LaurentPoly,
    evaluate_rep,
    format_poly,
    long_relation,
    n_length,
    parse_poly,
    relation_shift,
    word_representative,
)

P2 = GroupParams(2)
polys = st.builds(
    lambda lo, cs: LaurentPoly.from_ascending(cs, lo),
    st.integers(-6, 4),
    st.lists(st.integers(-6, 6), max_size=8),
)


def test_evaluate_basis():
    assert evaluate_rep(P2, LaurentPoly.constant(1)) == (0, 1)
    assert evaluate_rep(P2, LaurentPoly.monomial(1)) == (-1, 5)
    assert evaluate_rep(P2, LaurentPoly.monomial(-1)) == (1, 0)


def test_n_length_examples():
    assert n_length(LaurentPoly.constant(1), 0)[0] == 1
    assert n_length(LaurentPoly.monomial(1), 1)[0] == 2
    assert n_length(LaurentPoly.monomial(1), 0)[0] == 3


def test_relations():
    assert relation_shift(2).ascending() == [1, -5, 1]
    assert relation_shift(2, -1) == relation_shift(2).shift(-1)
    assert long_relation(2, 0, 0).ascending()[::-1] == [-1, 5, -1]
    assert long_relation(2, 0, 1).ascending()[::-1] == [-1, 4, 4, -1]
    assert long_relation(2, 0, 2).ascending()[::-1] == [-1, 4, 3, 4, -1]


@given(polys, st.integers(2, 5), st.integers(-4, 4), st.integers(0, 3))
def test_relations_vanish(F, k, d, run):
    p = GroupParams(k)
    x = evaluate_rep(p, F)
    assert evaluate_rep(p, F + relation_shift(k, d)) == x
    assert evaluate_rep(p, F + long_relation(k, d, run)) == x


@given(polys, polys)
def test_evaluate_additive(F, G):
    a, b = evaluate_rep(P2, F), evaluate_rep(P2, G)
    assert evaluate_rep(P2, F + G) == (a[0] + b[0], a[1] + b[1])


@given(polys)
def test_format_roundtrip(F):
    assert parse_poly(format_poly(F)) == F


def test_geodesic_representatives_realize_distance():
    table = bfs_ball(P2, 6, keep_words=True)
    for g, d in table.distances.items():
        F, n = word_representative(table.geodesic(g))
        assert n == g.n and evaluate_rep(P2, F) == g.x
        assert n_length(F, n)[0] == d
