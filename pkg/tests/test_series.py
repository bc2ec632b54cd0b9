from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import z2_spheres
from torusgrowth.series import (
    CertificationError,
    PolyT,
    RationalT,
    SeriesError,
    assemble_growth_series,
    bareiss_det,
    bareiss_solve,
    base_vectors,
    class_counts_by_degree,
    expand_coeffs,
    linear_recurrence_holds,
    summed_class_series,
    transfer_matrix,
    truncated_neumann,
)

coeffs = st.lists(st.integers(-9, 9), max_size=6)
polys = st.builds(PolyT, coeffs)
t = sympy.symbols("t")


def _sym(p: PolyT):
    return sum(c * t**i for i, c in enumerate(p.c))


@given(polys, polys)
def test_poly_ring(a, b):
    assert sympy.expand(_sym(a + b)) == sympy.expand(_sym(a) + _sym(b))
    assert sympy.expand(_sym(a * b)) == sympy.expand(_sym(a) * _sym(b))


@given(polys, polys.filter(bool))
def test_divmod(a, b):
    q, r = (a * b).divmod(b)
    assert q == a and not r


@settings(deadline=None)
@given(polys, polys.filter(lambda p: p[0] != 0), polys, polys.filter(lambda p: p[0] != 0))
def test_rational_add_expands_termwise(a, b, c, d):
    x, y = RationalT(a, b), RationalT(c, d)
    lhs = (x + y) * RationalT(b * d)
    assert lhs == RationalT(a * d + c * b)


def test_expand_examples():
    one_minus_t = PolyT([1, -1])
    assert expand_coeffs(RationalT(1, one_minus_t), 3) == [1, 1, 1, 1]
    assert expand_coeffs(RationalT(PolyT([1, 1]), one_minus_t * one_minus_t), 3) == [1, 3, 5, 7]
    z2 = RationalT(PolyT([1, 1]) ** 2, one_minus_t ** 2)
    assert expand_coeffs(z2, 8) == z2_spheres(8)
    with pytest.raises(SeriesError):
        expand_coeffs(RationalT(1, PolyT([0, 1])), 2)


def test_bareiss_against_sympy():
    rows = [[PolyT([1, 2]), PolyT([0, 1]), PolyT([3])],
            [PolyT([2]), PolyT([1, 0, 1]), PolyT([0, -1])],
            [PolyT([0, 0, 1]), PolyT([5]), PolyT([1, 1])]]
    M = sympy.Matrix([[_sym(e) for e in r] for r in rows])
    assert sympy.expand(_sym(bareiss_det(rows)) - M.det()) == 0
    b = [PolyT([1]), PolyT([0, 1]), PolyT([2])]
    xs = bareiss_solve(rows, b)
    for r, rhs in zip(rows, b):
        acc = RationalT(PolyT())
        for e, x in zip(r, xs):
            acc = acc + x * e
        assert acc == RationalT(rhs)


def test_base_vectors_k2():
    d0, e1 = base_vectors(2, "n<=0")
    assert d0.block("S") == [PolyT([0, 1, 1]), PolyT(), PolyT()]
    assert d0.block("T") == [PolyT([0, 0, 0, 1]), PolyT(), PolyT([0, 0, 0, 0, 1])]
    assert e1.block("E") == [PolyT([0, 0, 0, 0, 1]), PolyT(), PolyT([0, 0, 0, 1])]


def test_transfer_blocks_k2():
    M = transfer_matrix(2)
    assert M[9][10] == PolyT([0, 0, 0, 1])   # P_EE[0][1]
    assert M[5][2] == PolyT([0, 0, 0, 0, 1])  # P_US[2][2]
    for i in range(6, 12):
        assert all(not M[i][j] for j in range(6))
    for row in M:
        assert all(e[0] == 0 for e in row)


def test_counts_recursion_examples():
    assert class_counts_by_degree(2, 0, 0) == base_vectors(2, "n<=0")[0]
    assert class_counts_by_degree(2, 0, 1).block("E") == [PolyT([0, 0, 0, 0, 1]), PolyT(), PolyT([0, 0, 0, 1])]
    assert class_counts_by_degree(2, -2, 3) == class_counts_by_degree(2, 0, 3).shift(2)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("n", [-2, 0, 1, 4])
def test_summed_matches_partial_sums(k, n):
    N = 12
    acc = [[0] * (N + 1) for _ in range(12)]
    for d in range(N + 2):
        for i, row in enumerate(class_counts_by_degree(k, n, d).coefficients(N)):
            for j, c in enumerate(row):
                acc[i][j] += c
    assert summed_class_series(k, n).coefficients(N) == acc


def test_neumann_zero_seed():
    M = transfer_matrix(2)
    from torusgrowth.series import ClassVector

    assert truncated_neumann(M, ClassVector(), 5) == [[0] * 6 for _ in range(12)]


def test_recurrence_helper():
    fib = [1, 1, 2, 3, 5, 8, 13]
    assert linear_recurrence_holds(PolyT([1, -1, -1]), fib) == []
    assert linear_recurrence_holds(PolyT([1, -1, -1]), fib[:-1] + [14]) == [6]


def test_certification_reports_radius():
    with pytest.raises(CertificationError) as info:
        assemble_growth_series(2, 3)
    e = info.value
    assert e.as_dict()["first_failing_radius"] == e.radius and e.expected != e.got
    res = assemble_growth_series(2, 3, unchecked=True)
    assert res.verified_radius == -1 and res.coefficients[0] == 1
