"""Growth series assembled from class generating functions.

An element at level ``n >= 0`` is written as a polynomial part ``P`` that is
n-reduced and a mirrored principal part ``Q̄`` that is 0-reduced after the
``-|n|`` length offset is handed to ``P``.  Pairs are counted by the product
of the two sides' series, then the multiply represented elements listed in
the overcount tables are subtracted once per duplicate.  Levels ``n < 0``
mirror ``n > 0``.

The result is whatever these tables produce.  It is not adjusted to match the
breadth-first oracle; certification in :mod:`torusgrowth.series` reports the
first disagreeing radius.
"""
from __future__ import annotations

from functools import lru_cache

from .series import (
    ClassVector,
    PolyT,
    RationalT,
    _apply,
    _identity_minus,
    _transfer,
    base_vectors,
    bareiss_solve,
    summed_class_series,
)

__all__ = ["OVERCOUNT_TABLES", "level_series", "growth_series"]

_S = ("S+", "S0", "S-")
_E = ("E1", "E2", "E3")
_LOW = ("0",) + _S + _E + ("U0", "Ut-3")
_U2 = ("U-2", "Ut-5")
_U1 = ("U-1", "Ut-4")
_U0 = ("U0", "Ut-3")

# (sign case, P classes, Q̄ classes); "0" stands for the zero polynomial.
# Conditions on the successor's class in the two-step tables cannot be
# expressed through per-class series and are dropped.
OVERCOUNT_TABLES: dict[str, list[tuple[tuple[str, ...], tuple[str, ...]]]] = {
    "same_1_1": [(_U2, _LOW), (_LOW, _U2), (_U1, _U1)],
    "same_1_2": [(_U1, _U0), (_U1, _U2)],
    "same_2_2": [(_U0, _U0), (_U2, _U2), (_U0, _U2), (_U2, _U0)],
    "opposite": [(_LOW, _LOW), (_U2, _U2), (_U1, _U1)],
}


def _r(x) -> RationalT:
    return x if isinstance(x, RationalT) else RationalT(x)


def _restricted(v: ClassVector, zero, labels) -> RationalT:
    acc = RationalT(PolyT())
    for lab in labels:
        acc = acc + _r(zero if lab == "0" else v[lab])
    return acc


@lru_cache(maxsize=None)
def _positive_levels(k: int) -> ClassVector:
    # Y = sum_{n>=1} X^n solves (I - P) Y = base t/(1-t) + P X^0
    P = _transfer(k)
    X0 = summed_class_series(k, 0)
    base = base_vectors(k, "n>0")[0]
    geo = RationalT(PolyT([0, 1]), PolyT([1, -1]))
    rhs = []
    for i, row in enumerate(P):
        acc = _r(base.entries[i]) * geo
        for a, x in zip(row, X0.entries):
            if a:
                acc = acc + _r(x) * a
        rhs.append(acc)
    return ClassVector(bareiss_solve(_identity_minus(P), rhs))


def level_series(k: int, V: ClassVector, zero, W: ClassVector) -> RationalT:
    """Elements whose polynomial side has class series ``V`` (zero polynomial
    weighted by ``zero``) against principal side ``W``."""
    one = RationalT(PolyT([1]))
    pairs = (_r(zero) + V.total() * 2) * (one + W.total() * 2)
    over = RationalT(PolyT())
    for name, rows in OVERCOUNT_TABLES.items():
        for ps, qs in rows:
            term = _restricted(V, zero, ps) * _restricted(W, one, qs)
            if "0" in ps and "0" in qs:
                term = term - _r(zero)
            over = over + term
    return pairs - over * 2


@lru_cache(maxsize=None)
def _growth(k: int) -> RationalT:
    X0 = summed_class_series(k, 0)
    Y = _positive_levels(k)
    zero_pos = RationalT(PolyT([0, 1]), PolyT([1, -1]))
    S0 = level_series(k, X0, PolyT([1]), X0)
    Spos = level_series(k, Y, zero_pos, X0)
    return (S0 + Spos * 2).reduced()


def growth_series(k: int, terms: int | None = None) -> RationalT:
    """Sphere growth series ``sum_r |S(r)| t^r`` as a reduced rational function."""
    if k < 2:
        raise ValueError("k >= 2 required")
    return _growth(k)
