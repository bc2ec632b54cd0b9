"""n-types, n-classes and the successor bijection on n-reduced polynomials.

The class of ``Q = X*P + c`` depends only on the (n-1)-class of ``P`` and on
``c``, so classification is a finite-state transducer reading the coefficient
word from the top down.  The successor ``S`` walks through every n-reduced
polynomial with non-negative leading coefficient, starting at 0; each step
moves the represented fiber vector by ``+b``, ``-a`` or ``+b-a``.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .group import GroupParams
from .laurent import LaurentPoly, evaluate_rep, format_poly, n_length
from .reduction import is_reduced, reduce_polynomial_part, rightmost_minimal_poison

__all__ = [
    "ClassTag",
    "NClass",
    "NType",
    "Classification",
    "ClassificationError",
    "SuccessorError",
    "CLASS_ORDER",
    "classify",
    "signed_class",
    "successor",
    "generalized_successor",
    "predecessor",
    "succ_effect",
    "SuccEffect",
    "enumerate_reduced",
    "EnumeratedPoly",
    "stream_csv",
]


class ClassificationError(ValueError):
    """Input outside the classifier's domain, or the tables matched 0 or >= 2 rows."""


class SuccessorError(RuntimeError):
    """A successor step produced something the construction rules out."""


class ClassTag(str, enum.Enum):
    S_PLUS = "S+"
    S_ZERO = "S0"
    S_MINUS = "S-"
    U0 = "U0"
    U1 = "U-1"
    U2 = "U-2"
    UT3 = "Ut-3"
    UT4 = "Ut-4"
    UT5 = "Ut-5"
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"

    def __str__(self):
        return self.value


# Ordering used by every class vector and by the transfer matrix.
CLASS_ORDER: tuple[ClassTag, ...] = tuple(ClassTag)

_E = frozenset({ClassTag.E1, ClassTag.E2, ClassTag.E3})


@dataclass(frozen=True)
class NClass:
    tag: ClassTag
    negated: bool = False

    def __str__(self):
        return ("-" if self.negated else "") + self.tag.value


class NType(str, enum.Enum):
    INITIAL = "initial"
    INTERIOR = "interior"
    NEGATIVE = "negative"
    BOUNDARY_P = "boundaryP"
    BOUNDARY_S = "boundaryS"

    def __str__(self):
        return self.value


class Classification(NamedTuple):
    type: NType
    cls: NClass | None  # None only for the initial type (P = 0, n <= 0)


def _ascending(P: LaurentPoly) -> tuple[int, ...]:
    if P.is_zero():
        return ()
    if P.low < 0:
        raise ClassificationError(f"{P} is not a polynomial")
    return tuple(P.ascending(0, P.high))


# -- the transducer ----------------------------------------------------------

def _base(c: tuple[int, ...], n: int, k: int, generalized: bool):
    """Constant words and the two degree-one seeds; None if not a base case."""
    T = ClassTag
    if len(c) == 0:
        return (NType.INITIAL, None) if n <= 0 else (NType.INTERIOR, T.S_ZERO)
    if len(c) == 1:
        v = c[0]
        if v > 0:
            if n <= 0:
                if v <= k:
                    return (NType.INTERIOR, T.S_PLUS)
                if v == k + 1:
                    return (NType.INTERIOR, T.UT3)
                if v == k + 2:
                    return (NType.BOUNDARY_P, T.UT5)
            else:
                if v <= k - 1:
                    return (NType.INTERIOR, T.S_PLUS)
                if v == k:
                    return (NType.INTERIOR, T.U0)
                if v == k + 1:
                    return (NType.BOUNDARY_P, T.U2)
            raise ClassificationError(f"constant {v} is not {n}-reduced")
        if generalized and v < 0 and -v <= (k + 1 if n > 0 else k + 2):
            return (NType.NEGATIVE, T.S_MINUS)
        raise ClassificationError(f"constant {v} outside the classified range")
    if len(c) == 2 and c[1] == 1 and n <= 0:
        if c[0] == -k + 1:
            return (NType.NEGATIVE, T.E1)
        if c[0] == -k + 2 and k >= 3:
            # for k = 2 this seed is X itself, whose constant is not negative;
            # it then classifies as S0 through the inductive rows
            return (NType.NEGATIVE, T.E3)
    return None


def _induct(prev: ClassTag, c: int, minus_prev_is_u2: bool, k: int):
    """All rows of the inductive table matched by ``X*P + c`` with P of class ``prev``."""
    T = ClassTag
    rows = []

    def row(cond, typ, tag):
        if cond:
            rows.append((typ, tag))

    I, N, BP, BS = NType.INTERIOR, NType.NEGATIVE, NType.BOUNDARY_P, NType.BOUNDARY_S
    # interior
    row(0 < c <= k - 2, I, T.S_PLUS)
    row(c == 0 and prev != T.E1 and not minus_prev_is_u2, I, T.S_ZERO)
    row(c == k - 1 and prev in (T.S_ZERO, T.S_PLUS, T.U0, T.UT3), I, T.S_PLUS)
    row(c == k - 1 and prev == T.U1, I, T.U0)
    row(c == k and prev in (T.S_ZERO, T.S_PLUS), I, T.U0)
    row(c == k - 1 and (prev == T.S_MINUS or prev in _E), I, T.U0)
    row(c == k - 1 and prev == T.UT4, I, T.UT3)
    # negative
    special = (
        (T.E1, -k + 1, T.E2),
        (T.E2, -k + 1, T.E3),
        (T.E3, -k + 1, T.S_MINUS),
        (T.E2, -k, T.E1),
        (T.E3, -k, T.E2),
    )
    hit = False
    for p, cc, out in special:
        if prev == p and c == cc:
            rows.append((N, out))
            hit = True
    row(c < 0 and not hit, N, T.S_MINUS)
    # boundary (P)
    row(c == k - 1 and prev == T.U2, BP, T.U1)
    row(c == k - 1 and prev == T.UT5, BP, T.UT4)
    row(c == k and prev == T.U1, BP, T.U2)
    row(c == k and prev == T.UT4, BP, T.UT5)
    row(c == k and prev == T.U0, BP, T.U1)
    row(c == k and prev == T.UT3, BP, T.UT4)
    row(c == k and (prev == T.S_MINUS or prev in _E), BP, T.U2)
    row(c == k + 1 and prev in (T.S_PLUS, T.S_ZERO), BP, T.U2)
    # boundary (S)
    row(c == 0 and prev == T.S_MINUS and minus_prev_is_u2, BS, T.S_ZERO)
    row(c == 0 and prev == T.E1, BS, T.S_ZERO)
    return rows


@lru_cache(maxsize=1 << 18)
def _classify(c: tuple[int, ...], n: int, k: int, generalized: bool):
    # c is ascending: c[0] is the constant term, c[1:] is the word of P
    base = _base(c, n, k, generalized)
    if base is not None:
        return base
    const, rest = c[0], c[1:]
    _, prev = _classify(rest, n - 1, k, generalized)
    if prev is None:
        raise ClassificationError(f"word {c[::-1]} has an unclassified tail at n={n - 1}")
    minus_u2 = False
    if const == 0:
        # the S0 rows ask whether -P sits in U-2 (signed mode)
        try:
            minus_u2 = _classify(tuple(-x for x in rest), n - 1, k, True)[1] == ClassTag.U2
        except ClassificationError:
            minus_u2 = False
    rows = _induct(prev, const, minus_u2, k)
    if len(rows) != 1:
        raise ClassificationError(
            f"word {c[::-1]} at n={n}: {len(rows)} table rows match "
            f"(prefix class {prev}, constant {const}): {rows}"
        )
    return rows[0]


def classify(P: LaurentPoly, n: int, k: int, generalized: bool = False, check: bool = True) -> Classification:
    """n-type and n-class of an n-reduced polynomial.

    Without ``generalized`` the leading coefficient must be positive (or P = 0).
    With it, negative leading coefficients are classified by the same table
    seeded with negative constants as class S-.
    """
    c = _ascending(P)
    if check and c and not is_reduced(P, n, k):
        raise ClassificationError(f"{P} is not {n}-reduced (k={k})")
    if c and c[-1] < 0 and not generalized:
        raise ClassificationError(f"{P} has a negative leading coefficient")
    typ, tag = _classify(c, n, k, generalized)
    return Classification(typ, None if tag is None else NClass(tag))


def signed_class(P: LaurentPoly, n: int, k: int) -> NClass | None:
    """Class of P, written ``-C`` when P has negative leading coefficient and -P is of class C."""
    if not P.is_zero() and P.leading_coeff() < 0:
        cl = classify(-P, n, k, check=False).cls
        return None if cl is None else NClass(cl.tag, negated=True)
    return classify(P, n, k, check=False).cls


# -- successor ------------------------------------------------------------------

def _rewrite_plus_one(P: LaurentPoly, n: int, k: int) -> tuple[LaurentPoly, int]:
    Q = reduce_polynomial_part(P + 1, n, k, 0)
    residual = Q[-1]
    if Q.principal_part() != LaurentPoly.monomial(-1, residual):
        raise SuccessorError(f"rewriting {P} + 1 spilled below degree -1: {Q}")
    return Q.polynomial_part(), residual


def _finish(P, Q, residual, minus_one, n, k, expect_residual):
    if residual != expect_residual:
        raise SuccessorError(
            f"successor of {P} (n={n}, k={k}): expected residual {expect_residual}, got {residual}"
        )
    return Q - 1 if minus_one else Q


def _step(P: LaurentPoly, n: int, k: int, typ: NType, tag: ClassTag | None) -> LaurentPoly:
    if typ in (NType.INITIAL, NType.INTERIOR, NType.NEGATIVE):
        return P + 1
    Q, res = _rewrite_plus_one(P, n, k)
    if typ == NType.BOUNDARY_S:
        return _finish(P, Q, res, False, n, k, 0)
    if tag in (ClassTag.U2, ClassTag.UT5):
        return _finish(P, Q, res, True, n, k, 1)
    if tag in (ClassTag.U1, ClassTag.UT4):
        return _finish(P, Q, res, False, n, k, 1)
    raise SuccessorError(f"boundary polynomial {P} of class {tag} has no successor rule")


def successor(P: LaurentPoly, n: int, k: int, check: bool = True) -> LaurentPoly:
    """The successor ``S(P)`` of an n-reduced P with non-negative leading coefficient."""
    if not P.is_zero() and P.leading_coeff() < 0:
        raise ClassificationError(f"{P} has a negative leading coefficient; use generalized_successor")
    typ, cl = classify(P, n, k, check=check)
    return _step(P, n, k, typ, None if cl is None else cl.tag)


def generalized_successor(P: LaurentPoly, n: int, k: int, check: bool = True) -> LaurentPoly:
    """``S~``: agrees with :func:`successor` on non-negative leading coefficients.

    For negative leading coefficients the signed table applies, except that
    class ``-E2`` drops the residual, class ``-E1`` drops the residual and 1,
    and ``X*R`` with R of class ``-Ut-5`` keeps the plain rewriting.
    """
    if P.is_zero() or P.leading_coeff() > 0:
        return successor(P, n, k, check=check)
    if check and not is_reduced(P, n, k):
        raise ClassificationError(f"{P} is not {n}-reduced (k={k})")
    neg = classify(-P, n, k, check=False).cls
    if neg is not None and neg.tag in (ClassTag.E1, ClassTag.E2):
        Q, res = _rewrite_plus_one(P, n, k)
        return _finish(P, Q, res, neg.tag == ClassTag.E1, n, k, 1)
    if P[0] == 0:
        R = P.shift(-1)
        rc = classify(-R, n - 1, k, check=False).cls
        if rc is not None and rc.tag == ClassTag.UT5:
            Q, res = _rewrite_plus_one(P, n, k)
            return _finish(P, Q, res, False, n, k, 0)
    typ, cl = classify(P, n, k, generalized=True, check=False)
    return _step(P, n, k, typ, None if cl is None else cl.tag)


def predecessor(P: LaurentPoly, n: int, k: int, check: bool = True) -> LaurentPoly:
    """``S^-1(P) = -S~(-P)`` for P reduced with positive leading coefficient."""
    if P.is_zero():
        raise ClassificationError("0 has no predecessor")
    if P.leading_coeff() < 0:
        raise ClassificationError(f"{P} has a negative leading coefficient")
    if check and not is_reduced(P, n, k):
        raise ClassificationError(f"{P} is not {n}-reduced (k={k})")
    return -generalized_successor(-P, n, k, check=False)


class SuccEffect(NamedTuple):
    length_delta: int
    step: str  # "+b", "-a" or "+b-a"
    vector: tuple[int, int]


_STEPS = {(0, 1): "+b", (-1, 0): "-a", (-1, 1): "+b-a"}


def succ_effect(P: LaurentPoly, n: int, k: int, check: bool = True) -> SuccEffect:
    """Change in n-length and in the represented vector from P to S(P)."""
    params = GroupParams(k)
    S = successor(P, n, k, check=check)
    x0, x1 = evaluate_rep(params, P)
    y0, y1 = evaluate_rep(params, S)
    dv = (y0 - x0, y1 - x1)
    if dv not in _STEPS:
        raise SuccessorError(f"successor of {P} moved by {dv} (n={n}, k={k})")
    return SuccEffect(n_length(S, n)[0] - n_length(P, n)[0], _STEPS[dv], dv)


# -- enumeration ------------------------------------------------------------------

class EnumeratedPoly(NamedTuple):
    index: int
    poly: LaurentPoly
    type: NType
    cls: NClass | None
    length: int


def enumerate_reduced(n: int, k: int, max_length: int, slack: int | None = None) -> Iterator[EnumeratedPoly]:
    """``S^0(0), S^1(0), ...`` restricted to n-length <= ``max_length``.

    The stream is not monotone in length, so the walk continues while the
    current n-length stays within ``max_length + slack``; every polynomial of
    n-length <= max_length is reached before the walk leaves that window.
    """
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    if slack is None:
        slack = 2 * k + 6
    P = LaurentPoly()
    i = 0
    cap = max_length + slack
    while True:
        typ, cl = classify(P, n, k, check=False)
        L = n_length(P, n)[0]
        if L > cap:
            return
        if L <= max_length:
            yield EnumeratedPoly(i, P, typ, cl, L)
        P = _step(P, n, k, typ, None if cl is None else cl.tag)
        i += 1


def stream_csv(n: int, k: int, max_length: int) -> Iterator[str]:
    """CSV lines: index, polynomial, class, type, n-length, x0, x1."""
    params = GroupParams(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "poly", "class", "type", "length", "x0", "x1"])
    yield buf.getvalue()
    for item in enumerate_reduced(n, k, max_length):
        buf.seek(0)
        buf.truncate()
        x0, x1 = evaluate_rep(params, item.poly)
        w.writerow([item.index, format_poly(item.poly), item.cls or "", item.type, item.length, x0, x1])
        yield buf.getvalue()
