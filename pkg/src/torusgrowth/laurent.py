"""Laurent-polynomial representatives of fiber elements.

A Laurent polynomial ``F(X) = sum c_j X^j`` represents the fiber vector
``F(T)(b)`` of the group ``Z^2 x|_T Z``.  Adding any multiple of
``X^d (X^2 - (2k+1) X + 1)`` does not change the represented vector, so
word-length questions become optimisation problems over a coset of that ideal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .group import GroupParams, t_action

__all__ = [
    "LaurentPoly",
    "CoeffWord",
    "NLengthBounds",
    "evaluate_rep",
    "n_length",
    "relation_shift",
    "long_relation",
    "word_representative",
    "parse_poly",
    "format_poly",
]


class LaurentPoly:
    """Finitely supported integer Laurent polynomial, immutable and hashable.

    Stored sparsely; zero coefficients are never kept.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        if coeffs:
            for deg, c in coeffs.items():
                if c:
                    clean[int(deg)] = int(c)
        self._coeffs = clean
        self._hash = None

    @classmethod
    def from_ascending(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    # -- basic access -----------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def high(self) -> int | None:
        """Highest degree with a non-zero coefficient (None for 0)."""
        return max(self._coeffs) if self._coeffs else None

    @property
    def low(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    def leading_coeff(self) -> int:
        return self._coeffs[self.high] if self._coeffs else 0

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def ascending(self, low: int | None = None, high: int | None = None) -> list[int]:
        """Dense coefficient list from ``low`` to ``high`` inclusive."""
        if low is None:
            low = self.low if self._coeffs else 0
        if high is None:
            high = self.high if self._coeffs else low - 1
        return [self._coeffs.get(d, 0) for d in range(low, high + 1)]

    def abs_sum(self) -> int:
        return sum(abs(c) for c in self._coeffs.values())

    # -- splitting --------------------------------------------------------
    def polynomial_part(self) -> "LaurentPoly":
        return LaurentPoly({d: c for d, c in self._coeffs.items() if d >= 0})

    def principal_part(self) -> "LaurentPoly":
        return LaurentPoly({d: c for d, c in self._coeffs.items() if d < 0})

    def truncate_below(self, r: int) -> "LaurentPoly":
        """Keep the terms of degree >= r."""
        return LaurentPoly({d: c for d, c in self._coeffs.items() if d >= r})

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by X**s."""
        return LaurentPoly({d + s: c for d, c in self._coeffs.items()})

    def mirror(self) -> "LaurentPoly":
        """``X^-1 F(X^-1)``; swaps the principal part with a polynomial part."""
        return LaurentPoly({-1 - d: c for d, c in self._coeffs.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({d: c * other for d, c in self._coeffs.items()})
        out: dict[int, int] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for d in sorted(self._coeffs, reverse=True):
            c = self._coeffs[d]
            mono = "" if d == 0 else ("X" if d == 1 else f"X^{d}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class CoeffWord:
    """Dense descending view ``(c_m, ..., c_low)`` of a coefficient string."""

    lead_degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient word")

    @property
    def low_degree(self) -> int:
        return self.lead_degree - len(self.coeffs) + 1

    def __len__(self):
        return len(self.coeffs)

    def at(self, degree: int) -> int:
        """Coefficient at ``degree``; 0 outside the word."""
        idx = self.lead_degree - degree
        if 0 <= idx < len(self.coeffs):
            return self.coeffs[idx]
        return 0

    def subword(self, high: int, low: int) -> "CoeffWord":
        if not (self.low_degree <= low <= high <= self.lead_degree):
            raise ValueError(f"subword [{low}, {high}] outside word")
        i, j = self.lead_degree - high, self.lead_degree - low
        return CoeffWord(high, self.coeffs[i : j + 1])

    @classmethod
    def of(cls, poly: LaurentPoly, low: int = 0) -> "CoeffWord":
        """Word of the terms of degree >= ``low`` (the top is the leading term)."""
        high = poly.high
        if high is None or high < low:
            return cls(low, (0,))
        return cls(high, tuple(reversed(poly.ascending(low, high))))

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_ascending(reversed(self.coeffs), self.low_degree)


@dataclass(frozen=True)
class NLengthBounds:
    p: int
    q: int


def evaluate_rep(params: GroupParams, F: LaurentPoly) -> tuple[int, int]:
    """The fiber vector ``F(T)(b)``."""
    if F.is_zero():
        return (0, 0)
    # Horner from both ends: positive degrees with T, negative with T^-1.
    x0, x1 = 0, 0
    pos = [d for d in F.support() if d >= 0]
    neg = [d for d in F.support() if d < 0]
    if pos:
        for d in range(max(pos), -1, -1):
            x0, x1 = t_action(params, (x0, x1), 1)
            x1 += F[d]
    y0, y1 = 0, 0
    if neg:
        for d in range(min(neg), 0):
            y0, y1 = t_action(params, (y0, y1), -1)
            y1 += F[d]
        y0, y1 = t_action(params, (y0, y1), -1)
    return (x0 + y0, x1 + y1)


def n_length(F: LaurentPoly, n: int) -> tuple[int, NLengthBounds]:
    """``L_n(F) = 2p + 2q - |n| + sum |c_j|`` with the trimmed extents p, q.

    The representative is read as ``sum_{j=-p-1}^{q} c_j X^j``.
    """
    p = max(0, -n)
    q = max(0, n)
    if F:
        p = max(p, -1 - F.low)
        q = max(q, F.high)
    return 2 * p + 2 * q - abs(n) + F.abs_sum(), NLengthBounds(p, q)


def relation_shift(k: int, d: int = 0) -> LaurentPoly:
    """``X^d (X^2 - (2k+1) X + 1)``, which represents the zero vector."""
    return LaurentPoly({d + 2: 1, d + 1: -(2 * k + 1), d: 1})


def long_relation(k: int, d: int, run: int) -> LaurentPoly:
    """``-X^d (1 + X + ... + X^run)(X^2 - (2k+1)X + 1)``.

    Its coefficient string reads ``(-1, 2k, 2k-1, ..., 2k-1, 2k, -1)`` from the
    top, with ``run - 1`` copies of ``2k-1``; ``run == 0`` collapses to
    ``(-1, 2k+1, -1)``.
    """
    if run < 0:
        raise ValueError("run must be >= 0")
    out: dict[int, int] = {}
    for j in range(run + 1):
        for deg, c in ((2, -1), (1, 2 * k + 1), (0, -1)):
            out[d + j + deg] = out.get(d + j + deg, 0) + c
    return LaurentPoly(out)


def word_representative(word: str) -> tuple[LaurentPoly, int]:
    """Representative and t-exponent read off a word over ``a A b B t T``.

    A letter ``b`` at height h contributes ``X^h``, a letter ``a`` contributes
    ``X^(h-1)`` (since ``a = T^-1 b``); capitals are inverses.  For a geodesic
    word the result is an n-minimal representative.
    """
    coeffs: dict[int, int] = {}
    h = 0
    for ch in word:
        if ch == "t":
            h += 1
        elif ch == "T":
            h -= 1
        else:
            deg = h if ch in "bB" else h - 1
            coeffs[deg] = coeffs.get(deg, 0) + (1 if ch in "ab" else -1)
    return LaurentPoly(coeffs), h


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``"lo=<low>; c_low, c_low+1, ..."`` (ascending degrees)."""
    head, sep, body = text.partition(";")
    if not sep:
        raise ValueError(f"malformed polynomial text: {text!r}")
    key, eq, lo = head.partition("=")
    if key.strip() != "lo" or not eq:
        raise ValueError(f"malformed polynomial text: {text!r}")
    low = int(lo.strip())
    body = body.strip()
    coeffs = [int(tok) for tok in body.split(",")] if body else []
    return LaurentPoly.from_ascending(coeffs, low)


def format_poly(F: LaurentPoly) -> str:
    """Inverse of :func:`parse_poly`; the zero polynomial is ``"lo=0;"``."""
    if F.is_zero():
        return "lo=0;"
    return f"lo={F.low};" + ",".join(str(c) for c in F.ascending())
