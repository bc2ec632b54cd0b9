"""Exact generating-function machinery in one variable ``t``.

Polynomials and rational functions over the integers, fraction-free
(Bareiss) elimination, the 12x12 transfer matrix on n-classes, the degree
recursions for class generating functions and their summed rational forms.

The growth series itself is assembled in :mod:`torusgrowth.canonical` and
certified here against the breadth-first oracle.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "PolyT",
    "RationalT",
    "SeriesError",
    "CertificationError",
    "CertifiedSeries",
    "ClassVector",
    "CLASS_LABELS",
    "expand_coeffs",
    "bareiss_det",
    "bareiss_solve",
    "base_vectors",
    "transfer_matrix",
    "class_counts_by_degree",
    "summed_class_series",
    "truncated_neumann",
    "assemble_growth_series",
    "linear_recurrence_holds",
]


class SeriesError(ArithmeticError):
    """Malformed rational function or a failed algebraic self-check."""


class CertificationError(RuntimeError):
    """Series coefficients disagree with breadth-first sphere sizes."""

    def __init__(self, k: int, radius: int, expected: int, got: int, mode: str = "sphere"):
        self.k, self.radius, self.expected, self.got, self.mode = k, radius, expected, got, mode
        super().__init__(
            f"k={k}: {mode} coefficient mismatch at r={radius}: expected {expected} (BFS), got {got}"
        )

    def as_dict(self) -> dict:
        return {"k": self.k, "first_failing_radius": self.radius, "expected": self.expected,
                "got": self.got, "mode": self.mode}


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class PolyT:
    """Integer polynomial in ``t``; ascending coefficient list with no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.c = _trim([int(x) for x in coeffs])

    @classmethod
    def monomial(cls, e: int, a: int = 1) -> "PolyT":
        if e < 0:
            raise SeriesError(f"negative exponent {e}")
        return cls([0] * e + [a])

    @classmethod
    def geometric(cls, lo: int, hi: int) -> "PolyT":
        """``t^lo + ... + t^hi`` (zero when hi < lo)."""
        return cls([0] * lo + [1] * (hi - lo + 1)) if hi >= lo else cls()

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __getitem__(self, e: int) -> int:
        return self.c[e] if 0 <= e < len(self.c) else 0

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyT([other])
        return isinstance(other, PolyT) and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __add__(self, other):
        other = _poly(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return PolyT(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyT([-x for x in self.c])

    def __sub__(self, other):
        return self + (-_poly(other))

    def __rsub__(self, other):
        return _poly(other) - self

    def __mul__(self, other):
        other = _poly(other)
        if other is NotImplemented:
            return other
        if not self.c or not other.c:
            return PolyT()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return PolyT(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = PolyT([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, s: int) -> "PolyT":
        """Multiply by ``t^s``; negative ``s`` must divide exactly."""
        if s >= 0:
            return PolyT([0] * s + self.c)
        if any(self.c[:-s]):
            raise SeriesError(f"t^{-s} does not divide {self}")
        return PolyT(self.c[-s:])

    def divmod(self, other: "PolyT") -> tuple["PolyT", "PolyT"]:
        """Division over Z; raises unless every quotient step is integral."""
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        lead, dq = other.c[-1], other.degree
        q = [0] * max(0, len(r) - dq)
        for i in range(len(r) - 1 - dq, -1, -1):
            a = r[i + dq]
            if a:
                if a % lead:
                    raise SeriesError("non-integral polynomial quotient")
                f = a // lead
                q[i] = f
                for j, b in enumerate(other.c):
                    r[i + j] -= f * b
        return PolyT(q), PolyT(r)

    def exact_div(self, other: "PolyT") -> "PolyT":
        q, r = self.divmod(other)
        if r:
            raise SeriesError("inexact polynomial division")
        return q

    def content(self) -> int:
        from math import gcd

        g = 0
        for a in self.c:
            g = gcd(g, a)
        return g

    def __repr__(self):
        return f"PolyT({self.c})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for e, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            coef = str(a) if (abs(a) != 1 or not mono) else ("-" if a < 0 else "")
            terms.append(coef + ("*" if mono and coef not in ("", "-") else "") + mono)
        return " + ".join(terms).replace("+ -", "- ")


def _poly(x):
    if isinstance(x, PolyT):
        return x
    if isinstance(x, int):
        return PolyT([x])
    return NotImplemented


def _sympy_gcd(a: PolyT, b: PolyT) -> PolyT:
    from sympy import Poly, symbols

    t = symbols("t")
    g = Poly(list(reversed(a.c)), t).gcd(Poly(list(reversed(b.c)), t))
    return PolyT(reversed([int(x) for x in g.all_coeffs()]))


def _lcm(a: PolyT, b: PolyT) -> PolyT:
    if a == b:
        return a
    return a * b.exact_div(_sympy_gcd(a, b))


class RationalT:
    """``num/den`` with content-normalized denominator of positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce: bool = False):
        num, den = _poly(num), _poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalT needs PolyT or int parts")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num:
            g = _sympy_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        from math import gcd

        g = gcd(num.content(), den.content()) if num else den.content()
        if den.c[-1] < 0:
            g = -g
        if g != 1:
            num = PolyT([x // g for x in num.c])
            den = PolyT([x // g for x in den.c])
        self.num, self.den = num, den

    def reduced(self) -> "RationalT":
        return RationalT(self.num, self.den, reduce=True)

    def is_polynomial(self) -> bool:
        try:
            self.num.exact_div(self.den)
        except SeriesError:
            return False
        return True

    def as_poly(self) -> PolyT:
        try:
            return self.num.exact_div(self.den)
        except SeriesError:
            raise SeriesError(f"{self} is not a polynomial") from None

    def __add__(self, other):
        other = _rat(other)
        if self.den == other.den:
            return RationalT(self.num + other.num, self.den)
        L = _lcm(self.den, other.den)
        return RationalT(self.num * L.exact_div(self.den) + other.num * L.exact_div(other.den), L)

    __radd__ = __add__

    def __neg__(self):
        return RationalT(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_rat(other))

    def __rsub__(self, other):
        return _rat(other) - self

    def __mul__(self, other):
        other = _rat(other)
        return RationalT(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rat(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalT(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = _rat(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((tuple(r.num.c), tuple(r.den.c)))

    def __repr__(self):
        return f"RationalT({self.num.c}, {self.den.c})"

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def _rat(x) -> RationalT:
    if isinstance(x, RationalT):
        return x
    return RationalT(x)


def expand_coeffs(R: RationalT | PolyT, N: int) -> list[int]:
    """First ``N+1`` Taylor coefficients of ``R`` at ``t = 0``."""
    if isinstance(R, PolyT):
        return [R[i] for i in range(N + 1)]
    num, den = R.num, R.den
    d0 = den[0]
    if d0 == 0:
        raise SeriesError("denominator vanishes at t = 0; no power series expansion")
    out: list[int] = []
    for i in range(N + 1):
        acc = num[i] - sum(den[j] * out[i - j] for j in range(1, min(i, den.degree) + 1))
        if acc % d0:
            raise SeriesError(f"non-integral coefficient at t^{i}")
        out.append(acc // d0)
    return out


# --------------------------------------------------------------------------
# fraction-free elimination


def bareiss_det(M: Sequence[Sequence[PolyT]]) -> PolyT:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    a = [[_poly(x) for x in row] for row in M]
    n = len(a)
    sign, prev = 1, PolyT([1])
    for i in range(n - 1):
        if not a[i][i]:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return PolyT()
        p = a[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * p - a[r][i] * a[i][c]).exact_div(prev)
            a[r][i] = PolyT()
        prev = p
    return a[n - 1][n - 1] * sign if n else PolyT([1])


def bareiss_solve(M: Sequence[Sequence[PolyT]], b: Sequence[PolyT | RationalT]) -> list[RationalT]:
    """Solve ``M x = b`` exactly; Cramer's rule over Bareiss determinants."""
    n = len(M)
    bd = PolyT([1])
    rb = [_rat(x) for x in b]
    for den in {x.den for x in rb}:
        bd = _lcm(bd, den)
    bn = [x.num * bd.exact_div(x.den) for x in rb]
    det = bareiss_det(M)
    if not det:
        raise SeriesError("matrix is singular over Q(t)")
    out = []
    for j in range(n):
        Mj = [[bn[r] if c == j else _poly(M[r][c]) for c in range(n)] for r in range(n)]
        out.append(RationalT(bareiss_det(Mj), det * bd))
    return out


# --------------------------------------------------------------------------
# class vectors and the transfer matrix

CLASS_LABELS = ("S+", "S0", "S-", "U0", "U-1", "U-2", "Ut-3", "Ut-4", "Ut-5", "E1", "E2", "E3")


@dataclass
class ClassVector:
    """Twelve generating functions in class order (S, U, Ut, E blocks of three)."""

    entries: list = field(default_factory=lambda: [PolyT() for _ in range(12)])

    def __post_init__(self):
        if len(self.entries) != 12:
            raise SeriesError("a class vector has 12 entries")

    def __getitem__(self, i):
        if isinstance(i, str):
            i = CLASS_LABELS.index(i)
        return self.entries[i]

    def block(self, name: str) -> list:
        i = "SUTE".index(name) * 3
        return self.entries[i:i + 3]

    def __add__(self, other):
        return ClassVector([a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, f) -> "ClassVector":
        return ClassVector([e * f for e in self.entries])

    def shift(self, s: int) -> "ClassVector":
        if s >= 0:
            return self.scale(PolyT.monomial(s))
        return ClassVector([_shift_any(e, s) for e in self.entries])

    def coefficients(self, N: int) -> list[list[int]]:
        return [expand_coeffs(e, N) for e in self.entries]

    def total(self):
        acc = self.entries[0]
        for e in self.entries[1:]:
            acc = acc + e
        return acc

    def as_dict(self) -> dict:
        return dict(zip(CLASS_LABELS, self.entries))


def _shift_any(e, s):
    if isinstance(e, PolyT):
        return e.shift(s)
    return RationalT(e.num, e.den.shift(-s)) if s < 0 else e * PolyT.monomial(s)


def _t(e: int) -> PolyT:
    return PolyT.monomial(e)


def _mat(rows) -> list[list[PolyT]]:
    return [[_poly(x) for x in r] for r in rows]


def _mm(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = [[PolyT() for _ in range(p)] for _ in range(n)]
    for i in range(n):
        for l in range(m):
            a = A[i][l]
            if a:
                for j in range(p):
                    if B[l][j]:
                        out[i][j] = out[i][j] + a * B[l][j]
    return out


def _blocks(k: int) -> dict[str, list[list[PolyT]]]:
    t = _t
    P_EE = _mat([[0, t(k + 1), 0], [t(k), 0, t(k + 1)], [0, t(k), 0]])
    P_US = _mat([[t(k + 1), t(k + 1), t(k)], [0, 0, 0], [t(k + 2), t(k + 2), t(k + 2)]])
    P_UU = _mat([[0, t(k), 0], [t(k + 1), 0, t(k)], [0, t(k + 1), 0]])
    tm1 = PolyT([-1, 1])
    one = PolyT([1])

    def frac(rows):
        # t/(t-1) * rows, each entry checked to divide exactly
        out = []
        for r in rows:
            row = []
            for e in r:
                q, rem = (_t(1) * _poly(e)).divmod(tm1)
                if rem:
                    raise SeriesError(f"(t-1) does not cancel in t*({e})/(t-1)")
                row.append(q)
            out.append(row)
        return out

    def add(X, Y, sign=1):
        return [[x + sign * y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]

    proj = _mat([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    a_, b_ = t(k) - t(1), t(k - 1) - t(1)
    A = add(frac([[a_, a_, b_], [tm1, tm1, tm1], [t(k) - one, t(k) - one, t(k - 1) - one]]), P_US)
    row_bc = [[a_, b_, b_], [tm1, tm1, tm1], [t(k) - one, t(k - 1) - one, t(k - 1) - one]]
    B = add(frac(row_bc), _mm(proj, P_UU))
    C = add(frac(row_bc), _mm(proj, P_UU))  # P_TT has the same entries as P_UU
    D = add(frac([[a_, a_, a_], [0, tm1, tm1], [b_, b_, a_]]), P_EE, -1)
    return {"A": A, "B": B, "C": C, "D": D, "P_EE": P_EE, "P_US": P_US, "P_UU": P_UU, "P_TT": P_UU}


@lru_cache(maxsize=None)
def _transfer(k: int) -> tuple[tuple[PolyT, ...], ...]:
    b = _blocks(k)
    Z = [[PolyT()] * 3 for _ in range(3)]
    grid = [
        [b["A"], b["B"], b["C"], b["D"]],
        [b["P_US"], b["P_UU"], Z, Z],
        [Z, Z, b["P_TT"], Z],
        [Z, Z, Z, b["P_EE"]],
    ]
    rows = []
    for br in grid:
        for i in range(3):
            rows.append(tuple(e for blk in br for e in blk[i]))
    return tuple(rows)


def transfer_matrix(k: int) -> list[list[PolyT]]:
    """The 12x12 matrix taking class counts at ``(n, d)`` to ``(n+1, d+1)``.

    The top block row is the symmetrized ``A B C D`` form; building it raises
    :class:`SeriesError` if a ``(t-1)`` denominator fails to cancel.
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    return [list(r) for r in _transfer(k)]


def base_vectors(k: int, regime: str) -> tuple[ClassVector, ClassVector]:
    """Degree-0 class vector and the degree-1 E seed.

    ``regime`` is ``"n>0"`` or ``"n<=0"``.  Vectors for ``n > 0`` are given
    without their ``t^n`` level factor and those for ``n <= 0`` at ``n = 0``;
    callers multiply by ``t^|n|``.
    """
    v = ClassVector()
    e1 = ClassVector()
    if regime in ("n<=0", "n≤0", "le0"):
        v.entries[0] = PolyT.geometric(1, k)
        v.entries[6] = _t(k + 1)
        v.entries[8] = _t(k + 2)
        e1.entries[9] = _t(k + 2)
        e1.entries[11] = _t(k + 1)
    elif regime in ("n>0", "gt0"):
        v.entries[0] = PolyT.geometric(1, k - 1)
        v.entries[1] = PolyT([1])
        v.entries[3] = _t(k)
        v.entries[5] = _t(k + 1)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return v, e1


def _apply(M, v: ClassVector) -> ClassVector:
    out = []
    for row in M:
        acc = PolyT()
        for a, x in zip(row, v.entries):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return ClassVector(out)


@lru_cache(maxsize=None)
def _counts(k: int, n: int, d: int) -> ClassVector:
    if d < 0:
        return ClassVector()
    if n <= 0:
        if n < 0:
            return _counts(k, 0, d).shift(-n)
        base, seed = base_vectors(k, "n<=0")
        if d == 0:
            return base
        v = _apply(_transfer(k), _counts(k, -1, d - 1))
        return v + seed if d == 1 else v
    if d == 0:
        return base_vectors(k, "n>0")[0].shift(n)
    return _apply(_transfer(k), _counts(k, n - 1, d - 1))


def class_counts_by_degree(k: int, n: int, d: int) -> ClassVector:
    """Length generating functions of n-reduced polynomials of degree ``d`` by class."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return _counts(k, n, d)


def truncated_neumann(M, seed: ClassVector, N: int) -> list[list[int]]:
    """Coefficients through ``t^N`` of ``sum_d M^d seed`` (valid when ``M(0) = 0``)."""
    acc = [[0] * (N + 1) for _ in range(12)]
    v = seed
    for _ in range(N + 1):
        cs = v.coefficients(N)
        if not any(any(r) for r in cs):
            break
        for i in range(12):
            for j in range(N + 1):
                acc[i][j] += cs[i][j]
        v = _apply(M, v)
    return acc


def _identity_minus(M):
    return [[(PolyT([1]) if i == j else PolyT()) - M[i][j] for j in range(12)] for i in range(12)]


@lru_cache(maxsize=None)
def _summed(k: int, n: int) -> ClassVector:
    if n < 0:
        return _summed(k, 0).shift(-n)
    P = _transfer(k)
    if n == 0:
        base, seed = base_vectors(k, "n<=0")
        # X^{0,d+1} = P X^{-1,d} = t P X^{0,d} for d >= 1
        tP = [[a * _t(1) for a in row] for row in P]
        first = _apply(P, _counts(k, -1, 0)) + seed
        xs = bareiss_solve(_identity_minus(tP), first.entries)
        return ClassVector([RationalT(b) + x for b, x in zip(base.entries, xs)])
    prev = _summed(k, n - 1)
    out = []
    for i, row in enumerate(P):
        acc = _rat(base_vectors(k, "n>0")[0].shift(n).entries[i])
        for a, x in zip(row, prev.entries):
            if a:
                acc = acc + x * a
        out.append(acc)
    return ClassVector(out)


def summed_class_series(k: int, n: int) -> ClassVector:
    """Class generating functions at level ``n`` summed over all degrees, as rational functions."""
    return _summed(k, n)


# --------------------------------------------------------------------------
# growth series


@dataclass
class CertifiedSeries:
    k: int
    series: RationalT
    verified_radius: int
    mode: str = "sphere"
    coefficients: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "numerator": list(self.series.num.c),
            "denominator": list(self.series.den.c),
            "verified_radius": self.verified_radius,
            "coefficients": list(self.coefficients),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def to_csv(self) -> str:
        lines = ["radius,coefficient"]
        lines += [f"{r},{c}" for r, c in enumerate(self.coefficients)]
        return "\n".join(lines) + "\n"


def linear_recurrence_holds(den: PolyT, seq: Sequence[int], start: int | None = None) -> list[int]:
    """Indices ``r >= start`` where ``sum_j den[j] * seq[r-j] != 0``; empty means it holds."""
    D = den.degree
    start = D if start is None else max(start, D)
    return [r for r in range(start, len(seq)) if sum(den[j] * seq[r - j] for j in range(D + 1))]


def assemble_growth_series(
    k: int,
    verify_to: int = 10,
    mode: str = "sphere",
    unchecked: bool = False,
    terms: int | None = None,
    ball=None,
) -> CertifiedSeries:
    """Compute the growth series, then certify it against BFS up to ``verify_to``.

    ``mode`` selects sphere sizes or cumulative ball sizes.  With
    ``unchecked`` the BFS comparison is skipped and ``verified_radius`` is -1.
    """
    from .canonical import growth_series

    if mode not in ("sphere", "ball"):
        raise ValueError(f"mode must be 'sphere' or 'ball', got {mode!r}")
    R = growth_series(k, terms=terms)
    if mode == "ball":
        R = R / PolyT([1, -1])
    n_out = max(verify_to, 0) + 1 if terms is None else terms
    coeffs = expand_coeffs(R, max(n_out, verify_to + 1) - 1)
    if unchecked:
        return CertifiedSeries(k, R, -1, mode, coeffs)
    if ball is None:
        from .group import GroupParams, bfs_ball

        ball = bfs_ball(GroupParams(k), verify_to)
    expected = ball.sphere_sizes if mode == "sphere" else ball.ball_sizes
    for r in range(verify_to + 1):
        if coeffs[r] != expected[r]:
            raise CertificationError(k, r, expected[r], coeffs[r], mode)
    return CertifiedSeries(k, R, verify_to, mode, coeffs)
