"""Rules 1-6, poison subwords and the deterministic rewriting procedure.

A polynomial ``P = (c_m, ..., c_0)`` is *n-reduced* when none of the six rules
is violated.  Every rule violation carries an associated subword (a degree
span ``[lo, hi]``) and a sign ``s``; the matching rewrite subtracts
``s * long_relation(lo - 1, hi - lo)``, which never changes the represented
vector and never increases the n-length.

Half-integer thresholds are compared in doubled integer arithmetic.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Callable, Sequence

from .group import GroupParams, t_action
from .laurent import CoeffWord, LaurentPoly, evaluate_rep, long_relation, n_length

__all__ = [
    "RuleId",
    "RuleViolation",
    "RewriteStep",
    "ReductionError",
    "potential",
    "violations",
    "poly_violations",
    "is_reduced",
    "is_reduced_principal",
    "rightmost_minimal_poison",
    "apply_rewrite",
    "reduce_polynomial_part",
    "reduce_principal_part",
    "reduce_full",
    "minimal_representative_search",
    "SearchResult",
]

log = logging.getLogger(__name__)


class ReductionError(RuntimeError):
    """An internal guarantee of the rewriting procedure failed."""


class RuleId(enum.IntEnum):
    R1 = 1
    R2 = 2
    R3 = 3
    R4 = 4
    R5 = 5
    R6 = 6

    @property
    def is_local(self) -> bool:
        return self <= 3

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class RuleViolation:
    rule: RuleId
    low: int
    high: int
    sign: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.low, self.high)

    def contains(self, other: "RuleViolation") -> bool:
        return self.low <= other.low and other.high <= self.high

    def __str__(self):
        return f"{self.rule}[{self.low},{self.high}]{'+' if self.sign > 0 else '-'}"


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_plus(x: int) -> int:
    return 1 if x >= 0 else -1


def _sign_minus(x: int) -> int:
    return 1 if x > 0 else -1


def potential(word, k: int) -> int:
    """``sum (2k - 1) - 2|c_j|`` over the entries of a word (or any iterable)."""
    coeffs = word.coeffs if isinstance(word, CoeffWord) else word
    return sum(2 * k - 1 - 2 * abs(c) for c in coeffs)


def poly_violations(c: Sequence[int], n: int, k: int) -> list[RuleViolation]:
    """Every rule violation of the polynomial with ascending coefficients ``c``.

    ``c[i]`` is the coefficient of ``X^i``; trailing zeros are ignored and
    coefficients outside the word count as 0.
    """
    m = len(c) - 1
    while m >= 0 and c[m] == 0:
        m -= 1
    if m < 0:
        return []

    def at(i):
        return c[i] if 0 <= i <= m else 0

    out: list[RuleViolation] = []
    # -- local rules
    for i in range(m + 1):
        ci = c[i]
        if ci == 0:
            continue
        a = abs(ci)
        if i == m and m >= n:
            if a > k + 2 or (a > k + 1 and _sign(ci * at(i - 1)) < 0):
                out.append(RuleViolation(RuleId.R1, i, i, _sign(ci)))
        else:
            up = _sign(at(i + 1) * ci) < 0
            down = _sign(ci * at(i - 1)) < 0
            bound = k - 1 if (up and down) else (k if (up or down) else k + 1)
            if a > bound:
                out.append(RuleViolation(RuleId.R2, i, i, _sign(ci)))
    top = c[m]
    if m > n and m >= 1 and abs(top) == 1:
        below = c[m - 1] * top
        if below == -k or (below == -k + 1 and _sign(c[m - 1] * at(m - 2)) < 0):
            out.append(RuleViolation(RuleId.R3, m - 1, m - 1, _sign(c[m - 1])))

    # -- rule 4: (1, c'_{m-1}, ..., c'_{m-i}) up to sign
    if m > n and abs(top) == 1 and m >= 1 and c[m - 1] * top in (-k + 1, -k + 2):
        for i in range(2, m + 1):
            v = c[m - i] * top
            if v in (-k, -k - 1):
                pot = potential(c[m - i : m], k)
                if 2 * pot < 2 + _sign_minus(top * at(m - i - 1)):
                    out.append(RuleViolation(RuleId.R4, m - i, m - 1, -top))
            if v not in (-k + 1, -k):
                break

    # -- rule 5: (c'_m, ..., c'_{m-i}) with c'_m in {k+1, k+2}
    if m >= n and abs(top) in (k + 1, k + 2):
        s = _sign(top)
        for i in range(1, m + 1):
            v = c[m - i] * s
            if v in (k, k + 1):
                pot = potential(c[m - i : m + 1], k)
                if 2 * pot < -10 - _sign_plus(top * at(m - i - 1)):
                    out.append(RuleViolation(RuleId.R5, m - i, m, s))
            if v not in (k - 1, k):
                break

    # -- rule 6: interior run (c'_j, ..., c'_l) bracketed by {k, k+1}
    for j in range(1, m + 1):
        if not (j < m or j < n):
            continue
        cj = c[j]
        if abs(cj) not in (k, k + 1):
            continue
        s = _sign(cj)
        for l in range(j - 1, -1, -1):
            v = c[l] * s
            if v in (k, k + 1):
                pot = potential(c[l : j + 1], k)
                bound2 = -4 - 2 * _sign_plus(cj * at(j + 1)) - _sign_plus(cj * at(l - 1))
                if 2 * pot < bound2:
                    out.append(RuleViolation(RuleId.R6, l, j, s))
            if v not in (k - 1, k):
                break
    return out


def _ascending_from_zero(P: LaurentPoly) -> list[int]:
    if P.is_zero():
        return []
    return P.ascending(0, P.high)


def violations(word: CoeffWord, n: int, k: int) -> list[RuleViolation]:
    """Rule violations of a polynomial-part word (degrees >= 0)."""
    if not isinstance(word, CoeffWord):
        word = CoeffWord(len(word) - 1, tuple(word))
    if word.low_degree < 0:
        raise ValueError("violations() expects a polynomial-part word (degrees >= 0)")
    c = [word.at(i) for i in range(0, word.lead_degree + 1)]
    return poly_violations(c, n, k)


def is_reduced(P: LaurentPoly, n: int, k: int) -> bool:
    """Whether the polynomial ``P`` (no negative degrees) is n-reduced."""
    if P.low is not None and P.low < 0:
        raise ValueError("is_reduced expects an ordinary polynomial")
    return not poly_violations(_ascending_from_zero(P), n, k)


def is_reduced_principal(Q: LaurentPoly, n: int, k: int) -> bool:
    """A principal part ``Q`` is acceptable when its mirror is (-n)-reduced."""
    if Q.high is not None and Q.high >= 0:
        raise ValueError("is_reduced_principal expects degrees <= -1")
    return is_reduced(Q.mirror(), -n, k)


def _minimal(vs: list[RuleViolation]) -> list[RuleViolation]:
    return [v for v in vs if not any(w is not v and v.contains(w) and w.span != v.span for w in vs)]


def rightmost_minimal_poison(word, n: int, k: int) -> RuleViolation | None:
    """The minimal (under inclusion) violating subword with the lowest top degree."""
    if isinstance(word, LaurentPoly):
        vs = poly_violations(_ascending_from_zero(word), n, k)
    elif isinstance(word, CoeffWord):
        vs = violations(word, n, k)
    else:
        vs = poly_violations(list(word), n, k)
    if not vs:
        return None
    mins = _minimal(vs)
    return min(mins, key=lambda v: (v.high, v.low))


def apply_rewrite(F: LaurentPoly, v: RuleViolation, n: int, k: int, check: bool = True) -> LaurentPoly:
    """Subtract ``sign * long_relation`` over the span of ``v`` extended one degree down."""
    if check:
        word = _ascending_from_zero(F.polynomial_part())
        if v not in poly_violations(word, n, k):
            raise ValueError(f"{v} is not a violation of {F} at level {n}")
    return F - long_relation(k, v.low - 1, v.high - v.low) * v.sign


@dataclass(frozen=True)
class RewriteStep:
    violation: RuleViolation
    before: LaurentPoly
    after: LaurentPoly
    length_before: int
    length_after: int
    mirrored: bool = False


def _shifted_truncation(F: LaurentPoly, r: int) -> list[int]:
    # zeros below degree r: the truncation is read as a polynomial in its own right
    if F.high is None or F.high < r:
        return []
    return [0] * r + F.ascending(r, F.high)


def reduce_polynomial_part(
    F: LaurentPoly,
    n: int,
    k: int,
    r: int = 0,
    trace: Callable[[RewriteStep], None] | None = None,
    check_progress: bool = True,
    max_steps: int | None = None,
) -> LaurentPoly:
    """Rewrite the terms of degree >= ``r`` into an n-reduced word.

    Repeatedly rewrites the rightmost minimal poison subword of the truncation
    at ``r``.  Each rewrite may perturb the coefficient at degree ``r - 1``.
    The poison site must move strictly left (both ends of its span strictly
    increase) from one step to the next; anything else raises
    :class:`ReductionError`.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    prev: RuleViolation | None = None
    support = max(1, len(F.support()))
    limit = max_steps if max_steps is not None else 4 * support + 8
    steps = 0
    while True:
        word = _shifted_truncation(F, r)
        v = rightmost_minimal_poison(word, n, k)
        if v is None:
            return F
        if check_progress and prev is not None and not (v.high > prev.high and v.low > prev.low):
            raise ReductionError(
                f"rewriting did not move left: {prev} then {v} in {F} (n={n}, k={k}, r={r})"
            )
        steps += 1
        if steps > limit:
            raise ReductionError(f"no termination after {limit} rewrites of {F}")
        G = F - long_relation(k, v.low - 1, v.high - v.low) * v.sign
        if trace is not None:
            trace(RewriteStep(v, F, G, n_length(F, n)[0], n_length(G, n)[0]))
        prev = v
        F = G


def reduce_principal_part(
    F: LaurentPoly,
    n: int,
    k: int,
    trace: Callable[[RewriteStep], None] | None = None,
    check_progress: bool = True,
) -> LaurentPoly:
    """Mirror of :func:`reduce_polynomial_part` for degrees <= -1 at level ``-n``."""
    inner = None
    if trace is not None:
        def inner(step: RewriteStep):
            trace(
                RewriteStep(
                    step.violation,
                    step.before.mirror(),
                    step.after.mirror(),
                    n_length(step.before.mirror(), n)[0],
                    n_length(step.after.mirror(), n)[0],
                    mirrored=True,
                )
            )
    G = reduce_polynomial_part(F.mirror(), -n, k, 0, trace=inner, check_progress=check_progress)
    return G.mirror()


def reduce_full(
    F: LaurentPoly,
    n: int,
    k: int,
    trace: Callable[[RewriteStep], None] | None = None,
    check_progress: bool = True,
) -> LaurentPoly:
    """Rewrite until both the polynomial and the mirrored principal part are reduced.

    Principal part first, then the polynomial part; a spill of the polynomial
    rewriting into degree -1 sends us back to the principal part.
    """
    limit = 4 * max(1, len(F.support())) + 8
    for _ in range(limit):
        F = reduce_principal_part(F, n, k, trace=trace, check_progress=check_progress)
        G = reduce_polynomial_part(F, n, k, 0, trace=trace, check_progress=check_progress)
        if G[-1] == F[-1]:
            return G
        F = G
    raise ReductionError(f"reduce_full did not stabilise on {F}")


@dataclass(frozen=True)
class SearchResult:
    representative: LaurentPoly
    length: int
    verified: bool


def _window_search(x, n, k, p, q, budget, base_cost, params):
    """Representatives of x with support in [-p-1, q] and n-length <= budget.

    The coefficients of degrees q .. -p+1 are free; the last two are forced by
    the two coordinates of x, since consecutive powers ``T^j b`` form a basis.
    """
    degs = list(range(q, -p - 2, -1))
    free = degs[:-2]
    # vector of each basis monomial
    vec = {d: t_action(params, (0, 1), d) for d in degs}
    # solve the remaining two coefficients c_{-p}, c_{-p-1}:  c1*v1 + c2*v2 = rhs
    d1, d2 = degs[-2], degs[-1]
    (u0, u1), (w0, w1) = vec[d1], vec[d2]
    det = u0 * w1 - u1 * w0  # = +-1 since consecutive T-powers of b form a basis
    best = None
    slack0 = budget - base_cost

    def rec(idx, acc0, acc1, used, chosen):
        nonlocal best
        if idx == len(free):
            r0, r1 = x[0] - acc0, x[1] - acc1
            c1 = (r0 * w1 - r1 * w0) // det
            c2 = (u0 * r1 - u1 * r0) // det
            cost = used + abs(c1) + abs(c2)
            coeffs = dict(zip(free, chosen))
            coeffs[d1] = c1
            coeffs[d2] = c2
            if cost <= slack0:
                F = LaurentPoly(coeffs)
                L = n_length(F, n)[0]
                if best is None or L < best[1]:
                    best = (F, L)
            return
        d = free[idx]
        room = slack0 - used
        v0, v1 = vec[d]
        for c in range(-room, room + 1):
            rec(idx + 1, acc0 + c * v0, acc1 + c * v1, used + abs(c), chosen + [c])

    rec(0, 0, 0, 0, [])
    return best


def minimal_representative_search(
    params: GroupParams, x: tuple[int, int], n: int, budget: int, oracle_distance: int | None = None
) -> SearchResult:
    """Brute-force n-minimal representative of ``x`` among all of n-length <= ``budget``.

    Every representative is the seed ``x0 X^-1 + x1`` plus a multiple of the
    relation; enumerating support windows ``[-p-1, q]`` and all coefficient
    choices bounded by the budget covers the whole coset.  ``verified`` is
    False when nothing within the budget was found.
    """
    k = params.k
    best = None
    for p in range(max(0, -n), budget + 1):
        for q in range(max(0, n), budget + 1):
            base = 2 * p + 2 * q - abs(n)
            if base > budget:
                continue
            found = _window_search(x, n, k, p, q, budget, base, params)
            if found is not None and (best is None or found[1] < best[1]):
                best = found
    if best is None:
        seed = LaurentPoly({0: x[1], -1: x[0]})
        return SearchResult(seed, n_length(seed, n)[0], False)
    F, L = best
    if oracle_distance is not None and L != oracle_distance:
        raise ReductionError(f"search found length {L} for {x}, t^{n}; oracle says {oracle_distance}")
    assert evaluate_rep(params, F) == tuple(x)
    return SearchResult(F, L, True)
