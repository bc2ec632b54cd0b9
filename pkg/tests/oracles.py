"""Brute-force oracles shared by the tests.

Kept independent of the automaton and the successor walk: n-reduced
polynomials are found by trying coefficient strings top-down and asking
``is_reduced`` of every top segment, which prunes correctly because a top
segment ``(c_m .. c_j)`` of an n-reduced word is itself ``(n-j)``-reduced.
"""
from __future__ import annotations

from itertools import product

from torusgrowth.group import GroupParams, word_element
from torusgrowth.laurent import LaurentPoly, n_length
from torusgrowth.reduction import is_reduced


def _floor(top: int, n: int) -> int:
    # n-length of X^top's shape before coefficients are paid for
    return 2 * max(top, n) - n if n >= 0 else 2 * top - n


def reduced_polys(n: int, k: int, max_length: int, positive_only: bool = True) -> list[LaurentPoly]:
    """Every n-reduced polynomial of n-length <= ``max_length``."""
    out: list[LaurentPoly] = []
    if n_length(LaurentPoly(), n)[0] <= max_length:
        out.append(LaurentPoly())

    def rec(desc: list[int], top: int, used: int):
        j = top - len(desc) + 1
        if not is_reduced(LaurentPoly.from_ascending(desc[::-1]), n - j, k):
            return
        if j == 0:
            P = LaurentPoly.from_ascending(desc[::-1])
            if n_length(P, n)[0] <= max_length:
                out.append(P)
            return
        for c in range(-(k + 2), k + 3):
            if _floor(top, n) + used + abs(c) <= max_length:
                rec(desc + [c], top, used + abs(c))

    top = 0
    while _floor(top, n) + 1 <= max_length:
        for c in range(1, k + 3):
            if _floor(top, n) + c <= max_length:
                rec([c], top, c)
        top += 1
    if not positive_only:
        out += [-P for P in out if P]
    return out


def z2_spheres(R: int) -> list[int]:
    return [sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) if abs(x) + abs(y) == r)
            for r in range(R + 1)]


def word_ball_sizes(k: int, R: int) -> list[int]:
    """Ball sizes by evaluating every word of length <= R (tiny R only)."""
    params = GroupParams(k)
    seen = set()
    sizes = []
    for r in range(R + 1):
        for w in product("aAbBtT", repeat=r):
            seen.add(word_element(params, "".join(w)))
        sizes.append(len(seen))
    return sizes
