"""Exact arithmetic in ``G = Z^2 x|_T Z`` and a breadth-first word-metric oracle.

``T = [[0, -1], [1, 2k+1]]`` acts on the fiber by ``t x t^-1 = T x``; the
generating set is ``{a, b, t}`` with ``a = (1, 0)``, ``b = (0, 1)``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import NamedTuple

__all__ = [
    "GroupParams",
    "GroupElement",
    "BallTable",
    "BudgetExceeded",
    "t_action",
    "multiply",
    "invert",
    "identity",
    "generators",
    "bfs_ball",
    "word_element",
    "DEFAULT_MAX_RADIUS",
    "DEFAULT_MAX_VISITED",
]

DEFAULT_MAX_RADIUS = 14
DEFAULT_MAX_VISITED = 10**7


class BudgetExceeded(RuntimeError):
    """The BFS visited set grew past its configured cap."""


@dataclass(frozen=True)
class GroupParams:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")

    @property
    def trace(self) -> int:
        return 2 * self.k + 1

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((0, -1), (1, self.trace))

    @property
    def inverse_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.trace, 1), (-1, 0))


class GroupElement(NamedTuple):
    """``(x, t^n)``; the tuple order ``(n, x0, x1)`` is the canonical sort key."""

    n: int
    x0: int
    x1: int

    @property
    def x(self) -> tuple[int, int]:
        return (self.x0, self.x1)

    @classmethod
    def of(cls, x: tuple[int, int], n: int) -> "GroupElement":
        return cls(n, x[0], x[1])

    def __str__(self):
        return f"(({self.x0},{self.x1}),t^{self.n})"


def identity() -> GroupElement:
    return GroupElement(0, 0, 0)


def t_action(params: GroupParams, x: tuple[int, int], m: int) -> tuple[int, int]:
    """``T^m x`` by repeated exact application of ``T`` or ``T^-1``."""
    d = params.trace
    x0, x1 = x
    if m >= 0:
        for _ in range(m):
            x0, x1 = -x1, x0 + d * x1
    else:
        for _ in range(-m):
            x0, x1 = d * x0 + x1, -x0
    return (x0, x1)


def multiply(params: GroupParams, g: GroupElement, h: GroupElement) -> GroupElement:
    """``(x, t^n)(y, t^m) = (x + T^n y, t^(n+m))``."""
    y0, y1 = t_action(params, h.x, g.n)
    return GroupElement(g.n + h.n, g.x0 + y0, g.x1 + y1)


def invert(params: GroupParams, g: GroupElement) -> GroupElement:
    y0, y1 = t_action(params, (-g.x0, -g.x1), -g.n)
    return GroupElement(-g.n, y0, y1)


def generators() -> list[tuple[str, GroupElement]]:
    """``a, a^-1, b, b^-1, t, t^-1`` in the fixed traversal order."""
    return [
        ("a", GroupElement(0, 1, 0)),
        ("A", GroupElement(0, -1, 0)),
        ("b", GroupElement(0, 0, 1)),
        ("B", GroupElement(0, 0, -1)),
        ("t", GroupElement(1, 0, 0)),
        ("T", GroupElement(-1, 0, 0)),
    ]


@dataclass
class BallTable:
    k: int
    radius: int
    distances: dict[GroupElement, int] = field(repr=False)
    sphere_sizes: list[int]
    last_letter: dict[GroupElement, int] | None = field(default=None, repr=False)

    @property
    def ball_sizes(self) -> list[int]:
        out, acc = [], 0
        for s in self.sphere_sizes:
            acc += s
            out.append(acc)
        return out

    def distance(self, g: GroupElement) -> int | None:
        return self.distances.get(g)

    def geodesic(self, g: GroupElement) -> str:
        """A shortest word for ``g`` (needs ``bfs_ball(..., keep_words=True)``)."""
        if self.last_letter is None:
            raise ValueError("ball was built without keep_words=True")
        if g not in self.distances:
            raise KeyError(g)
        gens = generators()
        letters = []
        # peel letters off the right: g = h * s  =>  h = g * s^-1
        while self.distances[g] > 0:
            idx = self.last_letter[g]
            letters.append(gens[idx][0])
            n = g.n
            if idx >= 4:
                g = GroupElement(n - 1 if idx == 4 else n + 1, g.x0, g.x1)
            else:
                (s0, s1) = gens[idx][1].x
                y0, y1 = _t_pow(self.k, (s0, s1), n)
                g = GroupElement(n, g.x0 - y0, g.x1 - y1)
        return "".join(reversed(letters))

    def sphere(self, r: int) -> list[GroupElement]:
        return sorted(g for g, d in self.distances.items() if d == r)

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "radius": self.radius,
                "sphere_sizes": self.sphere_sizes,
                "ball_sizes": self.ball_sizes,
            }
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius", "sphere", "ball"])
        for r, (s, b) in enumerate(zip(self.sphere_sizes, self.ball_sizes)):
            w.writerow([r, s, b])
        return buf.getvalue()


def _t_pow(k, x, m):
    return t_action(GroupParams(k), x, m)


def word_element(params: GroupParams, word: str) -> GroupElement:
    """Evaluate a word over ``a A b B t T`` (capitals are inverses)."""
    table = dict(generators())
    g = identity()
    for ch in word:
        g = multiply(params, g, table[ch])
    return g


def bfs_ball(
    params: GroupParams,
    radius: int,
    max_radius: int = DEFAULT_MAX_RADIUS,
    max_visited: int = DEFAULT_MAX_VISITED,
    keep_words: bool = False,
) -> BallTable:
    """All elements of word length <= ``radius`` with their exact distances.

    Right multiplication by ``a^±1, b^±1`` moves the fiber coordinate by
    ``±T^n a``, ``±T^n b``; ``t^±1`` only moves ``n``.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius > max_radius:
        raise BudgetExceeded(f"radius {radius} exceeds the configured maximum {max_radius}")

    images: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}

    def fiber_steps(n):
        if n not in images:
            images[n] = (t_action(params, (1, 0), n), t_action(params, (0, 1), n))
        return images[n]

    start = identity()
    dist = {start: 0}
    last = {start: -1} if keep_words else None
    frontier = [start]
    spheres = [1]
    for r in range(1, radius + 1):
        nxt = []
        for n, x0, x1 in frontier:
            (a0, a1), (b0, b1) = fiber_steps(n)
            for idx, g in enumerate((
                GroupElement(n, x0 + a0, x1 + a1),
                GroupElement(n, x0 - a0, x1 - a1),
                GroupElement(n, x0 + b0, x1 + b1),
                GroupElement(n, x0 - b0, x1 - b1),
                GroupElement(n + 1, x0, x1),
                GroupElement(n - 1, x0, x1),
            )):
                if g not in dist:
                    dist[g] = r
                    nxt.append(g)
                    if last is not None:
                        last[g] = idx
        if len(dist) > max_visited:
            raise BudgetExceeded(f"visited set exceeded {max_visited} elements at radius {r}")
        frontier = nxt
        spheres.append(len(nxt))
    return BallTable(params.k, radius, dist, spheres, last)
