"""A finite automaton recognising n-reduced coefficient words.

Words are read from the leading coefficient down to the constant term.  The
six rules only ever need a bounded amount of memory: the last two letters, the
leading letter, and one running potential for each of the three global rules.
Each rule's threshold depends on the sign of the letter just below a
candidate subword, so those checks are left pending until the next letter (or
the end of the word, which behaves like a trailing 0) arrives.

Whether the top rules apply depends only on how the degree ``m`` compares
with ``n``: ``m > n`` (``GT``), ``m = n`` (``EQ``) or ``m < n`` (``LT``).  Under
``P = X*R + c`` both ``m`` and ``n`` drop by one, so a word keeps its regime
and a single automaton per regime serves every level.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Regime",
    "ScanState",
    "DEAD",
    "regime_of",
    "start_state",
    "step",
    "accepts_end",
    "accepts",
    "alphabet",
    "Dfa",
    "build_dfa",
    "minimize",
]


class Regime(str, enum.Enum):
    GT = "gt"  # degree above n: every top rule applies
    EQ = "eq"  # degree equal to n: rules 1 and 5 apply at the top
    LT = "lt"  # degree below n: the top letter is treated as interior

    def __str__(self):
        return self.value


def regime_of(m: int, n: int) -> Regime:
    if m > n:
        return Regime.GT
    return Regime.EQ if m == n else Regime.LT


def alphabet(k: int) -> range:
    """Letters that can occur in a reduced word; anything larger is rejected at once."""
    return range(-(k + 2), k + 3)


def _sgn(x):
    return (x > 0) - (x < 0)


def _sp(x):  # sign^+ as used by the thresholds
    return 1 if x >= 0 else -1


def _sm(x):  # sign^-
    return 1 if x > 0 else -1


class ScanState(NamedTuple):
    regime: Regime
    depth: int  # letters read so far, capped at 3
    top: int
    p1: int  # last letter
    p2: int  # letter before it (0 above the top)
    r4: tuple | None  # (pot, continues, pending_pot | None)
    r5: tuple | None
    r6: tuple | None  # (sign, min 2*pot + 2*sp, continues, pending | None)


# a sentinel; compares unequal to every real state
DEAD = None

# running potentials are clipped from above; a value this far over a
# threshold can never come back down before another rule intervenes
_CAP = 12


def start_state(regime: Regime) -> ScanState:
    return ScanState(Regime(regime), 0, 0, 0, 0, None, None, None)


def _contrib(c: int, k: int) -> int:
    return 2 * k - 1 - 2 * abs(c)


def _resolve(state: ScanState, nxt: int, k: int) -> bool:
    """Pending checks that needed the letter ``nxt`` below the last one; True if all pass."""
    reg, depth, top, p1, p2 = state.regime, state.depth, state.top, state.p1, state.p2
    if depth == 0:
        return True
    # rule 1, second clause
    if depth == 1 and reg is not Regime.LT:
        if abs(top) > k + 1 and _sgn(top * nxt) < 0:
            return False
    # rule 2 on the last letter
    if p1 != 0 and (depth > 1 or reg is Regime.LT):
        up = _sgn(p2 * p1) < 0
        down = _sgn(p1 * nxt) < 0
        bound = k - 1 if (up and down) else (k if (up or down) else k + 1)
        if abs(p1) > bound:
            return False
    # rule 3, second clause: nxt is c_{m-2}
    if depth == 2 and reg is Regime.GT and abs(top) == 1:
        if p1 * top == -k + 1 and _sgn(p1 * nxt) < 0:
            return False
    if state.r4 is not None and state.r4[2] is not None:
        if 2 * state.r4[2] < 2 + _sm(top * nxt):
            return False
    if state.r5 is not None and state.r5[2] is not None:
        if 2 * state.r5[2] < -10 - _sp(top * nxt):
            return False
    if state.r6 is not None and state.r6[3] is not None:
        s = state.r6[0]
        if state.r6[3] < -4 - _sp(s * nxt):
            return False
    return True


def step(state: ScanState | None, c: int, k: int) -> ScanState | None:
    """Append the next lower letter ``c``; DEAD once no extension can be reduced."""
    if state is DEAD:
        return DEAD
    reg, depth = state.regime, state.depth
    if depth == 0:
        if c == 0:
            raise ValueError("the leading letter must be non-zero")
        lim = k + 2 if reg is not Regime.LT else k + 1
        if abs(c) > lim:
            return DEAD
        r5 = None
        if reg is not Regime.LT and abs(c) in (k + 1, k + 2):
            r5 = (_contrib(c, k), True, None)
        r6 = None
        if reg is Regime.LT and abs(c) in (k, k + 1):
            r6 = (_sgn(c), 2 * _contrib(c, k) + 2, True, None)
        return ScanState(reg, 1, c, c, 0, None, r5, r6)

    if not _resolve(state, c, k):
        return DEAD
    if abs(c) > k + 1:
        return DEAD
    top = state.top
    # rule 3, first clause
    if depth == 1 and reg is Regime.GT and abs(top) == 1 and c * top == -k:
        return DEAD

    # rule 4: runs hanging off a leading +-1
    r4 = None
    if reg is Regime.GT and abs(top) == 1:
        v = c * top
        if depth == 1:
            if v in (-k + 1, -k + 2):
                r4 = (_contrib(c, k), True, None)
        elif state.r4 is not None and state.r4[1]:
            pot = min(state.r4[0] + _contrib(c, k), _CAP)
            pend = pot if v in (-k, -k - 1) else None
            r4 = (pot, v in (-k + 1, -k), pend)
            if not r4[1] and pend is None:
                r4 = None
    # rule 5: runs hanging off a leading k+1 or k+2
    r5 = None
    if state.r5 is not None and state.r5[1]:
        v = c * _sgn(top)
        pot = min(state.r5[0] + _contrib(c, k), _CAP)
        pend = pot if v in (k, k + 1) else None
        r5 = (pot, v in (k - 1, k), pend)
        if not r5[1] and pend is None:
            r5 = None
    # rule 6: bracketed interior runs
    r6 = None
    pend6 = None
    cont_val = None
    if state.r6 is not None and state.r6[2]:
        s = state.r6[0]
        v = c * s
        val = min(state.r6[1] + 2 * _contrib(c, k), 2 * _CAP)
        if v in (k, k + 1):
            pend6 = val
        if v in (k - 1, k):
            cont_val = val
    # every letter at this point is below the top, so it may open a run
    new_start = None
    if abs(c) in (k, k + 1):
        new_start = 2 * _contrib(c, k) + 2 * _sp(c * state.p1)
    if new_start is not None:
        # a continuing run has the same sign as c here
        mval = new_start if cont_val is None else min(cont_val, new_start)
        r6 = (_sgn(c), mval, True, pend6)
    elif cont_val is not None or pend6 is not None:
        s = state.r6[0]
        r6 = (s, cont_val if cont_val is not None else 0, cont_val is not None, pend6)
    return ScanState(reg, min(depth + 1, 3), top, c, state.p1, r4, r5, r6)


def accepts_end(state: ScanState | None, k: int) -> bool:
    """Whether the word read so far is itself reduced (the end acts as a trailing 0)."""
    if state is DEAD or state.depth == 0:
        return False
    return _resolve(state, 0, k)


def accepts(desc: Sequence[int], n: int, k: int) -> bool:
    """Run the automaton on a word given leading letter first."""
    if not desc:
        return True
    st = start_state(regime_of(len(desc) - 1, n))
    for c in desc:
        st = step(st, c, k)
        if st is DEAD:
            return False
    return accepts_end(st, k)


# -- explicit DFA ------------------------------------------------------------------

@dataclass
class Dfa:
    """States are integers; ``delta[s][c]`` is the successor or -1 (dead)."""

    k: int
    regime: Regime
    start: int
    delta: list[dict[int, int]]
    accepting: list[bool]

    @property
    def size(self) -> int:
        return len(self.delta)


@lru_cache(maxsize=None)
def build_dfa(k: int, regime: Regime) -> Dfa:
    """Explore every reachable scanner state, then minimise.

    The start state is the empty word; its transitions read the leading
    letter, so only non-zero letters leave it.
    """
    regime = Regime(regime)
    s0 = start_state(regime)
    index = {s0: 0}
    order = [s0]
    delta: list[dict[int, int]] = [{}]
    i = 0
    while i < len(order):
        st = order[i]
        for c in alphabet(k):
            if st.depth == 0 and c == 0:
                continue
            nx = step(st, c, k)
            if nx is DEAD:
                continue
            if nx not in index:
                index[nx] = len(order)
                order.append(nx)
                delta.append({})
            delta[i][c] = index[nx]
        i += 1
    accepting = [accepts_end(st, k) for st in order]
    return minimize(Dfa(k, regime, 0, delta, accepting))


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement; dead transitions stay implicit."""
    letters = sorted({c for row in dfa.delta for c in row})
    block = [1 if a else 0 for a in dfa.accepting]
    while True:
        sig = {}
        new = []
        for s in range(dfa.size):
            key = (block[s],) + tuple(block[dfa.delta[s][c]] if c in dfa.delta[s] else -1 for c in letters)
            new.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(block)):
            break
        block = new
    # renumber so that the start state is 0 and the rest follow BFS order
    order = [block[dfa.start]]
    seen = {order[0]: 0}
    reps = {}
    for s in range(dfa.size):
        reps.setdefault(block[s], s)
    i = 0
    while i < len(order):
        s = reps[order[i]]
        for c in letters:
            if c in dfa.delta[s]:
                b = block[dfa.delta[s][c]]
                if b not in seen:
                    seen[b] = len(order)
                    order.append(b)
        i += 1
    delta = []
    accepting = []
    for b in order:
        s = reps[b]
        delta.append({c: seen[block[t]] for c, t in dfa.delta[s].items()})
        accepting.append(dfa.accepting[s])
    return Dfa(dfa.k, dfa.regime, 0, delta, accepting)


def run_dfa(dfa: Dfa, desc: Iterable[int]) -> int:
    s = dfa.start
    for c in desc:
        s = dfa.delta[s].get(c, -1)
        if s < 0:
            return -1
    return s
