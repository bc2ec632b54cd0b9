"""Acceptance criteria 1-7, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
Expected values come from the breadth-first oracle or from brute force in
``oracles.py``, never from the code under test.
"""
from __future__ import annotations

import io
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import reduced_polys, z2_spheres  # noqa: E402
from torusgrowth import cli  # noqa: E402
from torusgrowth.group import GroupParams, bfs_ball  # noqa: E402
from torusgrowth.laurent import LaurentPoly, evaluate_rep, n_length, word_representative  # noqa: E402
from torusgrowth.reduction import ReductionError, is_reduced, poly_violations, reduce_full  # noqa: E402
from torusgrowth.series import (  # noqa: E402
    CLASS_LABELS,
    CertificationError,
    PolyT,
    RationalT,
    _apply,
    assemble_growth_series,
    base_vectors,
    class_counts_by_degree,
    expand_coeffs,
    linear_recurrence_holds,
    summed_class_series,
    transfer_matrix,
    truncated_neumann,
)
from torusgrowth.successor import (  # noqa: E402
    ClassTag,
    NType,
    classify,
    enumerate_reduced,
    predecessor,
    succ_effect,
    successor,
)


def _report(num: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


# ---------------------------------------------------------------- criterion 1

def check_verify_cli():
    notes, ok = [], True
    for k, R in ((2, 10), (3, 9)):
        t0 = time.perf_counter()
        out = io.StringIO()
        code = cli.main(["verify", "--k", str(k), "--radius", str(R), "--format", "json"], out=out)
        dt = time.perf_counter() - t0
        ok &= code == 0 and dt < 300
        notes.append(f"k={k} R={R} exit={code} {dt:.1f}s")
    return ok, "; ".join(notes)


# ---------------------------------------------------------------- criterion 2

def check_word_metric():
    k, R = 2, 8
    ball = bfs_ball(GroupParams(k), R, keep_words=True)
    params = GroupParams(k)
    bad = 0
    for g, d in ball.distances.items():
        F, n = word_representative(ball.geodesic(g))
        G = reduce_full(F, n, k)
        if evaluate_rep(params, G) != g.x or n_length(G, n)[0] != d:
            bad += 1
    return bad == 0, f"{len(ball.distances)} elements, {bad} mismatches"


# ---------------------------------------------------------------- criterion 3

def _rules_123_hold(F: LaurentPoly, n: int, k: int) -> bool:
    for G, m in ((F.polynomial_part(), n), (F.principal_part().mirror(), -n)):
        if G and any(v.rule <= 3 for v in poly_violations(G.ascending(0, G.high), m, k)):
            return False
    return True


def check_rewriting(samples_per_k: int = 5000, seed: int = 20240611):
    rng = random.Random(seed)
    viol = Counter()
    first = None
    total = 0
    for k in (2, 3):
        params = GroupParams(k)
        done = 0
        while done < samples_per_k:
            w = "".join(rng.choice("aAbBtT") for _ in range(rng.randint(1, 30)))
            F, n = word_representative(w)
            if not _rules_123_hold(F, n, k):
                continue
            done += 1
            steps = []
            try:
                G = reduce_full(F, n, k, trace=steps.append)
            except ReductionError as e:
                kind = "termination" if "termination" in str(e) or "stabilise" in str(e) else "progress"
                viol[kind] += 1
                first = first or f"{w!r} k={k}: {e}"
                continue
            x = evaluate_rep(params, F)
            if evaluate_rep(params, G) != x or any(
                evaluate_rep(params, s.after) != x for s in steps
            ):
                viol["element"] += 1
            if any(s.length_after > s.length_before for s in steps):
                viol["length"] += 1
        total += done
    ok = not viol
    detail = f"{total} words, violations {dict(viol) or 0}"
    if first:
        detail += f"; first: {first}"
    return ok, detail


# ---------------------------------------------------------------- criterion 4

_U_STEP = {ClassTag.U2: (0, "-a"), ClassTag.UT5: (0, "-a"), ClassTag.U1: (0, "+b-a"), ClassTag.UT4: (0, "+b-a")}
_TYPE_STEP = {NType.INITIAL: (1, "+b"), NType.INTERIOR: (1, "+b"), NType.NEGATIVE: (-1, "+b"),
              NType.BOUNDARY_S: (0, "+b")}


def _expected_effect(typ, cls):
    if cls is not None and cls.tag in _U_STEP:
        return _U_STEP[cls.tag]
    return _TYPE_STEP.get(typ)


def check_successor(max_length: int = 12):
    k = 2
    viol = Counter()
    first = None
    total = 0
    for n in range(-2, 5):
        polys = reduced_polys(n, k, max_length)
        total += len(polys)
        for P in polys:
            try:
                typ, cls = classify(P, n, k)
                S = successor(P, n, k)
                if not (is_reduced(S, n, k) and S.leading_coeff() > 0):
                    viol["successor not reduced"] += 1
                    continue
                if predecessor(S, n, k) != P:
                    viol["predecessor(successor) != id"] += 1
                eff = succ_effect(P, n, k)
                if (eff.length_delta, eff.step) != _expected_effect(typ, cls):
                    viol["effect"] += 1
            except Exception as e:  # any raise is a violation of the bijection claim
                viol[type(e).__name__] += 1
                first = first or f"{P} n={n}: {e}"
        walked = {e.poly for e in _safe_walk(n, k, max_length, viol)}
        if walked != set(polys):
            viol["walk coverage"] += 1
    detail = f"{total} polynomials, violations {dict(viol) or 0}"
    if first:
        detail += f"; first: {first}"
    return not viol, detail


def _safe_walk(n, k, max_length, viol):
    try:
        yield from enumerate_reduced(n, k, max_length)
    except Exception:
        viol["walk aborted"] += 1


# ---------------------------------------------------------------- criterion 5

def _histograms(k, n, N, polys):
    H = {}
    for P in polys:
        if not P:
            d = 0
        else:
            d = P.high
        try:
            cls = classify(P, n, k, check=False).cls
        except Exception:
            H.setdefault("unclassified", 0)
            H["unclassified"] += 1
            continue
        if cls is None:
            continue
        row = H.setdefault(d, [[0] * (N + 1) for _ in range(12)])
        row[CLASS_LABELS.index(str(cls.tag))][n_length(P, n)[0]] += 1
    return H


def check_transfer(N: int = 11, D: int = 6, Nneu: int = 14):
    bad, cells, unclassified = 0, 0, 0
    for k in (2, 3):
        for n in range(-3, 7):
            H = _histograms(k, n, N, reduced_polys(n, k, N))
            unclassified += H.pop("unclassified", 0)
            for d in range(D + 1):
                got = class_counts_by_degree(k, n, d).coefficients(N)
                want = H.get(d, [[0] * (N + 1) for _ in range(12)])
                cells += 1
                bad += got != want
    neu_bad = 0
    for k in (2, 3):
        M = transfer_matrix(k)
        for n in range(-3, 7):
            partial = [[0] * (Nneu + 1) for _ in range(12)]
            for d in range(Nneu + 2):
                for i, row in enumerate(class_counts_by_degree(k, n, d).coefficients(Nneu)):
                    for j, c in enumerate(row):
                        partial[i][j] += c
            if summed_class_series(k, n).coefficients(Nneu) != partial:
                neu_bad += 1
        # the Neumann series itself on the n > 0 base vector
        base = base_vectors(k, "n>0")[0]
        direct = truncated_neumann(M, base, Nneu)
        acc = [[0] * (Nneu + 1) for _ in range(12)]
        v = base
        for _ in range(Nneu + 1):
            for i, row in enumerate(v.coefficients(Nneu)):
                for j, c in enumerate(row):
                    acc[i][j] += c
            v = _apply(M, v)
        neu_bad += direct != acc
    ok = bad == 0 and neu_bad == 0 and unclassified == 0
    return ok, (f"histograms: {bad}/{cells} (k,n,d) cells differ, {unclassified} unclassified; "
                f"Neumann partial sums: {neu_bad} mismatches")


# ---------------------------------------------------------------- criterion 6

def check_recurrence(R: int = 12):
    ball = bfs_ball(GroupParams(2), R)
    try:
        res = assemble_growth_series(2, R, ball=ball)
    except CertificationError as e:
        return False, f"no certified series: first mismatch at r={e.radius} (bfs {e.expected}, series {e.got})"
    den = res.series.den
    bad = linear_recurrence_holds(den, ball.sphere_sizes)
    reach = len(ball.sphere_sizes) - 1
    return not bad, f"denominator degree {den.degree}, BFS to r={reach}, failing radii {bad or 'none'}"


# ---------------------------------------------------------------- criterion 7

def check_z2_fixture():
    want = z2_spheres(4)
    R = RationalT(PolyT([1, 1]) * PolyT([1, 1]), PolyT([1, -1]) * PolyT([1, -1]))
    got = expand_coeffs(R, 4)
    return got == want, f"expand {got} vs brute force {want}"


CHECKS = [
    (1, check_verify_cli),
    (2, check_word_metric),
    (3, check_rewriting),
    (4, check_successor),
    (5, check_transfer),
    (6, check_recurrence),
    (7, check_z2_fixture),
]


@pytest.mark.slow
@pytest.mark.parametrize("num,fn", CHECKS, ids=[f"criterion_{n}" for n, _ in CHECKS])
def test_criterion(num, fn, capsys):
    ok, detail = fn()
    _report(num, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, fn in CHECKS:
        ok, detail = fn()
        _report(num, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
