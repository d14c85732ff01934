"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest -v -s tests/test_acceptance.py`` or directly as a script.
"""

import random
import sys
import time
from itertools import permutations, product
from math import gcd

import pytest

from looijenga import bps, cli, geom, localgw, loggw, opengw, quiverdt, scatter
from looijenga.opengw import hook_pairing
from looijenga.qalg import RationalQ
from looijenga.symfun import (
    EMPTY,
    cauchy_pairing_product,
    hook,
    partitions,
    schur_jacobi_trudi,
    schur_principal,
    series_inv,
    series_mul,
    skew_hook_principal,
    skew_schur_shifted_lr,
)

GOLDEN = [1, 1, 1, 2, 5, 13, 35, 100, 300, 925, 2915, 9386]

DP311_CHAIN = ("dP3(1,1)", "dP2(1,2)", "dP1(1,3)", "P2(1,4)", "F0(2,2)")
DP2100_CHAIN = ("dP2(1,0,0)", "dP1(1,1,0)", "F0(2,0,0)", "P2(1,1,1)")
BPS_PAIRS = ("dP3(1,1)", "dP3(0,0,0)", "F0(0,0,0,0)") + DP311_CHAIN[1:] + DP2100_CHAIN


def _fails(report):
    return [r["inputs"] for r in report.to_json_obj()["records"] if not r["pass"]]


def criterion_1():
    t = time.perf_counter()
    s = quiverdt.dt_invariants(quiverdt.quiver_from_pair("P2(1,4)").quiver, 12)
    got = [s.numerical((d,)) for d in range(1, 13)]
    dt = time.perf_counter() - t
    return got == GOLDEN and dt <= 60, f"DT^num={got} in {dt:.2f}s"


def criterion_2():
    t = time.perf_counter()
    bad, n = [], 0
    for p in geom.list_pairs():
        rep = cli.verify_log_local(p, 3 if p.id in cli._SMALL_BOX else 5)
        n += len(rep.records)
        bad += [(p.id, f) for f in _fails(rep)]
    dt = time.perf_counter() - t
    return not bad and dt <= 300, f"{n} classes over {len(geom.list_pairs())} pairs, {len(bad)} failures, {dt:.1f}s"


def criterion_3():
    t = time.perf_counter()
    model = scatter.get_model("dP3(1,1)")
    pair = geom.get_pair("dP3(1,1)")
    n, bad = 0, []
    for d in product(range(5), range(5), range(5), range(5)):
        if not geom.is_effective(pair, d) or any(c <= 0 for c in geom.intersections(pair, d)):
            continue
        n += 1
        if scatter.log_invariant_2pt(model, d) != loggw.dp311_poly(d):
            bad.append(d)
    dt = time.perf_counter() - t
    return not bad and dt <= 120, f"{n} classes with d0<=4, {len(bad)} mismatches, {dt:.1f}s"


def criterion_4():
    pairs = DP311_CHAIN + DP2100_CHAIN + ("F0(0,0,0,0)",) + tuple(f"P(1,1,{n})" for n in range(1, 5))
    bad, n = [], 0
    for pid in pairs:
        pair = geom.get_pair(pid) if not pid.startswith("P(") else geom.orbifold_pair(int(pid[-2]))
        for r in opengw.verify_log_open(pair, 4):
            n += 1
            if not r.ok:
                bad.append((pid, r.degree, r.kind))
    for p in geom.list_pairs():
        if p.quasi_tame and not p.tame and p.property_O:
            for r in opengw.verify_log_open(p, 4):
                if r.kind == "genus0":
                    n += 1
                    if not r.ok:
                        bad.append((p.id, r.degree, r.kind))
    where = sorted({b[0] for b in bad})
    return not bad, f"{n} records, {len(bad)} failures" + (f" in {where}" if bad else "")


def criterion_5():
    bad, n = [], 0
    for pid in BPS_PAIRS:
        for r in bps.verify_integrality(pid, 4):
            n += 1
            if not (r.integral and r.symmetric and r.within_bound):
                bad.append((pid, r.degree))
    return not bad, f"{n} classes over {len(BPS_PAIRS)} pairs, {len(bad)} failures"


def criterion_6():
    pair = geom.get_pair("dP5(0,0)")
    n, asym, nonint = 0, [], []
    for d in product(range(4), repeat=6):
        if not geom.is_effective(pair, d) or d[0] > 3:
            continue
        n += 1
        v = localgw.local_dp5(d)
        if any(localgw.local_dp5(d[:2] + p) != v for p in permutations(d[2:])):
            asym.append(d)
        g = 0
        for x in d:
            g = gcd(g, x)
        if 1 <= g <= 3 and all(c > 0 for c in geom.intersections(pair, d)):
            if localgw.kp_invariant(pair, d).denominator != 1:
                nonint.append(d)
    return not asym and not nonint, f"{n} classes, {len(asym)} asymmetric, {len(nonint)} non-integral KP"


def criterion_7():
    bad = []
    for n in range(9):
        for lam in partitions(n):
            if schur_principal(lam) != schur_jacobi_trudi(lam):
                bad.append(("stanley", lam))
    for i in range(1, 7):
        for j in range(i):
            for k in range(i + 1):
                for gamma in partitions(k):
                    if skew_hook_principal(i, j, gamma) != skew_schur_shifted_lr(hook(i, j), gamma):
                        bad.append(("skew", i, j, gamma))
    for d in range(1, 6):
        inv = series_inv(cauchy_pairing_product(EMPTY, EMPTY, d), d)
        for j in range(d):
            got = series_mul(cauchy_pairing_product(hook(d, j), EMPTY, d), inv, d)
            if got != [RationalQ(c) for c in hook_pairing(d, j)]:
                bad.append(("pairing", d, j))
    return not bad, f"{len(bad)} failures"


def criterion_8():
    reps = [cli.verify_identities("dp1binom", 5), cli.verify_identities("dp302", 4)]
    n = sum(len(r.records) for r in reps)
    ok = all(r.passed(strict=True) for r in reps)
    return ok, f"{n} records (strict), {sum(len(_fails(r)) for r in reps)} failures"


def criterion_9():
    bad = []
    for seed in range(50):
        rng = random.Random(seed)
        q = quiverdt.random_symmetric_quiver(rng, max_vertices=3, max_edges=3)
        dmax = {1: 4, 2: 3, 3: 2}[q.n]
        s = quiverdt.dt_invariants(q, dmax)
        if any(s.numerical(d) < 0 for d in s.omega):
            bad.append(seed)
    return not bad, f"50 quivers, {len(bad)} with a negative DT^num"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, capsys):
    ok, detail = CRITERIA[num]()
    with capsys.disabled():
        print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for num, fn in CRITERIA.items():
        ok, detail = fn()
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
        status |= not ok
    sys.exit(status)
