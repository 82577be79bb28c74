"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import numpy as np
import pytest

from negahappy.atlas import load_golden, matches_golden, table
from negahappy.goodset.certificate import direct_check, verify_certificate
from negahappy.goodset.witness import good_witness
from negahappy.goodset.words import merge
from negahappy.happy import power_sum, power_sum_array, threshold
from negahappy.negabase import evaluate_array, expand, evaluate, expand_array
from negahappy.runs import RunQuery, default_difference, find_run, reverify, verify_characterization

BASES = list(range(-2, -11, -1))
WITNESS_BASES = (-5, -7, -9, -4, -6, -8, -10)

# Exhaustive scans over [1, 10**7]; None records that no run exists in that range.
RUN_FIXTURES = {-4: None, -5: None, -6: None, -7: None, -8: None, -9: 11, -10: None}


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number} [{name}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok

    return emit


def test_criterion_1_table(report):
    start = time.perf_counter()
    atlases = table(BASES)
    elapsed = time.perf_counter() - start
    golden = {row["base"]: row for row in load_golden()}
    diffs = [f"{at.b}: {d}" for at in atlases for d in matches_golden(at, golden[at.b])]
    ok = not diffs and len(atlases) == 9 and elapsed < 5
    assert report(1, "cycle table", ok, f"{len(atlases)} bases, {elapsed:.2f}s"), diffs


def test_criterion_2_characterizations(report):
    start = time.perf_counter()
    ok = verify_characterization(-2, 10**6) and verify_characterization(-3, 10**6)
    elapsed = time.perf_counter() - start
    assert report(2, "base -2 / -3 characterizations", ok and elapsed < 60, f"1 <= |a| <= 10^6, {elapsed:.1f}s")


def test_criterion_3_decrease(report):
    bad = []
    for b in BASES:
        lo = threshold(b) + 1
        a = np.arange(lo, lo + 10**6, dtype=np.int64)
        s = power_sum_array(a, b)
        viol = (s <= 0) | (s >= a)
        bad += [(b, int(x)) for x in a[viol][:5]]
        rng = random.Random(b)
        for _ in range(10**4):
            x = rng.randrange(10**6, 10**31)
            if not 0 < power_sum(x, b) < x:
                bad.append((b, x))
    sharp = power_sum(3, -2) == 3 == threshold(-2)
    ok = not bad and sharp
    assert report(3, "decrease above threshold", ok, f"violations {len(bad)}, S(3) = 3 in base -2: {sharp}"), bad[:5]


def test_criterion_4_parity(report):
    rng = np.random.default_rng(4)
    bad = 0
    for b in (-3, -5, -7, -9):
        a = rng.integers(-(10**9), 10**9, size=10**5, dtype=np.int64, endpoint=True)
        x = a.copy()
        for _ in range(10):
            x = power_sum_array(x, b)
            bad += int(((x - a) % 2 != 0).sum())
    assert report(4, "parity invariant", bad == 0, f"violations {bad}")


def test_criterion_5_round_trip(report):
    rng = np.random.default_rng(5)
    bad = 0
    for b in BASES:
        a = rng.integers(-(10**18), 10**18, size=10**6, dtype=np.int64)
        bad += int((evaluate_array(expand_array(a, b), b) != a).sum())
        for v in a[:2000]:
            bad += evaluate(expand(int(v), b), b) != int(v)
    assert report(5, "expand/evaluate round trip", bad == 0, f"violations {bad}")


def test_criterion_6_witnesses(report):
    start = time.perf_counter()
    verdicts, direct = {}, {}
    for b in WITNESS_BASES:
        d = default_difference(b)
        _, cert = good_witness(b, [1, 1 + d], u=1)
        verdicts[b] = verify_certificate(cert)
        direct[b] = direct_check(cert)
    elapsed = time.perf_counter() - start
    confirmed = [b for b, v in direct.items() if v is True]
    ok = all(verdicts.values()) and confirmed and not any(v is False for v in direct.values()) and elapsed < 120
    detail = f"certified {sum(verdicts.values())}/7, direct confirmation for {confirmed}, {elapsed:.1f}s"
    assert report(6, "good-set witnesses", ok, detail), (verdicts, direct)


def test_criterion_7_merge_soundness(report):
    rng = random.Random(7)
    bad = []
    for b in WITNESS_BASES:
        done = 0
        while done < 10**3:
            t1, t2 = rng.randrange(2, 10**6), rng.randrange(1, 10**6)
            if b % 2:
                t2 += (t1 - t2) % 2
            if t1 == t2:
                continue
            t1, t2 = max(t1, t2), min(t1, t2)
            w = merge(b, t1, t2)
            if w.apply(t1, b) != w.apply(t2, b):
                bad.append((b, t1, t2))
            done += 1
    assert report(7, "merge soundness", not bad, f"7000 merges, failures {len(bad)}"), bad


def test_criterion_8_runs(report):
    summary, ok = [], True
    for b, expected in RUN_FIXTURES.items():
        res = find_run(RunQuery(b, default_difference(b), 3, 1, 10**7))
        ok &= res.first_start == expected
        if res.found:
            ok &= reverify(res)
            summary.append(f"{b}: start {res.first_start}")
        else:
            ok &= res.checked == 10**7
            summary.append(f"{b}: none in [1, 10^7]")
    assert report(8, "happy runs of length 3", ok, "; ".join(summary))
