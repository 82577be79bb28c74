"""Characterisation sweeps and bounded searches for d-consecutive happy runs."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from negahappy.errors import PreconditionError
from negahappy.happy import PowerParams, is_happy, is_happy_array, is_happy_naive
from negahappy.negabase import check_base

# Largest magnitude handled by the int64 batch path.
_INT64_SAFE = 1 << 62


def default_difference(b: int) -> int:
    """``gcd(2, b - 1)``: 2 for odd bases, 1 for even ones."""
    return math.gcd(2, check_base(b) - 1)


def _condition(b: int):
    if b == -2:
        return lambda a: a % 3 == 1
    if b == -3:
        return lambda a: a % 2 == 1
    raise PreconditionError(f"no closed-form characterisation for base {b}; only -2 and -3")


def characterization_counterexamples(b: int, limit: int, chunk: int = 1 << 20, max_report: int = 10) -> list[int]:
    """Integers ``1 <= |a| <= limit`` where happiness disagrees with the congruence rule."""
    cond = _condition(b)
    bad: list[int] = []
    for sign in (1, -1):
        for lo in range(1, limit + 1, chunk):
            a = sign * np.arange(lo, min(lo + chunk, limit + 1), dtype=np.int64)
            happy = is_happy_array(a, b)
            expected = cond(a)
            for x in a[happy != expected][: max_report - len(bad)]:
                bad.append(int(x))
            if len(bad) >= max_report:
                return bad
    return bad


def verify_characterization(b: int, limit: int) -> bool:
    """Check ``a ≡ 1 (mod 3)`` (base -2) or ``a`` odd (base -3) against happiness for ``1 <= |a| <= limit``."""
    return not characterization_counterexamples(b, limit)


@dataclass(frozen=True)
class RunQuery:
    b: int
    d: int
    length: int
    start: int = 1
    budget: int = 10**7
    e: int = 2

    def __post_init__(self):
        PowerParams(self.b, self.e)
        if self.d < 1 or self.length < 1 or self.budget < 1:
            raise PreconditionError("d, length and budget must all be >= 1")

    @property
    def last_start(self) -> int:
        return self.start + self.budget - 1


@dataclass(frozen=True)
class RunResult:
    query: RunQuery
    found: bool
    first_start: int | None
    checked: int

    @property
    def members(self) -> list[int]:
        if not self.found:
            return []
        q = self.query
        return [self.first_start + i * q.d for i in range(q.length)]

    def to_json(self) -> str:
        q = self.query
        return json.dumps(
            {"base": q.b, "d": q.d, "L": q.length, "first_start": self.first_start, "checked": self.checked}
        )


def _scan_batch(b: int, e: int, d: int, length: int, lo: int, hi: int, chunk: int) -> int | None:
    """Smallest start in ``[lo, hi]`` whose progression is all happy, int64 path."""
    span = (length - 1) * d
    for s in range(lo, hi + 1, chunk):
        n = min(chunk, hi + 1 - s)
        happy = is_happy_array(np.arange(s, s + n + span, dtype=np.int64), b, e)
        ok = happy[:n].copy()
        for i in range(1, length):
            ok &= happy[i * d : i * d + n]
        hits = np.flatnonzero(ok)
        if hits.size:
            return s + int(hits[0])
    return None


def _scan_scalar(b: int, e: int, d: int, length: int, lo: int, hi: int, memo_cap: int) -> int | None:
    memo: dict[int, bool] = {}

    def happy(a):
        v = memo.get(a)
        if v is None:
            if len(memo) >= memo_cap:
                memo.clear()
            v = memo[a] = is_happy(a, b, e)
        return v

    for s in range(lo, hi + 1):
        if all(happy(s + i * d) for i in range(length)):
            return s
    return None


def _scan(args) -> int | None:
    b, e, d, length, lo, hi, chunk, memo_cap = args
    top = max(abs(lo), abs(hi + (length - 1) * d))
    if top < _INT64_SAFE:
        return _scan_batch(b, e, d, length, lo, hi, chunk)
    return _scan_scalar(b, e, d, length, lo, hi, memo_cap)


def find_run(query: RunQuery, workers: int = 1, chunk: int = 1 << 18, memo_cap: int = 1 << 20) -> RunResult:
    """First start ``s >= query.start`` within the budget such that
    ``s, s+d, ..., s+(L-1)d`` are all happy.

    With ``workers > 1`` the start range is sharded; the minimal hit over
    shards is reported, so the answer does not depend on the sharding.
    ``checked`` counts starts up to and including the hit (the full budget
    when nothing is found).
    """
    q = query
    if workers <= 1:
        shards = [(q.start, q.last_start)]
    else:
        step = -(-q.budget // workers)
        shards = [(lo, min(lo + step - 1, q.last_start)) for lo in range(q.start, q.last_start + 1, step)]
    jobs = [(q.b, q.e, q.d, q.length, lo, hi, chunk, memo_cap) for lo, hi in shards]
    if workers <= 1:
        hits = [_scan(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(_scan, jobs))
    found = [h for h in hits if h is not None]
    if found:
        first = min(found)
        return RunResult(q, True, first, first - q.start + 1)
    return RunResult(q, False, None, q.budget)


def reverify(result: RunResult) -> bool:
    """Recheck every member of a reported run without any caching."""
    q = result.query
    return result.found and all(is_happy_naive(a, q.b, q.e) for a in result.members)
