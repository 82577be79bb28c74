"""Witness certificates and their checker.

A certificate for ``(b, u, T)`` is a chain of levels.  Level ``i`` carries a
set ``T_i``, a shift ``n_i`` and a count ``k_i`` claiming ``S^k_i(t + n_i) = u``
for every ``t`` in ``T_i``, plus the step linking it to level ``i + 1``:

* ``SPeel(shift)``: ``T_{i+1} = S(T_i)`` and ``n_i`` is ``n_{i+1}`` ones
  followed by ``shift`` zeros, so ``S(t + n_i) = S(t) + n_{i+1}``;
* ``IPeel(m)``: ``T_{i+1} = T_i + m`` and ``n_i = n_{i+1} + m``;
* ``SingletonBase(x, r)`` (last level only): ``T = {t}``, ``n = b^r x - t``
  and ``S(b^r x) = u``.

The checker never has to evaluate a shift; every side condition is a
statement about the small sets ``T_i`` or about the structure of ``n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from negahappy.atlas import cached_atlas
from negahappy.errors import PreconditionError, TooLarge
from negahappy.goodset import tower
from negahappy.goodset.tower import DEFAULT_DIGIT_BUDGET, Exact, Offset, Repunit, TowerNumeral
from negahappy.happy import power_sum, power_sum_rle
from negahappy.negabase import RleDigits, check_base, digit_count, rle_add_int

FORMAT = "negahappy-certificate/1"


@dataclass(frozen=True)
class SPeel:
    shift: int


@dataclass(frozen=True)
class IPeel:
    m: int


@dataclass(frozen=True)
class SingletonBase:
    x: int
    r: int


Step = Union[SPeel, IPeel, SingletonBase]


@dataclass(frozen=True)
class Level:
    T: tuple[int, ...]
    n: TowerNumeral = field(repr=False)
    k: int
    step: Step


@dataclass(frozen=True)
class GoodWitness:
    n: TowerNumeral = field(repr=False)
    k: int
    u: int


@dataclass(frozen=True)
class WitnessCertificate:
    b: int
    u: int
    levels: tuple[Level, ...]
    e: int = 2

    @property
    def T(self) -> tuple[int, ...]:
        return self.levels[0].T

    @property
    def n(self) -> TowerNumeral:
        return self.levels[0].n

    @property
    def k(self) -> int:
        return self.levels[0].k

    @property
    def witness(self) -> GoodWitness:
        return GoodWitness(self.n, self.k, self.u)

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "base": self.b,
            "exponent": self.e,
            "target": self.u,
            "n": tower.to_json(self.n),
            "levels": [
                {"T": [str(t) for t in lvl.T], "k": lvl.k, "step": _step_to_json(lvl.step)} for lvl in self.levels
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> WitnessCertificate:
        if data.get("format") != FORMAT:
            raise PreconditionError(f"not a certificate: format {data.get('format')!r}")
        n = tower.from_json(data["n"])
        levels = []
        for raw in data["levels"]:
            step = _step_from_json(raw["step"])
            levels.append(Level(tuple(int(t) for t in raw["T"]), n, int(raw["k"]), step))
            # the next level's shift is the layer under this one
            if isinstance(step, SPeel) and isinstance(n, Repunit):
                n = n.count
            elif isinstance(step, IPeel) and isinstance(n, Offset):
                n = n.inner
        return cls(int(data["base"]), int(data["target"]), tuple(levels), int(data.get("exponent", 2)))

    @classmethod
    def loads(cls, text: str) -> WitnessCertificate:
        return cls.from_json(json.loads(text))


def _step_to_json(step: Step) -> dict:
    if isinstance(step, SPeel):
        return {"kind": "S", "shift": step.shift}
    if isinstance(step, IPeel):
        return {"kind": "I", "m": str(step.m)}
    return {"kind": "singleton", "x": str(step.x), "r": step.r}


def _step_from_json(raw: dict) -> Step:
    kind = raw["kind"]
    if kind == "S":
        return SPeel(int(raw["shift"]))
    if kind == "I":
        return IPeel(int(raw["m"]))
    if kind == "singleton":
        return SingletonBase(int(raw["x"]), int(raw["r"]))
    raise PreconditionError(f"unknown step kind {kind!r}")


@dataclass(frozen=True)
class Violation:
    level: int
    reason: str

    def __str__(self):
        return f"level {self.level}: {self.reason}"


def _same(x: TowerNumeral, y: TowerNumeral) -> bool:
    if x is y:
        return True
    cx, cy = tower._chain(x), tower._chain(y)
    if len(cx) != len(cy):
        return False
    for a, c in zip(cx, cy):
        if type(a) is not type(c):
            return False
        if isinstance(a, Exact) and a.value != c.value:
            return False
        if isinstance(a, Repunit) and a.shift != c.shift:
            return False
        if isinstance(a, Offset) and a.delta != c.delta:
            return False
    return True


def _check_speel(b, e, lvl, nxt, budget) -> list[str]:
    out = []
    shift = lvl.step.shift
    n = lvl.n
    if not isinstance(n, Repunit):
        return [f"S-peel shift is a {type(n).__name__}, not a repunit"]
    if n.shift != shift:
        out.append(f"repunit shift {n.shift} != recorded shift {shift}")
    if not _same(n.count, nxt.n):
        out.append("repunit count is not the next level's shift")
    if not tower.is_positive(nxt.n, b):
        out.append("next level's shift is not positive")
    if (tower.parity(nxt.n, b) + shift) % 2 != 1:
        out.append("count + shift is even, so the repunit is not positive")
    widest = max(digit_count(t, b) for t in lvl.T)
    if shift < widest:
        out.append(f"S-peel shift {shift} < digit count {widest} of a member")
    images = tuple(sorted({power_sum(t, b, e) for t in lvl.T}))
    if images != nxt.T:
        out.append(f"S(T) = {list(images)} but next level has {list(nxt.T)}")
    if lvl.k != nxt.k + 1:
        out.append(f"k = {lvl.k} but next level has k = {nxt.k}")
    if not out:
        # exact splice identity when the numerals fit the budget
        try:
            inner = tower.value(nxt.n, b, budget)
            digits = tower.to_rle(n, b, budget)
        except TooLarge:
            return out
        for t in lvl.T:
            if power_sum_rle(rle_add_int(digits, t), e) != power_sum(t, b, e) + inner:
                out.append(f"S({t} + n) != S({t}) + n' on materialised digits")
    return out


def _check_ipeel(lvl, nxt) -> list[str]:
    out = []
    m = lvl.step.m
    n = lvl.n
    if m < 1:
        out.append(f"I-peel amount {m} < 1")
    if not isinstance(n, Offset):
        return out + [f"I-peel shift is a {type(n).__name__}, not an offset"]
    if n.delta != m:
        out.append(f"offset {n.delta} != recorded amount {m}")
    if not _same(n.inner, nxt.n):
        out.append("offset base is not the next level's shift")
    shifted = tuple(sorted(t + m for t in lvl.T))
    if shifted != nxt.T:
        out.append(f"T + {m} = {list(shifted)} but next level has {list(nxt.T)}")
    if lvl.k != nxt.k:
        out.append(f"k = {lvl.k} but next level has k = {nxt.k}")
    return out


def _check_singleton(b, e, u, lvl) -> list[str]:
    out = []
    x, r = lvl.step.x, lvl.step.r
    if len(lvl.T) != 1:
        return [f"base level has {len(lvl.T)} members, not 1"]
    (t,) = lvl.T
    if r < 2 or r % 2:
        out.append(f"r = {r} is not a positive even number")
    if x < 1:
        out.append(f"x = {x} is not positive")
    if not isinstance(lvl.n, Exact):
        return out + ["base level shift is not exact"]
    if lvl.n.value != b**r * x - t:
        out.append(f"n = {lvl.n.value} != b^r x - t = {b**r * x - t}")
    if lvl.n.value < 1:
        out.append("n is not positive")
    if power_sum(b**r * x, b, e) != u:
        out.append(f"S(b^r x) = {power_sum(b**r * x, b, e)} != {u}")
    if lvl.k != 1:
        out.append(f"k = {lvl.k} at the base level, expected 1")
    return out


def violations(cert: WitnessCertificate, budget: int = DEFAULT_DIGIT_BUDGET) -> list[Violation]:
    """Every failed side condition, tagged with its level; empty means valid."""
    try:
        b = check_base(cert.b)
    except ValueError as exc:
        return [Violation(0, str(exc))]
    e = cert.e
    if e != 2:
        return [Violation(0, "good-set certificates are defined for exponent 2 only")]
    out: list[Violation] = []
    if cert.u not in cached_atlas(b).u_set:
        out.append(Violation(0, f"target {cert.u} is not periodic"))
    if not cert.levels:
        return out + [Violation(0, "no levels")]
    for i, lvl in enumerate(cert.levels):
        if not lvl.T or any(t < 1 for t in lvl.T) or tuple(sorted(set(lvl.T))) != lvl.T:
            out.append(Violation(i, "T must be a nonempty sorted set of positive integers"))
            continue
        last = i == len(cert.levels) - 1
        if isinstance(lvl.step, SingletonBase):
            if not last:
                out.append(Violation(i, "singleton base before the last level"))
            reasons = _check_singleton(b, e, cert.u, lvl)
        elif last:
            reasons = ["chain does not end in a singleton base"]
        elif isinstance(lvl.step, SPeel):
            reasons = _check_speel(b, e, lvl, cert.levels[i + 1], budget)
        else:
            reasons = _check_ipeel(lvl, cert.levels[i + 1])
        out.extend(Violation(i, r) for r in reasons)
    return out


def verify_certificate(cert: WitnessCertificate, budget: int = DEFAULT_DIGIT_BUDGET) -> bool:
    """True iff every level checks, hence ``S^k(t + n) = u`` for all ``t`` in ``T``."""
    return not violations(cert, budget)


def direct_check(cert: WitnessCertificate, budget: int = DEFAULT_DIGIT_BUDGET) -> bool | None:
    """Iterate ``S`` on the run-length digits of ``t + n`` itself.

    Independent of the level structure: only ``n``, ``k``, ``u`` and ``T`` are
    used.  Returns None when ``n`` cannot be materialised within ``budget``.
    """
    b, e = cert.b, cert.e
    try:
        digits = tower.to_rle(cert.n, b, budget)
    except TooLarge:
        return None
    for t in cert.T:
        x = rle_add_int(digits, t)
        for _ in range(cert.k):
            s = power_sum_rle(x, e)
            if s.bit_length() > 4 * budget:
                return None
            x = RleDigits.from_int(s, b)
        if x.value() != cert.u:
            return False
    return True
