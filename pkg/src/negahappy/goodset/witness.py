"""Constructing good-set witnesses and run witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from negahappy.atlas import cached_atlas
from negahappy.errors import InvalidBase, PreconditionError, TooLarge
from negahappy.goodset import tower
from negahappy.goodset.certificate import (
    GoodWitness,
    IPeel,
    Level,
    SingletonBase,
    SPeel,
    WitnessCertificate,
    verify_certificate,
)
from negahappy.goodset.tower import DEFAULT_DIGIT_BUDGET, Exact, Offset, Repunit, TowerNumeral
from negahappy.goodset.words import EVEN_BASES, merge
from negahappy.happy import power_sum
from negahappy.negabase import check_base, digit_count
from negahappy.runs import default_difference

# Longest level chain built; deeper numerals would overflow the JSON encoder's nesting.
DEFAULT_MAX_DEPTH = 800


def qualifying(b: int) -> bool:
    """Bases where every parity-compatible finite set is good: odd ``b <= -5`` and -4..-10 even."""
    return (b % 2 == 1 and b <= -5) or b in EVEN_BASES


def singleton_witness(b: int, t: int, u: int) -> tuple[int, int, int]:
    """``(x, r, n)`` with ``S(t + n) = S(b^r x) = u``.

    ``x`` is the predecessor of ``u`` on its cycle and ``r`` the smallest
    positive even exponent with ``b^r x > t`` (so ``n >= 1``).
    """
    b = check_base(b)
    if t < 1:
        raise PreconditionError("t must be positive")
    orbit = cached_atlas(b).cycle_of(u)
    x = orbit[-1]
    r = 2
    while b**r * x <= t:
        r += 2
    n = b**r * x - t
    if power_sum(t + n, b) != u:
        raise AssertionError(f"singleton witness failed for t={t}, u={u}")
    return x, r, n


def peel(b: int, step, T, inner: TowerNumeral, k: int):
    """Lift a witness for ``step(T)`` to one for ``T``; returns ``(n, k, descriptor)``.

    ``step`` is ``"S"`` or an increment ``m``.
    """
    if not T:
        raise PreconditionError("cannot peel an empty set")
    if step == "S":
        widest = max(digit_count(t, b) for t in T)
        shift = widest if (tower.parity(inner, b) + widest) % 2 else widest + 1
        return Repunit(inner, shift), k + 1, SPeel(shift)
    return Offset(inner, step), k, IPeel(step)


def _apply(step, T, b):
    if step == "S":
        return tuple(sorted({power_sum(t, b) for t in T}))
    return tuple(t + step for t in T)


def good_witness(b: int, T, u: int = 1, max_depth: int = DEFAULT_MAX_DEPTH) -> tuple[GoodWitness, WitnessCertificate]:
    """A certified shift ``n`` and count ``k`` with ``S^k(t + n) = u`` for all ``t`` in ``T``.

    The two largest members are merged repeatedly until one value remains;
    that value gets a direct witness, which is then lifted back through every
    merge step.
    """
    b = check_base(b)
    if not qualifying(b):
        raise InvalidBase(f"good-set witnesses are built for odd b <= -5 and b in {EVEN_BASES}, not {b}")
    current = tuple(sorted(set(int(t) for t in T)))
    if not current:
        raise PreconditionError("T must be nonempty")
    if current[0] < 1:
        raise PreconditionError("T must contain positive integers only")
    if b % 2 and len({t % 2 for t in current}) > 1:
        raise PreconditionError(f"members of T differ in parity, so T is not good in base {b}")
    if u not in cached_atlas(b).u_set:
        raise PreconditionError(f"{u} is not a periodic point of S in base {b}")

    forward = []
    while len(current) > 1:
        word = merge(b, current[-1], current[-2])
        for step in word.steps:
            forward.append((current, step))
            current = _apply(step, current, b)
        if len(forward) > max_depth:
            raise TooLarge(f"certificate deeper than {max_depth} levels")

    (t,) = current
    x, r, n0 = singleton_witness(b, t, u)
    n: TowerNumeral = Exact(n0)
    k = 1
    levels = [Level(current, n, k, SingletonBase(x, r))]
    for before, step in reversed(forward):
        n, k, descriptor = peel(b, step, before, n, k)
        levels.append(Level(before, n, k, descriptor))
    cert = WitnessCertificate(b, u, tuple(reversed(levels)))
    return cert.witness, cert


@dataclass(frozen=True)
class RunWitness:
    """``N`` terms ``1 + n + d*i`` that are all happy, with the certificate proving it."""

    b: int
    d: int
    N: int
    n: TowerNumeral = field(repr=False)
    certificate: WitnessCertificate | None = field(repr=False)

    def members(self, budget: int = DEFAULT_DIGIT_BUDGET) -> list[int]:
        """Exact members; raises :class:`TooLarge` when ``n`` does not fit the budget."""
        shift = tower.value(self.n, self.b, budget)
        return [1 + shift + self.d * i for i in range(self.N)]

    def describe(self) -> str:
        return f"1 + {self.d}*i + n for 0 <= i < {self.N}, n = {tower.describe(self.n)}"

    def verified(self) -> bool:
        if self.certificate is None:
            # base -3: every odd positive integer is happy
            return self.b == -3 and tower.value(self.n, self.b) == 0 and self.d == 2
        return verify_certificate(self.certificate)


def build_run_witness(b: int, N: int, max_depth: int = DEFAULT_MAX_DEPTH) -> RunWitness:
    """Shift ``n`` such that ``1 + n, 1 + n + d, ..., 1 + n + (N-1)d`` are all happy."""
    b = check_base(b)
    if N < 1:
        raise PreconditionError("N must be >= 1")
    if b == -3:
        return RunWitness(b, 2, N, Exact(0), None)
    d = default_difference(b)
    _, cert = good_witness(b, [1 + d * i for i in range(N)], 1, max_depth)
    return RunWitness(b, d, N, cert.n, cert)
