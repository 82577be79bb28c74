"""Words over ``S`` and the increment ``I(t) = t + 1``, and the merges that build them.

A merge takes ``t1 > t2`` and returns a word ``F`` with ``F(t1) == F(t2)``.
Words are stored in application order: ``FWord(("S", 3, "S"))`` applies
``S``, then adds 3, then applies ``S``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from negahappy.atlas import cached_atlas
from negahappy.errors import InvalidBase, PreconditionError
from negahappy.happy import power_sum
from negahappy.negabase import check_base, expand

Step = Union[str, int]  # "S", or a positive int m meaning I^m

EVEN_BASES = (-4, -6, -8, -10)


@dataclass(frozen=True)
class FWord:
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        merged: list[Step] = []
        for step in self.steps:
            if step == "S":
                merged.append("S")
            elif isinstance(step, int) and not isinstance(step, bool) and step >= 1:
                if merged and merged[-1] != "S":
                    merged[-1] += step
                else:
                    merged.append(step)
            else:
                raise PreconditionError(f"invalid step {step!r}; use 'S' or a positive int")
        object.__setattr__(self, "steps", tuple(merged))

    def __add__(self, other: FWord) -> FWord:
        return FWord(self.steps + other.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def s_count(self) -> int:
        return sum(1 for s in self.steps if s == "S")

    def apply(self, a: int, b: int, e: int = 2) -> int:
        for step in self.steps:
            a = power_sum(a, b, e) if step == "S" else a + step
        return a

    def __str__(self):
        parts: list[str] = []
        run = 0
        for step in self.steps + (None,):
            if step == "S":
                run += 1
                continue
            if run:
                parts.append("S" if run == 1 else f"S^{run}")
                run = 0
            if step is not None:
                parts.append("I" if step == 1 else f"I^{step}")
        return " ".join(parts) or "id"

    @classmethod
    def parse(cls, text: str) -> FWord:
        """Inverse of ``str``: ``"S^4 I S^2"``."""
        steps: list[Step] = []
        for tok in text.split():
            if tok == "id":
                continue
            m = re.fullmatch(r"([SI])(?:\^(\d+))?", tok)
            if not m:
                raise PreconditionError(f"bad word token {tok!r}")
            power = int(m.group(2) or 1)
            steps.extend(["S"] * power if m.group(1) == "S" else [power])
        return cls(tuple(steps))


def s_pow(k: int) -> FWord:
    return FWord(("S",) * k)


def i_pow(m: int) -> FWord:
    return FWord((m,)) if m else FWord()


def apply_fword(word: FWord, a: int, b: int, e: int = 2) -> int:
    return word.apply(a, b, e)


# -- even bases -------------------------------------------------------------

# (designated landing values, tail word) per base, after both values have been
# pushed to 1 and into one cycle.
_EVEN_TAILS = {
    -6: {2: "I^7 S^6"},
    -8: {30: "I^2 S^8", 59: "I^2 S^8", 46: "I^7 S^9"},
    -10: {19: "I^22 S^3", 35: "I S^16"},
}


def _into_u(b: int, values: list[int], U: frozenset[int]) -> tuple[int, list[int]]:
    k = 0
    while not all(v in U for v in values):
        values = [power_sum(v, b) for v in values]
        k += 1
    return k, values


def merge_even(b: int, t1: int, t2: int) -> FWord:
    """Merge word for ``b`` in {-4, -6, -8, -10}.

    First ``S^k`` (smallest ``k >= 0``) takes both values into the periodic
    set; then fixed per-base tails finish the job.
    """
    b = check_base(b)
    if b not in EVEN_BASES:
        raise InvalidBase(f"even-base merges are available for {EVEN_BASES}, not {b}")
    if not 0 < t2 < t1:
        raise PreconditionError("need 0 < t2 < t1")
    U = frozenset(cached_atlas(b).u_set)
    k, (x1, x2) = _into_u(b, [t1, t2], U)
    word = s_pow(k)
    if x1 != x2:
        word += _even_tail(b, x1, x2, U)
    if word.apply(t1, b) != word.apply(t2, b):
        raise AssertionError(f"merge_even({b}, {t1}, {t2}) produced a non-merging word {word}")
    return word


def _even_tail(b: int, x1: int, x2: int, U: frozenset[int]) -> FWord:
    if b == -4:
        pair = {x1, x2}
        if pair == {1, 6}:
            return FWord.parse("I S^2")
        if pair == {1, 14}:
            # S(14) = 6 turns this into the {1, 6} case
            return FWord.parse("S I S^2")
        return FWord.parse("I^3 S^5")

    atlas = cached_atlas(b)
    square = b * b
    word = FWord()
    # only one of the two needs to sit below b^2; step along the cycles until one does
    for _ in range(len(U)):
        if min(x1, x2) < square:
            break
        x1, x2 = power_sum(x1, b), power_sum(x2, b)
        word += s_pow(1)
    if x1 >= square:
        x1, x2 = x2, x1
    m = square - x1
    y = x2 + m
    ell = 1
    y = power_sum(y, b)
    while y not in U:
        y = power_sum(y, b)
        ell += 1
    word += i_pow(m) + s_pow(ell)
    if y == 1:
        return word
    tails = _EVEN_TAILS[b]
    orbit = atlas.cycle_of(y)
    for extra, value in enumerate(orbit):
        if value in tails:
            return word + s_pow(extra) + FWord.parse(tails[value])
    raise AssertionError(f"orbit {orbit} of base {b} has no designated element")


# -- odd bases --------------------------------------------------------------


def _check_odd_base(b: int) -> int:
    b = check_base(b)
    if b % 2 == 0 or b > -5:
        raise InvalidBase(f"odd-base merges need an odd base <= -5, got {b}")
    return b


def _odd_digit_block(b: int, r_prime: int) -> int:
    """``(|b|-1) * (b + b^3 + ... + b^(2r'-1))``."""
    return (-b - 1) * sum(b ** (2 * i + 1) for i in range(r_prime))


def odd_c(b: int, v_prime: int, r_prime: int) -> int:
    """Smallest ``c >= 0`` with ``2c ≡ 4r' - S(block + v' - 1) - 1 (mod b - 1)``."""
    b = _check_odd_base(b)
    if v_prime < 1 or v_prime % 2 or r_prime < 1:
        raise PreconditionError("need v' even and positive, r' >= 1")
    if b ** (2 * r_prime) <= v_prime:
        raise PreconditionError("need b^(2r') > v'")
    rhs = 4 * r_prime - power_sum(_odd_digit_block(b, r_prime) + v_prime - 1, b) - 1
    if rhs % 2:
        raise AssertionError("parity of the congruence right-hand side broke")
    return (rhs // 2) % ((1 - b) // 2)


def odd_merge_case(b: int, t1: int, t2: int) -> str:
    """Which of the three constructions applies: ``"digits"``, ``"congruent"`` or ``"general"``."""
    if sorted(d for d in expand(t1, b) if d) == sorted(d for d in expand(t2, b) if d):
        return "digits"
    if (t1 - t2) % (b - 1) == 0:
        return "congruent"
    return "general"


def _congruent_shift(b: int, t1: int, t2: int) -> int:
    """``m`` such that ``t1 + m`` and ``t2 + m`` share their nonzero digits."""
    v = (t2 - t1) // (b - 1)
    r = 1
    while b ** (2 * r) <= b * b * v + t1:
        r += 1
    return b ** (2 * r) + v - t1


def general_shift(b: int, t1: int, t2: int) -> int:
    """``m'`` making ``S(t1 + m') ≡ S(t2 + m') (mod b - 1)``."""
    r_prime = 1
    while b ** (2 * r_prime) <= b * b * t1:
        r_prime += 1
    c = odd_c(b, t1 - t2, r_prime)
    return c * b ** (2 * r_prime) + sum((-b - 1) * b ** (2 * i) for i in range(r_prime)) - t2


def merge_odd(b: int, t1: int, t2: int) -> FWord:
    """Merge word for an odd base ``b <= -5`` and ``t1 > t2`` of equal parity."""
    b = _check_odd_base(b)
    if not 0 < t2 < t1:
        raise PreconditionError("need 0 < t2 < t1")
    if (t1 - t2) % 2:
        raise PreconditionError(f"{t1} and {t2} differ in parity; no merge exists in base {b}")
    case = odd_merge_case(b, t1, t2)
    if case == "digits":
        word = s_pow(1)
    elif case == "congruent":
        word = i_pow(_congruent_shift(b, t1, t2)) + s_pow(1)
    else:
        m_prime = general_shift(b, t1, t2)
        word = i_pow(m_prime) + s_pow(1)
        y1, y2 = power_sum(t1 + m_prime, b), power_sum(t2 + m_prime, b)
        if y1 != y2:
            hi, lo = max(y1, y2), min(y1, y2)
            if (hi - lo) % (b - 1):
                raise AssertionError(f"general shift failed to align {t1}, {t2} mod {b - 1}")
            word += i_pow(_congruent_shift(b, hi, lo)) + s_pow(1)
    if word.apply(t1, b) != word.apply(t2, b):
        raise AssertionError(f"merge_odd({b}, {t1}, {t2}) produced a non-merging word {word}")
    return word


def merge(b: int, t1: int, t2: int) -> FWord:
    return merge_even(b, t1, t2) if b % 2 == 0 else merge_odd(b, t1, t2)
