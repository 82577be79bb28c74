"""The digit-power-sum map and happiness in negative bases."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from negahappy.errors import PreconditionError
from negahappy.negabase import RleDigits, _expand_small, check_base, expand, expand_array


@dataclass(frozen=True)
class PowerParams:
    """Exponent ``e >= 2`` and base ``b <= -2`` of the map ``S_{e,b}``."""

    b: int
    e: int = 2

    def __post_init__(self):
        check_base(self.b)
        if self.e < 2:
            raise PreconditionError(f"exponent must be >= 2, got {self.e}")


def power_sum(a: int, b: int, e: int = 2) -> int:
    """Sum of the ``e``-th powers of the base-``b`` digits of ``a`` (0 for 0).

    >>> power_sum(9, -5)
    33
    """
    if b > -2:
        check_base(b)
    if abs(a).bit_length() <= 512:
        return sum(d**e for d in _expand_small(a, b))
    return sum(d**e for d in expand(a, b))


def power_sum_rle(x: RleDigits, e: int = 2) -> int:
    return sum(count * digit**e for digit, count in x.runs)


def power_sum_array(values, b: int, e: int = 2) -> np.ndarray:
    """Vectorised :func:`power_sum` for int64 inputs."""
    digits = expand_array(values, b)
    return (digits**e).sum(axis=1)


def iterate(a: int, b: int, k: int, e: int = 2) -> int:
    """``S^k(a)``."""
    for _ in range(k):
        a = power_sum(a, b, e)
    return a


def threshold(b: int) -> int:
    """``(|b|-1)(|b|^2-|b|+1)``; every larger input strictly decreases under ``S_{2,b}``."""
    m = -check_base(b)
    return (m - 1) * (m * m - m + 1)


@dataclass(frozen=True)
class Trajectory:
    """Iterates of ``S`` from ``start`` until the first repeated value.

    ``iterates[0]`` is ``S(start)``; ``iterates[entry_index:]`` is one full
    period of the cycle the orbit falls into.
    """

    start: int
    iterates: tuple[int, ...]
    entry_index: int

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.iterates[self.entry_index :]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.iterates[: self.entry_index]


def trajectory(a: int, b: int, e: int = 2) -> Trajectory:
    if a == 0:
        raise PreconditionError("the trajectory of 0 is constantly 0")
    check_base(b)
    seen: dict[int, int] = {}
    out = []
    x = power_sum(a, b, e)
    while x not in seen:
        seen[x] = len(out)
        out.append(x)
        x = power_sum(x, b, e)
    return Trajectory(a, tuple(out), seen[x])


@lru_cache(maxsize=1 << 16)
def _reaches_one(x: int, b: int, e: int) -> bool:
    seen = set()
    while x not in seen:
        if x == 1:
            return True
        seen.add(x)
        x = power_sum(x, b, e)
    return False


def is_happy(a: int, b: int, e: int = 2) -> bool:
    """True iff some iterate ``S^k(a)``, ``k >= 1``, equals 1.

    Negative ``a`` is allowed; ``is_happy(0)`` is False.
    """
    check_base(b)
    if a == 0:
        return False
    return _reaches_one(power_sum(a, b, e), b, e)


def is_happy_naive(a: int, b: int, e: int = 2) -> bool:
    """Uncached reference version of :func:`is_happy`."""
    if a == 0:
        return False
    x = power_sum(a, b, e)
    seen = set()
    while x not in seen:
        if x == 1:
            return True
        seen.add(x)
        x = power_sum(x, b, e)
    return False


def is_happy_array(values, b: int, e: int = 2) -> np.ndarray:
    """Vectorised :func:`is_happy` for int64 inputs.

    One vectorised ``S`` step maps every input below a small bound; verdicts
    for those images come from a lookup table.
    """
    values = np.asarray(values, dtype=np.int64)
    images = power_sum_array(values, b, e)
    top = int(images.max()) if images.size else 0
    table = np.array([_reaches_one(x, b, e) for x in range(top + 1)], dtype=bool)
    return table[images] & (values != 0)
