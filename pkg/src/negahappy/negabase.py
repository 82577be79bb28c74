"""Integers in negative bases.

Digit vectors are little-endian tuples: ``digits[i]`` is the coefficient of
``b**i``.  Zero is the empty tuple.  Every integer, positive or negative, has
exactly one expansion with digits in ``[0, |b| - 1]``; positive values have an
odd number of digits and negative values an even number.

:class:`RleDigits` stores the same digit strings run-length encoded, with
arbitrary-precision run counts, so numbers such as ``11...1100...00`` with
astronomically many ones can be added to and summed over without ever being
written out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from negahappy.errors import (
    DigitRangeError,
    InvalidBase,
    NegativeResultError,
    PreconditionError,
    TooLarge,
)

DigitVec = tuple[int, ...]

# Below this many bits the plain remainder loop beats divide-and-conquer.
_SPLIT_BITS = 4096


def check_base(b: int) -> int:
    if not isinstance(b, (int, np.integer)) or isinstance(b, bool) or b > -2:
        raise InvalidBase(f"base must be an integer <= -2, got {b!r}")
    return int(b)


def _expand_small(a: int, b: int) -> list[int]:
    m = -b
    out = []
    while a:
        r = a % m
        out.append(r)
        a = (a - r) // b
    return out


def _window_min(width: int, b: int) -> int:
    """Smallest value representable with ``width`` digits (max digit on odd positions)."""
    m = -b
    # sum of (m-1) * b**i over odd i < width
    return sum((m - 1) * b**i for i in range(1, width, 2))


def _expand_large(a: int, b: int) -> list[int]:
    if a.bit_length() <= _SPLIT_BITS:
        return _expand_small(a, b)
    m = -b
    # split near the middle on an even digit boundary so b**width > 0
    approx_digits = int(a.bit_length() / np.log2(m)) + 2
    width = max(2, (approx_digits // 2) & ~1)
    lo_min = _window_min(width, b)
    span = m**width
    lo = lo_min + (a - lo_min) % span
    hi = (a - lo) // b**width
    low_digits = _expand_large(lo, b)
    low_digits.extend([0] * (width - len(low_digits)))
    return low_digits + _expand_large(hi, b)


def expand(a: int, b: int) -> DigitVec:
    """Negabase digits of ``a``, least significant first.

    >>> expand(10, -5)
    (0, 3, 1)
    """
    b = check_base(b)
    return tuple(_expand_large(int(a), b))


def evaluate(digits: Sequence[int], b: int) -> int:
    """Value of a little-endian digit vector; rejects out-of-range digits."""
    b = check_base(b)
    value = 0
    for d in reversed(digits):
        if not 0 <= d < -b:
            raise DigitRangeError(f"digit {d} out of range for base {b}")
        value = value * b + d
    return value


def digit_count(a: int, b: int) -> int:
    return len(expand(a, b))


def normalize(digits: Sequence[int], b: int) -> DigitVec:
    """Strip high-order zeros after checking the digit range."""
    b = check_base(b)
    out = list(digits)
    for d in out:
        if not 0 <= d < -b:
            raise DigitRangeError(f"digit {d} out of range for base {b}")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# -- text form ---------------------------------------------------------------

_TEXT_RE = re.compile(r"^(?:\((-\d+)\))?((?:\d|\[\d+\])+)$")
_TOKEN_RE = re.compile(r"\[(\d+)\]|(\d)")


def format_digits(digits: Sequence[int], b: int | None = None) -> str:
    """Most-significant-first text, e.g. ``"18197"``; digits >= 10 are bracketed.

    With ``b`` given the base is prefixed: ``"(-10)18197"``.  Zero is ``"0"``.
    """
    body = "".join(str(d) if d < 10 else f"[{d}]" for d in reversed(digits)) or "0"
    return body if b is None else f"({b}){body}"


def parse_digits(text: str, b: int | None = None) -> tuple[DigitVec, int]:
    """Inverse of :func:`format_digits`; returns ``(digits, base)``."""
    match = _TEXT_RE.match(text.strip())
    if not match:
        raise DigitRangeError(f"cannot parse digit string {text!r}")
    prefix, body = match.groups()
    if prefix is not None:
        if b is not None and int(prefix) != b:
            raise InvalidBase(f"digit string is in base {prefix}, expected {b}")
        b = int(prefix)
    if b is None:
        raise InvalidBase("no base given")
    msf = [int(big) if big else int(small) for big, small in _TOKEN_RE.findall(body)]
    return normalize(msf[::-1], b), check_base(b)


# -- batch helpers (int64) -----------------------------------------------------


def expand_array(values, b: int) -> np.ndarray:
    """Digit matrix of shape ``(len(values), width)``, little-endian, zero padded."""
    b = check_base(b)
    a = np.asarray(values, dtype=np.int64).copy()
    m = -b
    columns = []
    while np.any(a):
        r = a % m
        columns.append(r)
        a = (a - r) // b
    if not columns:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    return np.stack(columns, axis=1)


def evaluate_array(digit_matrix: np.ndarray, b: int) -> np.ndarray:
    b = check_base(b)
    digit_matrix = np.asarray(digit_matrix, dtype=np.int64)
    if digit_matrix.size and (digit_matrix.min() < 0 or digit_matrix.max() >= -b):
        raise DigitRangeError(f"digit out of range for base {b}")
    value = np.zeros(digit_matrix.shape[0], dtype=np.int64)
    for col in range(digit_matrix.shape[1] - 1, -1, -1):
        value = value * b + digit_matrix[:, col]
    return value


def count_digits_array(digit_matrix: np.ndarray) -> np.ndarray:
    """Index of the highest nonzero digit plus one, per row."""
    nonzero = digit_matrix != 0
    width = digit_matrix.shape[1]
    if width == 0:
        return np.zeros(digit_matrix.shape[0], dtype=np.int64)
    last = width - np.argmax(nonzero[:, ::-1], axis=1)
    return np.where(nonzero.any(axis=1), last, 0)


# -- run-length encoded digits -----------------------------------------------


def _merge_runs(runs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for digit, count in runs:
        if count == 0:
            continue
        if out and out[-1][0] == digit:
            out[-1][1] += count
        else:
            out.append([digit, count])
    while out and out[-1][0] == 0:
        out.pop()
    return tuple((d, c) for d, c in out)


@dataclass(frozen=True)
class RleDigits:
    """Run-length encoded negabase digits, least significant run first.

    ``runs`` holds ``(digit, count)`` pairs; counts are Python ints and may be
    far larger than anything that could be expanded digit by digit.
    """

    runs: tuple[tuple[int, int], ...]
    base: int

    def __post_init__(self):
        check_base(self.base)
        prev = None
        for digit, count in self.runs:
            if not 0 <= digit < -self.base:
                raise DigitRangeError(f"digit {digit} out of range for base {self.base}")
            if count < 1:
                raise PreconditionError(f"run count must be >= 1, got {count}")
            if digit == prev:
                raise PreconditionError("adjacent runs must carry distinct digits")
            prev = digit
        if self.runs and self.runs[-1][0] == 0:
            raise PreconditionError("most significant run must be nonzero")

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]], b: int) -> RleDigits:
        """Build from arbitrary runs, merging neighbours and stripping high zeros."""
        return cls(_merge_runs((int(d), int(c)) for d, c in runs), check_base(b))

    @classmethod
    def from_digits(cls, digits: Sequence[int], b: int) -> RleDigits:
        return cls.from_runs(((d, 1) for d in normalize(digits, b)), b)

    @classmethod
    def from_int(cls, a: int, b: int) -> RleDigits:
        return cls.from_runs(((d, 1) for d in expand(a, b)), b)

    @property
    def length(self) -> int:
        """Total number of digits."""
        return sum(c for _, c in self.runs)

    def is_negative(self) -> bool:
        return self.length % 2 == 0 and bool(self.runs)

    def to_digits(self, limit: int | None = None) -> DigitVec:
        if limit is not None and self.length > limit:
            raise TooLarge(f"{self.length} digits exceeds limit {limit}")
        return tuple(d for d, c in self.runs for _ in range(c))

    def value(self, limit: int | None = None) -> int:
        """Exact integer value; ``limit`` caps the digit count to evaluate."""
        if limit is not None and self.length > limit:
            raise TooLarge(f"{self.length} digits exceeds limit {limit}")
        b = self.base
        total = 0
        pos = 0
        for digit, count in self.runs:
            if digit:
                # digit * (b**pos + ... + b**(pos+count-1))
                total += digit * b**pos * (b**count - 1) // (b - 1)
            pos += count
        return total

    def to_json(self) -> list[dict]:
        return [{"digit": d, "count": str(c)} for d, c in self.runs]

    @classmethod
    def from_json(cls, data: list[dict], b: int) -> RleDigits:
        return cls.from_runs(((int(r["digit"]), int(r["count"])) for r in data), b)

    def __str__(self):
        parts = [f"{'[%d]' % d if d >= 10 else d}^{c}" for d, c in reversed(self.runs)]
        return f"({self.base})" + (" ".join(parts) or "0")


class _RunCursor:
    """Reads digits upward from a run list, one position or one run-tail at a time."""

    def __init__(self, runs):
        self.runs = runs
        self.index = 0
        self.left = runs[0][1] if runs else 0

    def next_digit(self) -> int:
        if self.index >= len(self.runs):
            return 0
        digit = self.runs[self.index][0]
        self.left -= 1
        if self.left == 0:
            self.index += 1
            if self.index < len(self.runs):
                self.left = self.runs[self.index][1]
        return digit

    def rest(self) -> list[tuple[int, int]]:
        if self.index >= len(self.runs):
            return []
        head = (self.runs[self.index][0], self.left)
        return [head, *self.runs[self.index + 1 :]]


def rle_add_int(x: RleDigits, m: int, allow_negative: bool = False) -> RleDigits:
    """Return ``x + m`` by carry propagation over runs.

    Work is proportional to the digits of ``m`` plus the runs the carry
    crosses (a carry dies within two positions of entering a run), never to
    the total digit count of ``x``.
    """
    if m == 0:
        return x
    b = x.base
    radix = -b
    addend = _expand_small(m, b) if abs(m).bit_length() <= _SPLIT_BITS else list(expand(m, b))
    cursor = _RunCursor(x.runs)
    low: list[tuple[int, int]] = []
    carry = 0
    j = 0
    while j < len(addend) or carry:
        s = cursor.next_digit() + (addend[j] if j < len(addend) else 0) + carry
        r = s % radix
        carry = (s - r) // b
        low.append((r, 1))
        j += 1
    result = RleDigits.from_runs(low + cursor.rest(), b)
    if result.is_negative() and not allow_negative:
        raise NegativeResultError(f"adding {m} makes the numeral negative")
    return result


def rle_splice_low(n: RleDigits, t: Sequence[int]) -> RleDigits:
    """Overwrite the low zero run of ``n`` with the digits ``t``; no carries occur."""
    t = normalize(t, n.base)
    if not t:
        return n
    if not n.runs or n.runs[0][0] != 0 or n.runs[0][1] < len(t):
        have = n.runs[0][1] if n.runs and n.runs[0][0] == 0 else 0
        raise PreconditionError(f"need {len(t)} low zeros to splice, numeral has {have}")
    zeros = n.runs[0][1]
    return RleDigits.from_runs([(d, 1) for d in t] + [(0, zeros - len(t))] + list(n.runs[1:]), n.base)
