"""Structural numerals for good-set witnesses.

A witness shift ``n`` is built by wrapping a small exact number in layers:

* ``Repunit(count, shift)`` is ``b**shift + ... + b**(shift + value(count) - 1)``,
  i.e. ``value(count)`` ones followed by ``shift`` zeros;
* ``Offset(inner, delta)`` is ``value(inner) + delta``.

A repunit whose count is itself a repunit has more digits than can ever be
written down, so every query here walks the chain of layers instead of
evaluating it.  Chains are linear, and all traversals are iterative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from negahappy.errors import PreconditionError, TooLarge
from negahappy.negabase import RleDigits, check_base, digit_count, rle_add_int

DEFAULT_DIGIT_BUDGET = 10**6


@dataclass(frozen=True)
class Exact:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise PreconditionError("Exact numerals are nonnegative")


@dataclass(frozen=True)
class Repunit:
    count: "TowerNumeral"
    shift: int

    def __post_init__(self):
        if self.shift < 0:
            raise PreconditionError("repunit shift must be >= 0")


@dataclass(frozen=True)
class Offset:
    inner: "TowerNumeral"
    delta: int


TowerNumeral = Union[Exact, Repunit, Offset]


def _chain(x: TowerNumeral) -> list[TowerNumeral]:
    """Layers from the outermost down to the Exact leaf."""
    out = [x]
    while not isinstance(x, Exact):
        x = x.count if isinstance(x, Repunit) else x.inner
        out.append(x)
    return out


def depth(x: TowerNumeral) -> int:
    return len(_chain(x)) - 1


def repunit_value(count: int, shift: int, b: int) -> int:
    """``sum(b**i for i in range(shift, shift + count))`` in closed form."""
    return b**shift * (b**count - 1) // (b - 1)


def value(x: TowerNumeral, b: int, limit: int | None = DEFAULT_DIGIT_BUDGET) -> int:
    """Exact value; raises :class:`TooLarge` if a repunit would exceed ``limit`` digits."""
    b = check_base(b)
    layers = _chain(x)
    v = layers[-1].value
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            v += layer.delta
        else:
            if v < 1:
                raise PreconditionError("repunit count must be >= 1")
            if limit is not None and v + layer.shift > limit:
                raise TooLarge(f"repunit with ~2^{(v + layer.shift).bit_length()} digits exceeds budget {limit}")
            v = repunit_value(v, layer.shift, b)
    return v


def to_rle(x: TowerNumeral, b: int, limit: int | None = DEFAULT_DIGIT_BUDGET) -> RleDigits:
    """Run-length digits of ``x``.

    ``limit`` bounds the digit count of every integer computed exactly on the
    way (in particular each repunit's count).  The outermost repunit itself
    may be far longer: it becomes a single run of ones.
    """
    b = check_base(b)
    layers = _chain(x)
    v: int | None = layers[-1].value
    rle: RleDigits | None = None
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            if rle is None:
                v += layer.delta
            else:
                rle = rle_add_int(rle, layer.delta)
            continue
        if rle is not None:
            raise TooLarge("repunit count is itself too long to evaluate")
        if v < 1:
            raise PreconditionError("repunit count must be >= 1")
        if limit is None or v + layer.shift <= limit:
            v = repunit_value(v, layer.shift, b)
        else:
            rle = RleDigits.from_runs([(0, layer.shift), (1, v)], b)
            v = None
    return rle if rle is not None else RleDigits.from_int(v, b)


def parity(x: TowerNumeral, b: int) -> int:
    """``value(x) % 2`` without evaluating ``x``."""
    b = check_base(b)
    layers = _chain(x)
    p = layers[-1].value % 2
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            p = (p + layer.delta) % 2
        elif b % 2 == 0:
            # only b**0 is odd
            p = 1 if layer.shift == 0 else 0
        # odd base: a sum of `count` odd powers has the parity of `count`
    return p


def is_positive(x: TowerNumeral, b: int) -> bool:
    """Structural positivity: repunits with an odd top position, offsets by nonnegative deltas."""
    layers = _chain(x)
    pos = layers[-1].value > 0
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            pos = pos and layer.delta >= 0
        else:
            pos = pos and (parity(layer.count, b) + layer.shift) % 2 == 1
    return pos


def num_digits(x: TowerNumeral, b: int, limit: int | None = DEFAULT_DIGIT_BUDGET) -> int:
    """Digit count of ``x``; may be astronomically large but is computed exactly."""
    if isinstance(x, Exact):
        return digit_count(x.value, b)
    if isinstance(x, Repunit):
        return value(x.count, b, limit) + x.shift
    return to_rle(x, b, limit).length


def to_json(x: TowerNumeral) -> dict:
    layers = _chain(x)
    node: dict = {"kind": "exact", "value": str(layers[-1].value)}
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            node = {"kind": "offset", "inner": node, "delta": str(layer.delta)}
        else:
            node = {"kind": "repunit", "count": node, "shift": layer.shift}
    return node


def from_json(data: dict) -> TowerNumeral:
    stack = []
    node = data
    while node["kind"] != "exact":
        if node["kind"] == "offset":
            stack.append(("offset", int(node["delta"])))
            node = node["inner"]
        elif node["kind"] == "repunit":
            stack.append(("repunit", int(node["shift"])))
            node = node["count"]
        else:
            raise PreconditionError(f"unknown numeral kind {node['kind']!r}")
    x: TowerNumeral = Exact(int(node["value"]))
    for kind, arg in reversed(stack):
        x = Offset(x, arg) if kind == "offset" else Repunit(x, arg)
    return x


def describe(x: TowerNumeral) -> str:
    """Compact rendering, e.g. ``"R[5](R[6](23)+584)+1353"``; ``R[s](c)`` is a repunit."""
    layers = _chain(x)
    text = str(layers[-1].value)
    for layer in reversed(layers[:-1]):
        if isinstance(layer, Offset):
            text = f"{text}{layer.delta:+d}"
        else:
            text = f"R[{layer.shift}]({text})"
    return text
