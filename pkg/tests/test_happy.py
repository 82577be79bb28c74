import numpy as np
import pytest
from hypothesis import given, strategies as st

from negahappy.errors import PreconditionError
from negahappy.happy import (
    PowerParams,
    is_happy,
    is_happy_array,
    is_happy_naive,
    iterate,
    power_sum,
    power_sum_array,
    power_sum_rle,
    threshold,
    trajectory,
)
from negahappy.negabase import RleDigits, expand

BASES = range(-10, -1)


def digit_loop_sum(a, b, e=2):
    total = 0
    while a:
        r = a % -b
        total += r**e
        a = (a - r) // b
    return total


@pytest.mark.parametrize("a, b, image", [(3, -2, 3), (9, -5, 33), (14, -4, 6), (0, -7, 0)])
def test_power_sum_examples(a, b, image):
    assert power_sum(a, b) == image


def test_power_sum_exponent():
    assert power_sum(0, -3, 5) == 0
    assert power_sum(9, -5, 3) == sum(d**3 for d in expand(9, -5))


def test_power_sum_rle():
    assert power_sum_rle(RleDigits.from_runs([(0, 4), (1, 10**40 + 1)], -5)) == 10**40 + 1
    assert power_sum_rle(RleDigits.from_runs([], -5)) == 0
    assert power_sum_rle(RleDigits.from_int(9, -5)) == 33


def test_trajectories():
    t = trajectory(9, -5)
    assert t.iterates == (33, 29, 17, 9)
    assert t.cycle == (33, 29, 17, 9)
    t = trajectory(5, -9)
    assert t.iterates == (25, 99, 53, 81, 1)
    assert t.tail == (25, 99, 53, 81) and t.cycle == (1,)
    x, steps = 5, []
    for _ in range(5):
        x = digit_loop_sum(x, -9)
        steps.append(x)
    assert tuple(steps) == t.iterates
    assert trajectory(4, -2).cycle == (1,)
    with pytest.raises(PreconditionError):
        trajectory(0, -5)


def test_iterate():
    assert iterate(9, -5, 4) == 9
    assert iterate(9, -5, 0) == 9
    assert iterate(16, -4, 3) == 1


@pytest.mark.parametrize(
    "a, b, expected",
    [(4, -2, True), (5, -2, False), (-4, -4, True), (25, -5, True), (1, -6, True), (0, -3, False), (-1, -3, True)],
)
def test_is_happy_examples(a, b, expected):
    assert is_happy(a, b) is expected
    assert is_happy_naive(a, b) is expected


def test_threshold():
    assert [threshold(b) for b in (-2, -5, -10)] == [3, 84, 819]
    # sharpness in base -2: 3 is fixed
    assert power_sum(threshold(-2), -2) == threshold(-2)


@given(st.integers(-16, -2), st.integers(0, 10**30))
def test_decrease_above_threshold(b, extra):
    a = threshold(b) + 1 + extra
    assert 0 < power_sum(a, b) < a


@given(st.sampled_from([-3, -5, -7, -9, -11]), st.integers(-(10**12), 10**12), st.integers(0, 12))
def test_parity_preserved_in_odd_bases(b, a, k):
    assert iterate(a, b, k) % 2 == a % 2


@given(st.integers(-(10**12), 10**12))
def test_mod3_in_base_minus_two(a):
    # every digit is 0 or 1, so S counts ones; a and its digit count agree mod 3
    assert power_sum(a, -2) % 3 == a % 3


@given(st.integers(-16, -2), st.integers(-(10**20), 10**20).filter(bool))
def test_positive_image(b, a):
    assert power_sum(a, b) > 0
    assert power_sum(a, b) == digit_loop_sum(a, b)


def test_params():
    p = PowerParams(-5)
    assert p.e == 2 and p.b == -5
    with pytest.raises(ValueError):
        PowerParams(-1)


def test_batch_matches_scalar():
    rng = np.random.default_rng(11)
    for b in BASES:
        a = rng.integers(-(10**9), 10**9, size=3000, dtype=np.int64)
        sums = power_sum_array(a, b)
        assert sums.tolist() == [power_sum(int(v), b) for v in a]
        verdicts = is_happy_array(a, b)
        assert verdicts.tolist() == [is_happy(int(v), b) for v in a]
        assert not is_happy_array(np.array([0]), b)[0]
