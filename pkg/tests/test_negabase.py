import numpy as np
import pytest
from hypothesis import given, strategies as st

from negahappy.errors import DigitRangeError, InvalidBase, NegativeResultError, PreconditionError
from negahappy.negabase import (
    RleDigits,
    count_digits_array,
    digit_count,
    evaluate,
    evaluate_array,
    expand,
    expand_array,
    format_digits,
    normalize,
    parse_digits,
    rle_add_int,
    rle_splice_low,
)

bases = st.integers(min_value=-16, max_value=-2)
ints = st.integers(min_value=-(10**40), max_value=10**40)


def naive_value(digits, b):
    return sum(d * b**i for i, d in enumerate(digits))


@pytest.mark.parametrize(
    "a, b, msf",
    [(2017, -10, "18197"), (-2017, -10, "2023"), (10, -5, "130"), (3, -2, "111")],
)
def test_expand_examples(a, b, msf):
    assert format_digits(expand(a, b)) == msf


def test_zero_is_empty():
    assert expand(0, -6) == ()
    assert evaluate((), -4) == 0
    assert digit_count(0, -5) == 0
    assert format_digits(()) == "0"


def test_evaluate_and_count():
    assert expand(10, -5) == (0, 3, 1)
    assert evaluate([1, 1, 1], -2) == 3
    assert evaluate(expand(-2017, -10), -10) == -2017
    assert digit_count(2017, -10) == 5
    assert digit_count(10, -5) == 3


def test_bad_input():
    with pytest.raises(InvalidBase):
        expand(5, -1)
    with pytest.raises(InvalidBase):
        expand(5, 10)
    with pytest.raises(DigitRangeError):
        evaluate([5], -5)
    with pytest.raises(DigitRangeError):
        evaluate([-1], -5)


def test_normalize_strips_high_zeros():
    assert normalize([1, 2, 0, 0], -3) == (1, 2)
    assert evaluate([1, 2, 0, 0], -3) == evaluate([1, 2], -3)


@given(ints, bases)
def test_round_trip(a, b):
    digits = expand(a, b)
    assert evaluate(digits, b) == a
    assert naive_value(digits, b) == a
    assert all(0 <= d < -b for d in digits)
    assert not digits or digits[-1] != 0


@given(ints.filter(bool), bases)
def test_sign_follows_length(a, b):
    # positive values have an odd number of digits, negative an even number
    assert (digit_count(a, b) % 2 == 1) == (a > 0)


@given(st.integers(min_value=1, max_value=20), bases, st.randoms(use_true_random=False))
def test_large_values_match_digit_loop(k, b, rnd):
    a = rnd.randrange(-(2 ** (1000 * k)), 2 ** (1000 * k))
    digits = expand(a, b)
    out, x = [], a
    while x:
        r = x % -b
        out.append(r)
        x = (x - r) // b
    assert digits == tuple(out)


def test_text_format():
    assert format_digits(expand(2017, -10), -10) == "(-10)18197"
    assert format_digits((3, 12), -13) == "(-13)[12]3"
    assert parse_digits("(-10)18197") == ((7, 9, 1, 8, 1), -10)
    assert parse_digits("[12]3", -13) == ((3, 12), -13)
    with pytest.raises(InvalidBase):
        parse_digits("12")
    with pytest.raises(DigitRangeError):
        parse_digits("1x2", -5)


@given(ints, bases)
def test_text_round_trip(a, b):
    digits, base = parse_digits(format_digits(expand(a, b), b))
    assert base == b and evaluate(digits, b) == a


def test_array_paths_agree():
    rng = np.random.default_rng(7)
    for b in range(-10, -1):
        a = rng.integers(-(10**12), 10**12, size=2000, dtype=np.int64)
        digits = expand_array(a, b)
        assert np.array_equal(evaluate_array(digits, b), a)
        counts = count_digits_array(digits)
        assert counts.tolist() == [digit_count(int(v), b) for v in a]
        for i in range(50):
            assert tuple(int(d) for d in digits[i, : counts[i]]) == expand(int(a[i]), b)


# -- run-length digits ------------------------------------------------------


def test_rle_add_example():
    x = RleDigits.from_runs([(0, 2), (1, 3)], -4)
    assert x.value() == 208
    y = rle_add_int(x, 7)
    assert y.to_digits() == (3, 3, 2, 1, 1)
    assert y.value() == 215 == naive_value([3, 3, 2, 1, 1], -4)


def test_rle_add_identity_and_splice():
    x = RleDigits.from_int(12345, -7)
    assert rle_add_int(x, 0) == x
    high = RleDigits.from_runs([(0, 3), (4, 2), (1, 6)], -6)
    m = 100
    assert digit_count(m, -6) <= 3
    out = rle_add_int(high, m)
    assert out.runs[-2:] == high.runs[-2:]
    assert out.value() == high.value() + m


def test_rle_huge_run():
    count = 10**30 + 1  # odd total length keeps the numeral positive
    x = RleDigits.from_runs([(0, 4), (1, count)], -5)
    y = rle_add_int(x, 7)
    assert y.length == x.length
    assert y.runs[-1] == (1, count)
    assert sum(d * d * c for d, c in y.runs) == count + sum(d * d for d in expand(7, -5))


def test_rle_negative_result():
    x = RleDigits.from_int(5, -3)
    with pytest.raises(NegativeResultError):
        rle_add_int(x, -10)
    assert rle_add_int(x, -10, allow_negative=True).value() == -5


@given(ints, st.integers(min_value=-(10**12), max_value=10**12), bases)
def test_rle_add_matches_integers(a, m, b):
    x = RleDigits.from_int(a, b)
    assert x.to_digits() == expand(a, b)
    y = rle_add_int(x, m, allow_negative=True)
    assert y.to_digits() == expand(a + m, b)


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(1, 6)), max_size=8))
def test_from_runs_normalizes(runs):
    x = RleDigits.from_runs(runs, -5)
    flat = [d for d, c in runs for _ in range(c)]
    assert x.value() == naive_value(flat, -5)
    assert all(c > 0 for _, c in x.runs)
    assert all(p[0] != q[0] for p, q in zip(x.runs, x.runs[1:]))
    assert not x.runs or x.runs[-1][0] != 0


def test_splice_low_example():
    n = RleDigits.from_runs([(0, 2), (1, 5)], -5)
    assert n.value() == 13025
    spliced = rle_splice_low(n, expand(3, -5))
    assert spliced.value() == 13028
    assert format_digits(spliced.to_digits()) == "1111103"
    assert rle_splice_low(n, ()) == n


def test_splice_low_requires_room():
    n = RleDigits.from_runs([(0, 1), (1, 5)], -5)
    with pytest.raises(PreconditionError):
        rle_splice_low(n, expand(7, -5))


@given(ints, bases)
def test_rle_json_round_trip(a, b):
    x = RleDigits.from_int(a, b)
    assert RleDigits.from_json(x.to_json(), b) == x
    assert all(isinstance(r["count"], str) for r in x.to_json())
