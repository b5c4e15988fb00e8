from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ergmlab.dyadic import (
    DigitVector,
    Dyadic,
    dyadic_sum,
    from_exponent_histogram,
    integer_part_digits,
    natural_digits,
    pow2,
    shift_window,
)
from ergmlab.errors import InvalidArgument, OverflowDigits

dyadics = st.builds(Dyadic, st.integers(0, 1 << 80), st.integers(0, 90))


def test_canonical_form():
    assert Dyadic(12, 3) == Dyadic(3, 1)
    assert (Dyadic(12, 3).mantissa, Dyadic(12, 3).shift) == (3, 1)
    assert Dyadic(0, 9) == Dyadic(0)
    assert Dyadic(5, -2) == Dyadic(20)


def test_negative_rejected():
    with pytest.raises(InvalidArgument):
        Dyadic(-1)
    with pytest.raises(InvalidArgument):
        Dyadic(1) - Dyadic(2)


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(a, b):
    assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()
    assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()
    assert (a < b) == (a.to_fraction() < b.to_fraction())
    assert (a == b) == (a.to_fraction() == b.to_fraction())
    hi, lo = max(a, b, key=Dyadic.to_fraction), min(a, b, key=Dyadic.to_fraction)
    assert (hi - lo).to_fraction() == hi.to_fraction() - lo.to_fraction()


@given(dyadics)
def test_floor_frac_and_string(a):
    assert a.floor() + a.frac().to_fraction() == a.to_fraction()
    assert a.frac() < Dyadic(1)
    assert Dyadic.parse(str(a)) == a


def test_parse():
    assert Dyadic.parse("13073*2^-4").to_fraction() == Fraction(13073, 16)
    assert Dyadic.parse("817") == Dyadic(817)
    for bad in ("x", "3*3^-1", "1*2^-q"):
        with pytest.raises(InvalidArgument):
            Dyadic.parse(bad)


@given(st.dictionaries(st.integers(-60, 60), st.integers(0, 50)))
def test_histogram_sum(hist):
    want = sum((Fraction(2) ** e * c for e, c in hist.items()), Fraction(0))
    assert from_exponent_histogram(hist).to_fraction() == want
    assert dyadic_sum(pow2(e) * c for e, c in hist.items()) == from_exponent_histogram(hist)


def test_digits():
    d = natural_digits(817, 4, 3)
    assert d.digits == (1, 3, 3, 0) and d.value() == 817
    assert DigitVector.from_json(d.to_json()) == d
    assert integer_part_digits(Dyadic(13073, 4), 4, 3) == d
    with pytest.raises(OverflowDigits):
        natural_digits(1 << 16, 4, 3)
    with pytest.raises(InvalidArgument):
        DigitVector(2, (4,))


@given(st.integers(0, 1 << 200), st.integers(1, 30))
def test_digits_reconstruct(value, alpha):
    m = value.bit_length() // alpha + 1
    assert natural_digits(value, alpha, m).value() == value


def test_shift_window():
    assert shift_window(Dyadic(13073, 4), 4) == 817 >> 4
    assert shift_window(Dyadic(640 << 36), 36) == 640
