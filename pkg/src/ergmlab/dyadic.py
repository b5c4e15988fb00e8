"""Exact non-negative dyadic rationals and base-2^alpha digit extraction."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidArgument, OverflowDigits


@dataclass(frozen=True, order=False)
class Dyadic:
    """The number ``mantissa * 2**-shift``.

    Values are kept in canonical form (``shift == 0`` or ``mantissa`` odd), so
    two dyadics are equal exactly when their fields are equal.
    """

    mantissa: int
    shift: int = 0

    def __post_init__(self):
        m, s = self.mantissa, self.shift
        if m < 0:
            raise InvalidArgument("dyadics are non-negative")
        if s < 0:
            m <<= -s
            s = 0
        if m == 0:
            s = 0
        elif s:
            tz = (m & -m).bit_length() - 1
            drop = min(tz, s)
            m >>= drop
            s -= drop
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "shift", s)

    @classmethod
    def from_int(cls, k: int) -> Dyadic:
        return cls(k, 0)

    def __add__(self, other: Dyadic) -> Dyadic:
        if isinstance(other, int):
            other = Dyadic(other)
        s = max(self.shift, other.shift)
        return Dyadic((self.mantissa << (s - self.shift)) + (other.mantissa << (s - other.shift)), s)

    __radd__ = __add__

    def __mul__(self, other: Dyadic) -> Dyadic:
        if isinstance(other, int):
            other = Dyadic(other)
        return Dyadic(self.mantissa * other.mantissa, self.shift + other.shift)

    __rmul__ = __mul__

    def __sub__(self, other: Dyadic) -> Dyadic:
        s = max(self.shift, other.shift)
        diff = (self.mantissa << (s - self.shift)) - (other.mantissa << (s - other.shift))
        if diff < 0:
            raise InvalidArgument("dyadic subtraction would be negative")
        return Dyadic(diff, s)

    def _cmp_key(self, other: Dyadic) -> tuple[int, int]:
        s = max(self.shift, other.shift)
        return self.mantissa << (s - self.shift), other.mantissa << (s - other.shift)

    def __lt__(self, other: Dyadic) -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: Dyadic) -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: Dyadic) -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: Dyadic) -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def floor(self) -> int:
        return self.mantissa >> self.shift

    def frac(self) -> Dyadic:
        return Dyadic(self.mantissa & ((1 << self.shift) - 1), self.shift)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.shift)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __str__(self) -> str:
        return f"{self.mantissa}*2^-{self.shift}"

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Inverse of ``str``: ``"M*2^-s"`` (a bare integer is also accepted)."""
        text = text.strip()
        try:
            if "*" not in text:
                return cls(int(text))
            m, tail = text.split("*", 1)
            if not tail.startswith("2^-"):
                raise ValueError(tail)
            return cls(int(m), int(tail[3:]))
        except ValueError:
            raise InvalidArgument(f"not a dyadic string: {text!r}") from None


def dyadic_add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def pow2(e: int) -> Dyadic:
    """Exactly ``2**e`` for an integer ``e`` of either sign."""
    return Dyadic(1 << e, 0) if e >= 0 else Dyadic(1, -e)


def from_exponent_histogram(hist: Mapping[int, int]) -> Dyadic:
    """Sum ``count * 2**e`` over a histogram ``{e: count}``."""
    if not hist:
        return Dyadic(0)
    shift = max(0, -min(hist))
    total = 0
    for e, c in hist.items():
        total += c << (e + shift)
    return Dyadic(total, shift)


def dyadic_sum(values: Iterable[Dyadic]) -> Dyadic:
    acc = Dyadic(0)
    for v in values:
        acc = acc + v
    return acc


@dataclass(frozen=True)
class DigitVector:
    """Digits ``d_0 .. d_m`` of a natural number in base ``2**base_exponent``."""

    base_exponent: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base_exponent < 1:
            raise InvalidArgument("base exponent must be positive")
        limit = 1 << self.base_exponent
        for d in self.digits:
            if not 0 <= d < limit:
                raise InvalidArgument(f"digit {d} outside [0, 2^{self.base_exponent})")

    def value(self) -> int:
        return sum(d << (i * self.base_exponent) for i, d in enumerate(self.digits))

    def to_json(self) -> str:
        return json.dumps({"base_exponent": self.base_exponent, "digits": list(self.digits)})

    @classmethod
    def from_json(cls, text: str) -> DigitVector:
        obj = json.loads(text)
        return cls(int(obj["base_exponent"]), tuple(int(d) for d in obj["digits"]))


def natural_digits(value: int, alpha: int, m: int) -> DigitVector:
    if alpha < 1:
        raise InvalidArgument("alpha must be >= 1")
    if value >> ((m + 1) * alpha):
        raise OverflowDigits(f"value needs more than {m + 1} digits in base 2^{alpha}")
    mask = (1 << alpha) - 1
    return DigitVector(alpha, tuple((value >> (i * alpha)) & mask for i in range(m + 1)))


def integer_part_digits(z: Dyadic, alpha: int, m: int) -> DigitVector:
    """Digits ``d_0 .. d_m`` of ``floor(z)`` in base ``2**alpha``."""
    return natural_digits(z.floor(), alpha, m)


def shift_window(z: Dyadic, from_bit: int) -> int:
    """``floor(z / 2**from_bit)``."""
    if from_bit < 0:
        raise InvalidArgument("from_bit must be non-negative")
    return z.floor() >> from_bit
