"""Exact rational scalars, extended with a +infinity element.

Finite values are plain ``fractions.Fraction`` (always stored coprime with a
positive denominator).  ``INF`` stands for +infinity: it absorbs addition and
compares greater than every finite value.  It marks absent entries in
min-plus matrices and forbidden cells in assignment problems.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Union

Rat = Union[int, Fraction]

_INF_TOKENS = ("inf", "+inf", "infinity", "oo")


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, string or finite ExtRational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, ExtRational):
        return value.finite()
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@total_ordering
class ExtRational:
    """An exact rational number or +infinity.

    >>> ExtRational("3/4") + 1
    ExtRational(7/4)
    >>> INF + ExtRational(5) == INF
    True
    """

    __slots__ = ("_value",)

    def __init__(self, value: "ExtRational | Rat | str | None" = 0):
        if isinstance(value, ExtRational):
            self._value = value._value
        elif value is None:
            self._value = None
        elif isinstance(value, str):
            text = value.strip().lower()
            self._value = None if text in _INF_TOKENS else Fraction(value)
        elif isinstance(value, (int, Fraction)):
            self._value = Fraction(value)
        else:
            raise TypeError(f"cannot build ExtRational from {type(value).__name__}")

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def finite(self) -> Fraction:
        """The finite value; raises if this is +infinity."""
        if self._value is None:
            raise ValueError("value is +infinity")
        return self._value

    def __add__(self, other) -> "ExtRational":
        other = other if isinstance(other, ExtRational) else ExtRational(other)
        if self._value is None or other._value is None:
            return INF
        return ExtRational(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other) -> "ExtRational":
        other = other if isinstance(other, ExtRational) else ExtRational(other)
        if other._value is None:
            raise ValueError("cannot subtract +infinity")
        if self._value is None:
            return INF
        return ExtRational(self._value - other._value)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtRational):
            return self._value == other._value
        if isinstance(other, (int, Fraction)):
            return self._value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if not isinstance(other, ExtRational):
            if isinstance(other, (int, Fraction)):
                other = ExtRational(other)
            else:
                return NotImplemented
        if self._value is None:
            return False
        if other._value is None:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(self._value)

    def __bool__(self) -> bool:
        return self._value is None or self._value != 0

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"ExtRational({self})"


INF = ExtRational(None)


def parse_ext(text: str) -> ExtRational:
    """Parse ``p/q``, an integer, or ``inf``."""
    return ExtRational(text)
