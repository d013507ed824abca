"""Exact numbers: rationals plus the two infinite sentinels.

Rationals are plain :class:`fractions.Fraction` values. Shares can be
``+inf`` (an agent with zero marginal contribution and a positive cost) and
utilities can be ``-inf`` (a team holding such an agent), so the module adds
two sentinels that order correctly against every Fraction. No float ever
enters a computation; :func:`to_decimal` exists only for display.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

__all__ = [
    "Fraction",
    "Infinity",
    "POS_INF",
    "NEG_INF",
    "ExtendedValue",
    "is_finite",
    "parse_rational",
    "parse_value",
    "format_rational",
    "format_value",
    "to_decimal",
    "as_fraction",
]


@total_ordering
class Infinity:
    """Signed infinity that compares against Fractions and ints."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __hash__(self):
        return hash(("omac-infinity", self.sign))

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        if isinstance(other, Rational):
            return self.sign < 0
        return NotImplemented

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __add__(self, other):
        if isinstance(other, Infinity):
            if other.sign != self.sign:
                raise ArithmeticError("inf - inf is undefined")
            return self
        if isinstance(other, Rational):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Infinity):
            return POS_INF if self.sign == other.sign else NEG_INF
        if isinstance(other, Rational):
            if other == 0:
                raise ArithmeticError("0 * inf is undefined")
            return self if other > 0 else -self
        return NotImplemented

    __rmul__ = __mul__


POS_INF = Infinity(1)
NEG_INF = Infinity(-1)

ExtendedValue = Union[Fraction, Infinity]


def is_finite(value) -> bool:
    return not isinstance(value, Infinity)


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"±int"`` or ``"±int/int"`` into a reduced Fraction.

    Decimal and exponent notation are rejected on purpose: files and flags
    carry exact values only.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"malformed rational {text!r} (expected 'p' or 'p/q')")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def parse_value(text: str) -> ExtendedValue:
    s = text.strip()
    if s in ("inf", "+inf"):
        return POS_INF
    if s == "-inf":
        return NEG_INF
    return parse_rational(s)


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_value(value) -> str:
    if isinstance(value, Infinity):
        return str(value)
    return format_rational(value)


def to_decimal(value, digits: int = 12) -> str:
    """Display-only decimal rendering."""
    if isinstance(value, Infinity):
        return str(value)
    value = Fraction(value)
    return f"{float(value):.{digits}g}"


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")
