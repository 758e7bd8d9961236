"""Exact rational arithmetic helpers.

All gold answers are exact rationals (``fractions.Fraction``); decimal
rendering is only done for values whose reduced denominator is of the form
2^i * 5^j, i.e. values with a terminating decimal expansion.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

MAX_ANSWER_DIGITS = 12


class NonTerminatingError(ValueError):
    """Raised when an exact decimal rendering is requested for 1/3 and friends."""


def decimal_scale(value: Fraction) -> int | None:
    """Smallest s such that value * 10**s is an integer, or None if no such s."""
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    return max(twos, fives)


def is_terminating(value: Fraction) -> bool:
    return decimal_scale(value) is not None


def to_decimal_string(value: Fraction) -> str:
    """Exact decimal rendering with no trailing fractional zeros ("0.59", "-3", "0")."""
    scale = decimal_scale(value)
    if scale is None:
        raise NonTerminatingError(f"{value} has no terminating decimal expansion")
    scaled = abs(value.numerator) * 10**scale // value.denominator
    digits = str(scaled).rjust(scale + 1, "0")
    if scale:
        text = f"{digits[:-scale]}.{digits[-scale:]}"
    else:
        text = digits
    return "-" + text if value < 0 else text


def digit_count(value: Fraction) -> int | None:
    """Number of digit characters in the exact decimal form; None if non-terminating."""
    if not is_terminating(value):
        return None
    return sum(c.isdigit() for c in to_decimal_string(value))


def within_digit_limit(value: Fraction, max_digits: int = MAX_ANSWER_DIGITS) -> bool:
    n = digit_count(value)
    return n is not None and n <= max_digits


def parse_decimal(text: str) -> Fraction:
    """Parse a plain decimal string ("-12.50") into an exact Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty decimal string")
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    if text.count(".") > 1 or not text:
        raise ValueError(f"malformed decimal: {text!r}")
    int_part, _, frac_part = text.partition(".")
    if not (int_part or frac_part) or not all(c.isdigit() for c in int_part + frac_part):
        raise ValueError(f"malformed decimal: {text!r}")
    units = int((int_part or "0") + frac_part)
    return Fraction(sign * units, 10 ** len(frac_part))
