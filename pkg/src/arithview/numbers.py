"""Numbers as written artifacts: surface styles, parsing, and seeded generators.

A ``NumberLiteral`` keeps the written digit sequence and decimal position
separate from the exact value, so that "0.18", "18", "1 800" and "eighteen"
can all be produced or recovered without floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import decimal_scale

STYLES = (
    "plain",
    "words",
    "comma_grouped",
    "space_grouped",
    "no_leading_zero",
    "trailing_zero_decimal",
)

WORDS_MAX = 999_999_999_999

_UNITS = (
    "zero one two three four five six seven eight nine ten eleven twelve "
    "thirteen fourteen fifteen sixteen seventeen eighteen nineteen"
).split()
_TENS = (
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety",
)
_GROUPS = ("", " thousand", " million", " billion")


class NumberFormatError(ValueError):
    """Malformed numeral text or an invalid style request."""


def to_words(n: int) -> str:
    """Lowercase English cardinal with hyphenated tens ("thirty-four")."""
    if n < 0 or n > WORDS_MAX:
        raise NumberFormatError(f"{n} outside word-rendering range [0, {WORDS_MAX}]")
    if n == 0:
        return "zero"

    def under_1000(k: int) -> str:
        parts = []
        if k >= 100:
            parts.append(_UNITS[k // 100] + " hundred")
            k %= 100
        if k >= 20:
            tens = _TENS[k // 10]
            parts.append(tens + "-" + _UNITS[k % 10] if k % 10 else tens)
        elif k:
            parts.append(_UNITS[k])
        return " ".join(parts)

    chunks = []
    group = 0
    while n:
        n, k = divmod(n, 1000)
        if k:
            chunks.append(under_1000(k) + _GROUPS[group])
        group += 1
    return " ".join(reversed(chunks))


def words_to_int(text: str) -> int:
    """Inverse of :func:`to_words` for well-formed cardinals."""
    tokens = text.strip().lower().replace("-", " ").replace(" and ", " ").split()
    if not tokens:
        raise NumberFormatError("empty word numeral")
    small = {w: i for i, w in enumerate(_UNITS)}
    small.update({w: i * 10 for i, w in enumerate(_TENS) if w})
    total = current = 0
    for tok in tokens:
        if tok in small:
            current += small[tok]
        elif tok == "hundred":
            if current == 0:
                raise NumberFormatError(f"dangling 'hundred' in {text!r}")
            current *= 100
        elif tok in ("thousand", "million", "billion"):
            mult = {"thousand": 10**3, "million": 10**6, "billion": 10**9}[tok]
            if current == 0:
                raise NumberFormatError(f"dangling {tok!r} in {text!r}")
            total += current * mult
            current = 0
        else:
            raise NumberFormatError(f"unknown word {tok!r} in numeral {text!r}")
    return total + current


@dataclass(frozen=True)
class NumberLiteral:
    """A number as written: digit string, decimal position, sign, and style."""

    digits: str
    scale: int = 0
    sign: int = 1
    style: str = "plain"

    def __post_init__(self) -> None:
        if not self.digits or not self.digits.isdigit():
            raise NumberFormatError(f"bad digit string {self.digits!r}")
        if self.scale < 0:
            raise NumberFormatError("scale must be >= 0")
        if self.sign not in (1, -1):
            raise NumberFormatError("sign must be +1 or -1")
        if self.style not in STYLES:
            raise NumberFormatError(f"unknown style {self.style!r}")
        if self.style == "words":
            if self.scale != 0 or self.sign < 0 or int(self.digits) > WORDS_MAX:
                raise NumberFormatError("words style needs a nonnegative integer in range")
        if self.style == "no_leading_zero":
            if self.scale < 1 or int(self.integer_digits or "0") != 0:
                raise NumberFormatError("no_leading_zero style needs a zero integer part")
        if self.style == "trailing_zero_decimal" and self.scale < 1:
            raise NumberFormatError("trailing_zero_decimal style needs scale >= 1")

    @property
    def integer_digits(self) -> str:
        return self.digits[: len(self.digits) - self.scale] if len(self.digits) > self.scale else ""

    @property
    def fraction_digits(self) -> str:
        return self.digits.rjust(self.scale, "0")[-self.scale:] if self.scale else ""

    @property
    def value(self) -> Fraction:
        return Fraction(self.sign * int(self.digits), 10**self.scale)

    @classmethod
    def from_value(cls, value: Fraction | int, style: str = "plain") -> "NumberLiteral":
        """Literal with the minimal digit string representing an exact decimal value."""
        value = Fraction(value)
        scale = decimal_scale(value)
        if scale is None:
            raise NumberFormatError(f"{value} is not a terminating decimal")
        units = abs(value.numerator) * 10**scale // value.denominator
        digits = str(units).rjust(scale + 1, "0")
        return cls(digits=digits, scale=scale, sign=-1 if value < 0 else 1, style=style)


def render(lit: NumberLiteral) -> str:
    """Surface string for a literal in its style."""
    sign = "-" if lit.sign < 0 else ""
    int_part = lit.integer_digits or "0"
    frac = lit.fraction_digits
    if lit.style == "words":
        return to_words(int(lit.digits))
    if lit.style == "no_leading_zero":
        return f"{sign}.{frac}"
    if lit.style in ("comma_grouped", "space_grouped"):
        sep = "," if lit.style == "comma_grouped" else " "
        grouped = ""
        for i, ch in enumerate(reversed(int_part)):
            if i and i % 3 == 0:
                grouped = sep + grouped
            grouped = ch + grouped
        int_part = grouped
    body = f"{int_part}.{frac}" if frac else int_part
    return sign + body


def parse_number(text: str) -> NumberLiteral:
    """Parse a digit-form numeral, inferring its style.

    Accepts an optional sign, one grouping convention (comma or space, groups
    of three in the integer part only), and one decimal point.
    """
    raw = text.strip()
    if not raw:
        raise NumberFormatError("empty numeral")
    sign = 1
    if raw[0] in "+-":
        sign = -1 if raw[0] == "-" else 1
        raw = raw[1:]
    if raw.count(".") > 1:
        raise NumberFormatError(f"multiple decimal points in {text!r}")
    int_part, _, frac_part = raw.partition(".")
    if frac_part and not frac_part.isdigit():
        raise NumberFormatError(f"malformed fraction part in {text!r}")

    has_comma = "," in int_part
    has_space = " " in int_part
    if has_comma and has_space:
        raise NumberFormatError(f"mixed grouping separators in {text!r}")
    style = "plain"
    if has_comma or has_space:
        sep = "," if has_comma else " "
        groups = int_part.split(sep)
        if (
            not all(g.isdigit() for g in groups)
            or not 1 <= len(groups[0]) <= 3
            or any(len(g) != 3 for g in groups[1:])
        ):
            raise NumberFormatError(f"malformed digit grouping in {text!r}")
        int_digits = "".join(groups)
        style = "comma_grouped" if has_comma else "space_grouped"
    else:
        if int_part and not int_part.isdigit():
            raise NumberFormatError(f"malformed numeral {text!r}")
        int_digits = int_part
        if not int_part and frac_part:
            style = "no_leading_zero"
    digits = int_digits + frac_part
    if not digits:
        raise NumberFormatError(f"no digits in {text!r}")
    return NumberLiteral(digits=digits, scale=len(frac_part), sign=sign, style=style)


def shift_magnitude(lit: NumberLiteral, k: int) -> NumberLiteral:
    """Multiply by 10**k, preserving the digit sequence (padding zeros as needed)."""
    scale = lit.scale - k
    digits = lit.digits
    if scale < 0:
        digits += "0" * -scale
        scale = 0
    return NumberLiteral(digits=digits, scale=scale, sign=lit.sign, style="plain")


# value grid per kind: value = units / 10**scale, units uniform in [lo, hi]
_KIND_GRIDS: dict[str, tuple[int, int, int]] = {
    "int_0_1000": (0, 999, 0),
    "int_1000_1000000": (1001, 1_000_000, 0),
    "dec_1dp_0_1000": (1, 9_999, 1),
    "dec_2dp_0_1000": (1, 99_999, 2),
    "int_2digit": (10, 99, 0),
    "int_3digit": (100, 999, 0),
    "int_4digit": (1000, 9_999, 0),
    "int_large": (1001, 1_000_000, 0),
    "int_small": (0, 999, 0),
}

NUMBER_KINDS = tuple(_KIND_GRIDS)


@dataclass(frozen=True)
class NumberTypeSpec:
    """A named sampling range: integer or fixed-decimal values on a uniform grid."""

    kind: str
    lo_units: int = field(init=False)
    hi_units: int = field(init=False)
    scale: int = field(init=False)

    def __post_init__(self) -> None:
        if self.kind not in _KIND_GRIDS:
            raise ValueError(f"unknown number type kind {self.kind!r}")
        lo, hi, scale = _KIND_GRIDS[self.kind]
        object.__setattr__(self, "lo_units", lo)
        object.__setattr__(self, "hi_units", hi)
        object.__setattr__(self, "scale", scale)

    def contains(self, value: Fraction) -> bool:
        units = value * 10**self.scale
        return units.denominator == 1 and self.lo_units <= units.numerator <= self.hi_units


def literal_from_units(units: int, scale: int, style: str = "plain") -> NumberLiteral:
    """Literal for units/10**scale with an explicit integer-part digit ("05" -> 0.5)."""
    return NumberLiteral(digits=str(units).rjust(scale + 1, "0"), scale=scale, style=style)


def gen_number(spec: NumberTypeSpec, rng: random.Random) -> NumberLiteral:
    """Uniform draw from the spec's grid; deterministic for a seeded rng."""
    return literal_from_units(rng.randint(spec.lo_units, spec.hi_units), spec.scale)
