"""Independent oracles and fixture builders shared across tests.

The rational oracle here deliberately avoids fractions.Fraction and the
package's evaluator: values are (numerator, denominator) tuples reduced with
math.gcd, so agreement with the package is a real cross-check.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from arithview.aspects import PlacedNumber, SeedInstance
from arithview.expressions import Expression, Literal, Slot, parse_expression
from arithview.numbers import NumberLiteral, render

# -- independent big-rational arithmetic ------------------------------------


def _norm(n: int, d: int) -> tuple[int, int]:
    if d == 0:
        raise ZeroDivisionError
    if d < 0:
        n, d = -n, -d
    g = math.gcd(abs(n), d)
    return (n // g, d // g) if g else (n, d)


def r_add(x, y):
    return _norm(x[0] * y[1] + y[0] * x[1], x[1] * y[1])


def r_sub(x, y):
    return _norm(x[0] * y[1] - y[0] * x[1], x[1] * y[1])


def r_mul(x, y):
    return _norm(x[0] * y[0], x[1] * y[1])


def r_div(x, y):
    if y[0] == 0:
        raise ZeroDivisionError
    return _norm(x[0] * y[1], x[1] * y[0])


def oracle_eval(expr: Expression, bindings: dict[int, NumberLiteral] | None = None) -> tuple[int, int]:
    """Evaluate with tuple rationals; independent of the package arithmetic."""

    def walk(node):
        if isinstance(node, Literal):
            lit = node.number
            return _norm(lit.sign * int(lit.digits), 10**lit.scale)
        if isinstance(node, Slot):
            lit = bindings[node.index]
            return _norm(lit.sign * int(lit.digits), 10**lit.scale)
        left = walk(node.left)
        right = walk(node.right)
        return {"+": r_add, "-": r_sub, "*": r_mul, "/": r_div}[node.op](left, right)

    return walk(expr.root)


def as_fraction(pair: tuple[int, int]) -> Fraction:
    return Fraction(*pair)


# -- independent number-to-words conversion -----------------------------------

_ONES = [
    "", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
    "seventeen", "eighteen", "nineteen",
]
_TENS_O = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]


def words_oracle(n: int) -> str:
    """Second opinion on cardinal words, written bottom-up rather than chunked."""
    if n == 0:
        return "zero"
    parts: list[str] = []
    for scale, word in ((10**9, "billion"), (10**6, "million"), (10**3, "thousand")):
        if n >= scale:
            parts.append(words_oracle(n // scale) + " " + word)
            n %= scale
    if n >= 100:
        parts.append(_ONES[n // 100] + " hundred")
        n %= 100
    if n >= 20:
        if n % 10:
            parts.append(_TENS_O[n // 10] + "-" + _ONES[n % 10])
        else:
            parts.append(_TENS_O[n // 10])
    elif n:
        parts.append(_ONES[n])
    return " ".join(parts)


# -- random bound expressions over the shape taxonomy -------------------------


def random_bound_expression(shape: str, rng: random.Random) -> tuple[Expression, dict[int, NumberLiteral]]:
    """A slotted expression for the shape plus random bindings (no zero divisors)."""
    slotted = {
        "a+b": "num1+num2", "a-b": "num1-num2", "a*b": "num1*num2", "a/b": "num1/num2",
        "a+b+c": "num1+num2+num3", "a+b-c": "num1+num2-num3",
        "a*(b+c)": "num1*(num2+num3)", "a*(b-c)": "num1*(num2-num3)",
        "(a+b)/c": "(num1+num2)/num3", "(a-b)/c": "(num1-num2)/num3",
        "a-b-c": "num1-num2-num3", "a/b+c": "num1/num2+num3",
        "a*b+c": "num1*num2+num3", "a*b-c": "num1*num2-num3",
        "a*b*c": "num1*num2*num3", "a*b/c": "num1*num2/num3",
        "a/(b+c)": "num1/(num2+num3)", "a/(b-c)": "num1/(num2-num3)",
        "a*(b/c)": "num1*(num2/num3)", "a/b*c": "num1/num2*num3",
    }[shape]
    expr = parse_expression(slotted)
    while True:
        bindings = {}
        for slot in expr.slots():
            scale = rng.choice((0, 0, 0, 1, 2))
            units = rng.randint(-99999, 99999)
            sign = -1 if units < 0 else 1
            bindings[slot] = NumberLiteral(str(abs(units) if units else 1), scale, sign)
        try:
            oracle_eval(expr, bindings)
        except ZeroDivisionError:
            continue
        return expr, bindings


def make_seed(
    seed_id: str,
    pattern: str,
    expression: str,
    values: list[str],
) -> SeedInstance:
    """Build a SeedInstance from a text pattern with numN markers."""
    import re

    expr = parse_expression(expression)
    literals = {i + 1: NumberLiteral(v) for i, v in enumerate(values)}
    pieces: list[str] = []
    placed: list[PlacedNumber] = []
    cursor = 0
    for match in re.finditer(r"\bnum(\d+)\b", pattern):
        slot = int(match.group(1))
        surface = render(literals[slot])
        pieces.append(pattern[cursor:match.start()])
        start = sum(len(p) for p in pieces)
        pieces.append(surface)
        placed.append(PlacedNumber(literals[slot], start, start + len(surface), slot))
        cursor = match.end()
    pieces.append(pattern[cursor:])
    placed.sort(key=lambda p: p.slot)
    from arithview.expressions import evaluate

    answer = evaluate(expr, literals)
    return SeedInstance(
        id=seed_id,
        question="".join(pieces),
        numbers=tuple(placed),
        expression=expr,
        answer=answer,
    )
