"""Arithmetic expression trees of at most two hops.

Expressions are parsed from infix text (ASCII or unicode operator glyphs,
literal decimals or ``numN`` slots), evaluated exactly over rationals,
canonicalized modulo commutativity, and classified into a fixed taxonomy of
operation shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

from .exact import to_decimal_string
from .numbers import NumberLiteral

ADD, SUB, MUL, DIV = "+", "-", "*", "/"
OPERATORS = (ADD, SUB, MUL, DIV)
COMMUTATIVE = (ADD, MUL)
_PRECEDENCE = {ADD: 1, SUB: 1, MUL: 2, DIV: 2}
_GLYPHS = {"+": ADD, "-": SUB, "−": SUB, "*": MUL, "×": MUL, "/": DIV, "÷": DIV}

MAX_HOPS = 2

# One-hop and two-hop shapes present in the evaluation corpus.
EVAL_SHAPES = (
    "a+b", "a-b", "a*b", "a/b",
    "a+b-c", "a*(b+c)", "(a+b)/c", "a*(b-c)", "(a-b)/c",
)

# Full shape taxonomy covered by the question templates (superset of EVAL_SHAPES).
TEMPLATE_SHAPES = EVAL_SHAPES + (
    "a+b+c", "a-b-c",
    "a/b+c", "a*b+c", "a*b-c", "a*b*c", "a*b/c",
    "a/(b+c)", "a/(b-c)", "a*(b/c)", "a/b*c",
)

# Shapes that appear in the expert-written template set.
EXPERT_SHAPES = (
    "a+b", "a-b", "a*b", "a/b",
    "a+b+c", "a+b-c", "a*(b+c)", "a*(b-c)", "(a+b)/c", "(a-b)/c", "a-b-c",
)


class ExpressionError(ValueError):
    """Base class for expression failures."""


class ParseError(ExpressionError):
    pass


class EvaluationError(ExpressionError):
    pass


class SignatureError(ExpressionError):
    pass


@dataclass(frozen=True)
class Literal:
    number: NumberLiteral


@dataclass(frozen=True)
class Slot:
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Literal, Slot, BinOp]


@dataclass(frozen=True)
class Expression:
    root: Node

    def __str__(self) -> str:
        return serialize(self)

    @property
    def hops(self) -> int:
        return _count_ops(self.root)

    def leaves(self) -> list[Node]:
        out: list[Node] = []
        _collect_leaves(self.root, out)
        return out

    def slots(self) -> list[int]:
        return [leaf.index for leaf in self.leaves() if isinstance(leaf, Slot)]

    def operators(self) -> list[str]:
        ops: list[str] = []
        _collect_ops(self.root, ops)
        return ops

    def is_bound(self) -> bool:
        return not self.slots()


def _count_ops(node: Node) -> int:
    if isinstance(node, BinOp):
        return 1 + _count_ops(node.left) + _count_ops(node.right)
    return 0


def _collect_leaves(node: Node, out: list[Node]) -> None:
    if isinstance(node, BinOp):
        _collect_leaves(node.left, out)
        _collect_leaves(node.right, out)
    else:
        out.append(node)


def _collect_ops(node: Node, out: list[str]) -> None:
    if isinstance(node, BinOp):
        out.append(node.op)
        _collect_ops(node.left, out)
        _collect_ops(node.right, out)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def tokens(self) -> Iterator[tuple[str, str]]:
        text = self.text
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
                continue
            if ch in "()":
                self.pos += 1
                yield ("paren", ch)
            elif ch in _GLYPHS:
                self.pos += 1
                yield ("op", _GLYPHS[ch])
            elif ch.isdigit() or ch == ".":
                start = self.pos
                while self.pos < n and (text[self.pos].isdigit() or text[self.pos] == "."):
                    self.pos += 1
                yield ("number", text[start:self.pos])
            elif ch.isalpha():
                start = self.pos
                while self.pos < n and (text[self.pos].isalnum() or text[self.pos] == "_"):
                    self.pos += 1
                yield ("name", text[start:self.pos])
            else:
                raise ParseError(f"unexpected character {ch!r} at position {self.pos}")
        while True:
            yield ("end", "")


class _Parser:
    def __init__(self, text: str):
        self._stream = _Tokenizer(text).tokens()
        self._current = next(self._stream)

    def _advance(self) -> tuple[str, str]:
        tok = self._current
        self._current = next(self._stream)
        return tok

    def parse(self) -> Node:
        node = self._expr()
        kind, value = self._current
        if kind != "end":
            raise ParseError(f"unexpected trailing token {value!r}")
        return node

    def _expr(self) -> Node:
        node = self._term()
        while self._current == ("op", ADD) or self._current == ("op", SUB):
            _, op = self._advance()
            node = BinOp(op, node, self._term())
        return node

    def _term(self) -> Node:
        node = self._atom()
        while self._current == ("op", MUL) or self._current == ("op", DIV):
            _, op = self._advance()
            node = BinOp(op, node, self._atom())
        return node

    def _atom(self) -> Node:
        kind, value = self._current
        if kind == "paren" and value == "(":
            self._advance()
            node = self._expr()
            kind, value = self._advance()
            if (kind, value) != ("paren", ")"):
                raise ParseError("missing closing parenthesis")
            return node
        if kind == "op" and value == SUB:
            # unary minus is only allowed directly before a numeric literal
            self._advance()
            kind, value = self._current
            if kind != "number":
                raise ParseError("dangling '-'")
            self._advance()
            lit = _literal_from_token(value)
            return Literal(NumberLiteral(lit.digits, lit.scale, -1, lit.style))
        if kind == "number":
            self._advance()
            return Literal(_literal_from_token(value))
        if kind == "name":
            self._advance()
            if value.startswith("num") and value[3:].isdigit() and int(value[3:]) >= 1:
                return Slot(int(value[3:]))
            raise ParseError(f"unknown identifier {value!r}")
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input")


def _literal_from_token(token: str) -> NumberLiteral:
    if token.count(".") > 1 or token in (".",) or not token:
        raise ParseError(f"malformed number {token!r}")
    int_part, _, frac_part = token.partition(".")
    digits = int_part + frac_part
    if not digits.isdigit():
        raise ParseError(f"malformed number {token!r}")
    style = "no_leading_zero" if not int_part else "plain"
    return NumberLiteral(digits=digits, scale=len(frac_part), style=style)


def parse_expression(text: str, max_hops: int | None = MAX_HOPS) -> Expression:
    """Parse infix text into an Expression of at most ``max_hops`` operator nodes.

    The default enforces the two-hop scope; pass ``max_hops=None`` to build
    deeper trees for evaluation only (they carry no operation signature).
    """
    if not text or not text.strip():
        raise ParseError("empty expression")
    root = _Parser(text).parse()
    hops = _count_ops(root)
    if max_hops is not None and hops > max_hops:
        raise ParseError(f"expression has {hops} hops; at most {max_hops} supported")
    return Expression(root)


def serialize(expr: Expression) -> str:
    """Canonical text: fully parenthesized infix, ASCII operators, no whitespace.

    Literal leaves are rendered by value (style-independent), so "3.0" and "3"
    serialize identically.
    """
    return _serialize(expr.root)


def _serialize(node: Node) -> str:
    if isinstance(node, Literal):
        return to_decimal_string(node.number.value)
    if isinstance(node, Slot):
        return f"num{node.index}"
    return f"({_serialize(node.left)}{node.op}{_serialize(node.right)})"


def bind(expr: Expression, numbers: Sequence[NumberLiteral] | Mapping[int, NumberLiteral]) -> Expression:
    """Replace slots with literals; numN binds to the mapping key N or sequence item N-1."""
    if not isinstance(numbers, Mapping):
        numbers = {i + 1: lit for i, lit in enumerate(numbers)}
    return Expression(_bind(expr.root, numbers))


def _bind(node: Node, numbers: Mapping[int, NumberLiteral]) -> Node:
    if isinstance(node, Slot):
        if node.index not in numbers:
            raise EvaluationError(f"unbound slot num{node.index}")
        return Literal(numbers[node.index])
    if isinstance(node, BinOp):
        return BinOp(node.op, _bind(node.left, numbers), _bind(node.right, numbers))
    return node


def evaluate(
    expr: Expression,
    bindings: Sequence[NumberLiteral] | Mapping[int, NumberLiteral] | None = None,
) -> Fraction:
    """Exact rational value of the expression; slots resolved via bindings."""
    if bindings is not None:
        expr = bind(expr, bindings)
    return _evaluate(expr.root)


def _evaluate(node: Node) -> Fraction:
    if isinstance(node, Literal):
        return node.number.value
    if isinstance(node, Slot):
        raise EvaluationError(f"unbound slot num{node.index}")
    left = _evaluate(node.left)
    right = _evaluate(node.right)
    if node.op == ADD:
        return left + right
    if node.op == SUB:
        return left - right
    if node.op == MUL:
        return left * right
    if right == 0:
        raise EvaluationError("division by zero")
    return left / right


def intermediate_values(expr: Expression) -> list[Fraction]:
    """Values of every operator node, root last."""
    out: list[Fraction] = []

    def walk(node: Node) -> Fraction:
        if isinstance(node, Literal):
            return node.number.value
        if isinstance(node, Slot):
            raise EvaluationError(f"unbound slot num{node.index}")
        left = walk(node.left)
        right = walk(node.right)
        if node.op == DIV and right == 0:
            raise EvaluationError("division by zero")
        value = {
            ADD: left + right,
            SUB: left - right,
            MUL: left * right,
            DIV: left / right if right else None,
        }[node.op]
        out.append(value)
        return value

    walk(expr.root)
    return out


def canonicalize(expr: Expression) -> Expression:
    """Sort operands of commutative nodes by (value, serialized text); idempotent."""
    if not expr.is_bound():
        raise ExpressionError("canonicalize requires a fully bound expression")
    return Expression(_canon(expr.root))


def _canon(node: Node) -> Node:
    if not isinstance(node, BinOp):
        return node
    left = _canon(node.left)
    right = _canon(node.right)
    if node.op in COMMUTATIVE:
        lk = (_evaluate(left), _serialize(left))
        rk = (_evaluate(right), _serialize(right))
        if rk < lk:
            left, right = right, left
    return BinOp(node.op, left, right)


def canonical_key(expr: Expression) -> str:
    return serialize(canonicalize(expr))


def commuted_variants(expr: Expression) -> list[Expression]:
    """Distinct expressions reachable by swapping commutative operand pairs.

    Excludes any variant that serializes identically to the input, so a no-op
    swap such as 4+4 contributes nothing.
    """
    original = serialize(expr)
    seen: dict[str, Expression] = {}
    for root in _variants(expr.root):
        candidate = Expression(root)
        key = serialize(candidate)
        if key != original and key not in seen:
            seen[key] = candidate
    return list(seen.values())


def _variants(node: Node) -> Iterator[Node]:
    if not isinstance(node, BinOp):
        yield node
        return
    for left in _variants(node.left):
        for right in _variants(node.right):
            yield BinOp(node.op, left, right)
            if node.op in COMMUTATIVE:
                yield BinOp(node.op, right, left)


@dataclass(frozen=True)
class OperationSignature:
    shape: str
    hop_count: int

    def __str__(self) -> str:
        return self.shape


def _shape_text(node: Node, letters: Iterator[str]) -> str:
    if not isinstance(node, BinOp):
        return next(letters)
    left = _shape_text(node.left, letters)
    right = _shape_text(node.right, letters)
    if isinstance(node.left, BinOp) and _PRECEDENCE[node.left.op] < _PRECEDENCE[node.op]:
        left = f"({left})"
    if isinstance(node.right, BinOp) and _PRECEDENCE[node.right.op] <= _PRECEDENCE[node.op]:
        right = f"({right})"
    return f"{left}{node.op}{right}"


def _positional_shape(node: Node) -> str:
    return _shape_text(node, iter("abcdefgh"))


def op_signature(expr: Expression) -> OperationSignature:
    """Match the expression against the shape taxonomy, modulo commutativity.

    The positional shape (leaves relabeled a, b, c in reading order) is tried
    first; if it is not a taxonomy member, commuted rearrangements are tried so
    that e.g. num3+(num1*num2) classifies as a*b+c.
    """
    hops = expr.hops
    if hops > MAX_HOPS:
        raise SignatureError(f"{hops}-hop expression outside the supported taxonomy")
    direct = _positional_shape(expr.root)
    if direct in TEMPLATE_SHAPES:
        return OperationSignature(direct, hops)
    candidates = sorted({_positional_shape(root) for root in _variants(expr.root)})
    for shape in candidates:
        if shape in TEMPLATE_SHAPES:
            return OperationSignature(shape, hops)
    raise SignatureError(f"shape {direct!r} outside the supported taxonomy")
