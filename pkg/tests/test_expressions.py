import random
from fractions import Fraction

import pytest

from arithview.expressions import (
    BinOp,
    EVAL_SHAPES,
    EXPERT_SHAPES,
    EvaluationError,
    Literal,
    ParseError,
    SignatureError,
    Slot,
    TEMPLATE_SHAPES,
    bind,
    canonicalize,
    commuted_variants,
    evaluate,
    op_signature,
    parse_expression,
    serialize,
)
from arithview.numbers import NumberLiteral

from .helpers import as_fraction, oracle_eval, random_bound_expression


class TestParse:
    def test_structure(self):
        expr = parse_expression("5*(2+3)")
        root = expr.root
        assert isinstance(root, BinOp) and root.op == "*"
        assert isinstance(root.left, Literal) and root.left.number.value == 5
        assert isinstance(root.right, BinOp) and root.right.op == "+"

    def test_slots_preserved(self):
        expr = parse_expression("( num2 / num1 )")
        root = expr.root
        assert isinstance(root.left, Slot) and root.left.index == 2
        assert isinstance(root.right, Slot) and root.right.index == 1

    def test_unicode_glyphs(self):
        assert evaluate(parse_expression("5×(2+3)")) == 25
        assert evaluate(parse_expression("8÷2")) == 4
        assert evaluate(parse_expression("9−5")) == 4

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_expression("")
        with pytest.raises(ParseError):
            parse_expression("   ")

    def test_hop_limit(self):
        with pytest.raises(ParseError):
            parse_expression("1+2+3+4")
        deep = parse_expression("1+2+3+4", max_hops=None)
        assert deep.hops == 3

    @pytest.mark.parametrize("text", ["5*", "(2+3", "num0", "foo+1", "2++3", "5..2", "num1 num2"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_expression(text)

    def test_decimals_and_signs(self):
        assert evaluate(parse_expression("1.2*3.4")) == Fraction(408, 100)
        assert evaluate(parse_expression("-5+2")) == -3


class TestEvaluate:
    def test_multi_hop_reference_value(self):
        # independent oracle pins the value of the deep reference expression
        expr = parse_expression("((6*8)-(3*6))/(6+4)", max_hops=None)
        assert as_fraction(oracle_eval(expr)) == 3
        assert evaluate(expr) == 3

    def test_one_hop(self):
        assert evaluate(parse_expression("5*(2+3)")) == 25

    def test_binding(self):
        expr = parse_expression("num1+num2")
        assert evaluate(expr, [NumberLiteral("7"), NumberLiteral("5")]) == 12

    def test_zero_divisor(self):
        with pytest.raises(EvaluationError):
            evaluate(parse_expression("5/0"))
        with pytest.raises(EvaluationError):
            evaluate(parse_expression("5/(2-2)"))

    def test_unbound_slot(self):
        with pytest.raises(EvaluationError):
            evaluate(parse_expression("num1+num2"), {1: NumberLiteral("3")})

    def test_style_independent(self):
        padded = NumberLiteral("30", 1)  # written "3.0"
        plain = NumberLiteral("3")
        expr = parse_expression("num1*2")
        assert evaluate(expr, {1: padded}) == evaluate(expr, {1: plain})


class TestCanonicalize:
    def test_commuted_forms_equal(self):
        a = canonicalize(parse_expression("(3+2)*5"))
        b = canonicalize(parse_expression("5*(2+3)"))
        assert serialize(a) == serialize(b)

    def test_subtraction_not_commutative(self):
        a = canonicalize(parse_expression("9-5"))
        b = canonicalize(parse_expression("5-9"))
        assert serialize(a) != serialize(b)

    def test_idempotent_and_value_preserving(self):
        rng = random.Random(5)
        for _ in range(300):
            shape = rng.choice(TEMPLATE_SHAPES)
            expr, bindings = random_bound_expression(shape, rng)
            bound = bind(expr, bindings)
            canon = canonicalize(bound)
            assert serialize(canonicalize(canon)) == serialize(canon)
            assert evaluate(canon) == evaluate(bound)

    def test_requires_bound(self):
        with pytest.raises(Exception):
            canonicalize(parse_expression("num1+num2"))


class TestSignature:
    def test_two_hop(self):
        sig = op_signature(parse_expression("(num1+num2)-num3"))
        assert (sig.shape, sig.hop_count) == ("a+b-c", 2)

    def test_one_hop_positional(self):
        sig = op_signature(parse_expression("num2/num1"))
        assert (sig.shape, sig.hop_count) == ("a/b", 1)

    def test_three_hops_rejected_at_parse(self):
        with pytest.raises(ParseError):
            op_signature(parse_expression("num1+num2+num3+num4"))

    def test_rebinding_invariant(self):
        expr = parse_expression("num1*(num2+num3)")
        sig = op_signature(expr)
        bound = bind(expr, [NumberLiteral("5"), NumberLiteral("2"), NumberLiteral("3")])
        assert op_signature(bound) == sig

    def test_commuted_mirror_normalizes(self):
        assert op_signature(parse_expression("(3+2)*5")).shape == "a*(b+c)"
        assert op_signature(parse_expression("num3+(num1*num2)")).shape == "a*b+c"
        assert op_signature(parse_expression("1+(2+3)")).shape == "a+b+c"

    def test_all_taxonomy_shapes_recognized(self):
        rng = random.Random(9)
        for shape in TEMPLATE_SHAPES:
            expr, _ = random_bound_expression(shape, rng)
            assert op_signature(expr).shape == shape

    def test_outside_taxonomy(self):
        with pytest.raises(SignatureError):
            op_signature(parse_expression("1-(2-3)"))

    def test_shape_tables(self):
        assert len(EVAL_SHAPES) == 9
        assert len(TEMPLATE_SHAPES) == 20
        assert len(EXPERT_SHAPES) == 11
        assert set(EVAL_SHAPES) <= set(TEMPLATE_SHAPES)
        assert set(EXPERT_SHAPES) <= set(TEMPLATE_SHAPES)


class TestCommutedVariants:
    def test_enumerates_all_swaps(self):
        variants = {serialize(v) for v in commuted_variants(parse_expression("5*(2+3)"))}
        assert variants == {"((2+3)*5)", "(5*(3+2))", "((3+2)*5)"}

    def test_no_commutative_node(self):
        assert commuted_variants(parse_expression("9-5")) == []

    def test_noop_swap_excluded(self):
        assert commuted_variants(parse_expression("4+4")) == []

    def test_variants_preserve_value(self):
        rng = random.Random(13)
        for _ in range(200):
            shape = rng.choice(TEMPLATE_SHAPES)
            expr, bindings = random_bound_expression(shape, rng)
            bound = bind(expr, bindings)
            value = evaluate(bound)
            for variant in commuted_variants(bound):
                assert evaluate(variant) == value


class TestOracleAgreement:
    def test_random_expressions_match_oracle(self):
        rng = random.Random(2024)
        for i in range(2_000):
            shape = TEMPLATE_SHAPES[i % len(TEMPLATE_SHAPES)]
            expr, bindings = random_bound_expression(shape, rng)
            assert evaluate(expr, bindings) == as_fraction(oracle_eval(expr, bindings))
