import random
from fractions import Fraction

import pytest

from arithview.aspects import (
    Aspect,
    AspectSkip,
    CorpusError,
    default_registry,
    expand_instance,
    expand_suite,
    validate_seed_corpus,
)
from arithview.expressions import BinOp, Expression, Literal, op_signature
from arithview.numbers import NumberLiteral

from .helpers import make_seed


def _aspect(name: str) -> Aspect:
    return next(a for a in default_registry() if a.name == name)


@pytest.fixture
def sub_seed():
    # two-digit subtraction in the style of the released annotations
    return make_seed(
        "t1",
        "num1 swallows sat on the wire. num2 flew off. How many swallows are still on the wire?",
        "num1-num2",
        ["89", "30"],
    )


@pytest.fixture
def add_seed():
    return make_seed(
        "t2",
        "A crate holds num1 bolts and num2 washers. How many parts are in the crate?",
        "num1+num2",
        ["12", "34"],
    )


class TestRegistry:
    def test_default_shape(self):
        registry = default_registry()
        names = [a.name for a in registry]
        assert len(names) == len(set(names)) == 19
        assert sum(a.category != "original" for a in registry) == 18
        by_category = {}
        for aspect in registry:
            by_category[aspect.category] = by_category.get(aspect.category, 0) + 1
        assert by_category == {
            "original": 1,
            "same_number_representation": 3,
            "magnitude_variant": 6,
            "digit_grouping": 2,
            "range_of_numbers": 7,
        }

    def test_bad_category_rejected(self):
        with pytest.raises(ValueError):
            Aspect("x", "nope")


class TestExpandInstance:
    def test_range_aspect_recomputes_answer(self, sub_seed):
        inst = expand_instance(sub_seed, _aspect("2_digit"), random.Random(0))
        assert all(10 <= p.literal.value <= 99 for p in inst.numbers)
        values = {p.slot: p.literal for p in inst.numbers}
        assert inst.answer == values[1].value - values[2].value
        assert inst.answer >= 0

    def test_words(self, sub_seed):
        inst = expand_instance(sub_seed, _aspect("words"), random.Random(0))
        assert "eighty-nine" in inst.question
        assert "thirty" in inst.question
        assert inst.answer == sub_seed.answer

    def test_trailing_zero(self, sub_seed):
        inst = expand_instance(sub_seed, _aspect("trailing_zero"), random.Random(0))
        assert "89.0" in inst.question and "30.0" in inst.question
        assert inst.answer == sub_seed.answer

    def test_no_leading_zero(self, sub_seed):
        inst = expand_instance(sub_seed, _aspect("no_leading_zero"), random.Random(0))
        assert ".89" in inst.question and ".30" in inst.question
        assert "0.89" not in inst.question
        assert inst.answer == Fraction(59, 100)

    def test_decimal_fraction_shares_one_shift(self):
        seed = make_seed(
            "t3",
            "Of num1 pumpkins, num2 are kept and the rest go equally to num3 stalls. How many pumpkins does each stall get?",
            "(num1-num2)/num3",
            ["183", "95", "11"],
        )
        inst = expand_instance(seed, _aspect("decimal_fraction"), random.Random(0))
        assert "0.183" in inst.question and "0.095" in inst.question and "0.011" in inst.question
        assert inst.answer == seed.answer  # a common shift cancels in the quotient

    def test_magnitude_preserves_digits(self, add_seed):
        for name, factor in (("times_0_1", Fraction(1, 10)), ("times_100", 100)):
            inst = expand_instance(add_seed, _aspect(name), random.Random(0))
            for placed, original in zip(inst.numbers, add_seed.numbers):
                assert placed.literal.digits.rstrip("0") == original.literal.digits.rstrip("0") or \
                    placed.literal.digits.startswith(original.literal.digits)
                assert placed.literal.value == original.literal.value * factor

    def test_commuted_swaps_text(self, add_seed):
        inst = expand_instance(add_seed, _aspect("commuted"), random.Random(0))
        assert "holds 34 bolts and 12 washers" in inst.question
        assert inst.answer == add_seed.answer

    def test_commuted_skips_subtraction(self, sub_seed):
        with pytest.raises(AspectSkip):
            expand_instance(sub_seed, _aspect("commuted"), random.Random(0))

    def test_commuted_skips_noop_swap(self):
        seed = make_seed("t4", "num1 cats and num2 dogs. How many pets?", "num1+num2", ["4", "4"])
        with pytest.raises(AspectSkip):
            expand_instance(seed, _aspect("commuted"), random.Random(0))

    def test_grouping_resamples_large(self, add_seed):
        inst = expand_instance(add_seed, _aspect("comma_grouped"), random.Random(0))
        for placed in inst.numbers:
            assert placed.literal.value >= 10_000
            assert "," in placed.surface

    def test_signature_never_changes(self, sub_seed, add_seed):
        for seed in (sub_seed, add_seed):
            want = op_signature(seed.expression)
            for aspect in default_registry():
                try:
                    inst = expand_instance(seed, aspect, random.Random(1))
                except AspectSkip:
                    continue
                assert op_signature(inst.expression) == want

    def test_spans_track_surfaces(self, sub_seed):
        for aspect in default_registry():
            try:
                inst = expand_instance(sub_seed, aspect, random.Random(2))
            except AspectSkip:
                continue
            for placed in inst.numbers:
                assert inst.question[placed.start:placed.end] == placed.surface


class TestExpandSuite:
    def test_empty(self):
        suite = expand_suite([], seed=0)
        assert suite.instances == [] and suite.skips == []

    def test_counts_and_determinism(self, sub_seed, add_seed):
        suite1 = expand_suite([sub_seed, add_seed], seed=7)
        suite2 = expand_suite([sub_seed, add_seed], seed=7)
        assert [i.question for i in suite1.instances] == [i.question for i in suite2.instances]
        assert suite1.counts["original"] == 2
        assert suite1.counts["commuted"] == 1  # subtraction seed skips
        different = expand_suite([sub_seed, add_seed], seed=8)
        assert [i.question for i in different.instances] != [i.question for i in suite1.instances]

    def test_resample_identical_to_seed_retries(self):
        # the seed numbers already satisfy the 2_digit range, so an identical
        # redraw must be retried rather than skipped
        seed = make_seed("r1", "num1 figs are split between num2 bowls. How many figs per bowl?", "num1/num2", ["84", "4"])
        for run_seed in range(40):
            suite = expand_suite([seed], [_aspect("2_digit")], seed=run_seed)
            assert suite.counts["2_digit"] == 1, run_seed

    def test_duplicate_questions_dropped(self, add_seed):
        twin = make_seed("t9", "A crate holds num1 bolts and num2 washers. How many parts are in the crate?", "num1+num2", ["12", "34"])
        suite = expand_suite([add_seed, twin], [_aspect("words")], seed=0)
        assert suite.counts["words"] == 1
        assert any(s.reason == "duplicate question text" for s in suite.skips)

    def test_output_order_canonical(self, sub_seed, add_seed):
        suite = expand_suite([add_seed, sub_seed], seed=0)
        keys = [(i.seed_id, i.aspect) for i in suite.instances]
        assert keys == sorted(keys)


class TestValidateCorpus:
    def test_reports_distribution(self, sub_seed, add_seed):
        report = validate_seed_corpus([sub_seed, add_seed])
        assert report.total == 2
        assert report.signature_counts == {"a+b": 1, "a-b": 1}
        assert report.hop_counts == {1: 2}

    def test_alignment_mismatch(self, add_seed):
        broken = make_seed("b1", "num1 plus num2?", "num1+num2", ["1", "2"])
        broken = type(broken)(
            id=broken.id,
            question=broken.question,
            numbers=broken.numbers[:1],
            expression=broken.expression,
            answer=broken.answer,
        )
        with pytest.raises(CorpusError):
            validate_seed_corpus([broken])

    def test_answer_mismatch(self):
        seed = make_seed("b2", "num1 plus num2?", "num1+num2", ["1", "2"])
        seed = type(seed)(
            id=seed.id,
            question=seed.question,
            numbers=seed.numbers,
            expression=seed.expression,
            answer=seed.answer + 1,
        )
        with pytest.raises(CorpusError):
            validate_seed_corpus([seed])

    def test_three_hop_rejected(self):
        lit = lambda v: Literal(NumberLiteral(v))
        root = BinOp("+", BinOp("+", lit("1"), lit("2")), BinOp("+", lit("3"), lit("4")))
        seed = make_seed("b3", "num1 and num2?", "num1+num2", ["1", "2"])
        seed = type(seed)(
            id=seed.id,
            question=seed.question,
            numbers=(),
            expression=Expression(root),
            answer=Fraction(10),
        )
        with pytest.raises(CorpusError):
            validate_seed_corpus([seed])

    def test_duplicate_ids(self):
        a = make_seed("dup", "num1 plus num2?", "num1+num2", ["1", "2"])
        b = make_seed("dup", "num1 minus num2?", "num1-num2", ["5", "2"])
        with pytest.raises(CorpusError):
            validate_seed_corpus([a, b])
