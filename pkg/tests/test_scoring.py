import random
from fractions import Fraction

import pytest

from arithview.aspects import default_registry, expand_suite
from arithview.numbers import parse_number
from arithview.records import instance_to_record
from arithview.scoring import (
    ScoringError,
    diagnose_magnitude,
    extract_answer,
    is_correct,
    score_predictions,
)

from .helpers import make_seed


def _suite(n_seeds=4):
    seeds = []
    specs = [("7", "5"), ("9", "4"), ("12", "8"), ("30", "11"), ("21", "2"), ("44", "13")]
    for i in range(n_seeds):
        a, b = specs[i % len(specs)]
        seeds.append(
            make_seed(
                f"s{i}",
                f"Crate {i} holds num1 large and num2 small parts. How many parts are in crate {i}?",
                "num1+num2",
                [a, b],
            )
        )
    registry = [a for a in default_registry() if a.name in ("original", "words", "times_10", "2_digit")]
    return expand_suite(seeds, registry, seed=0).instances


class TestExtract:
    def test_last_number(self):
        assert extract_answer("The answer is 42.", "last_number").value == 42

    def test_first_number(self):
        assert extract_answer("3 plus 2: answer 5", "first_number").value == 3
        assert extract_answer("3 plus 2: answer 5", "last_number").value == 5

    def test_no_number(self):
        assert extract_answer("no idea", "last_number") is None

    def test_grouped_and_decimal_tokens(self):
        assert extract_answer("total 1,234.5 exactly", "last_number").value == Fraction(12345, 10)
        assert extract_answer("roughly 1 234 567 units", "first_number").value == 1_234_567
        assert extract_answer("it is .32", "last_number").value == Fraction(32, 100)
        assert extract_answer("drops to -3.4 degrees", "last_number").value == Fraction(-34, 10)

    def test_whole_output(self):
        assert extract_answer(" 0.18 ", "whole_output").value == Fraction(18, 100)
        assert extract_answer("answer: 0.18", "whole_output") is None

    def test_words_flag(self):
        assert extract_answer("five", "last_number") is None
        assert extract_answer("five", "last_number", parse_words=True).value == 5
        assert extract_answer("no clue", "last_number", parse_words=True) is None

    def test_unknown_strategy(self):
        with pytest.raises(ScoringError):
            extract_answer("42", "middle_number")


class TestCorrectness:
    def test_formatting_insensitive(self):
        gold = parse_number("1000")
        assert is_correct(parse_number("1,000"), gold)
        assert is_correct(parse_number("1000.0"), gold)
        assert is_correct(parse_number("1 000"), gold)

    def test_wrong_magnitude_not_correct(self):
        assert not is_correct(parse_number("0.18"), parse_number("1.8"))

    def test_none_prediction(self):
        assert not is_correct(None, parse_number("3"))


class TestMagnitudeDiagnostic:
    def test_reference_case(self):
        assert diagnose_magnitude(parse_number("0.18"), parse_number("1.8"))

    def test_equal_values_not_flagged(self):
        assert not diagnose_magnitude(parse_number("1.8"), parse_number("1.8"))
        assert not diagnose_magnitude(parse_number("1.80"), parse_number("1.8"))

    def test_different_digits_not_flagged(self):
        assert not diagnose_magnitude(parse_number("19"), parse_number("23"))

    def test_trailing_zero_shift(self):
        assert diagnose_magnitude(parse_number("100"), parse_number("10"))

    def test_zero_handling(self):
        assert not diagnose_magnitude(parse_number("0"), parse_number("0.0"))
        assert not diagnose_magnitude(None, parse_number("5"))


class TestScorePredictions:
    def test_perfect_predictions(self):
        suite = _suite()
        predictions = {inst.id: instance_to_record(inst)["answer_surface"] for inst in suite}
        report = score_predictions(predictions, suite)
        assert report.overall.accuracy_pct == 100.0
        for score in report.per_aspect.values():
            assert score.accuracy_pct == 100.0

    def test_order_independence(self):
        suite = _suite()
        predictions = {inst.id: f"the answer is {inst.answer}" for inst in suite}
        shuffled = dict(sorted(predictions.items(), key=lambda kv: kv[0], reverse=True))
        a = score_predictions(predictions, suite)
        b = score_predictions(shuffled, list(reversed(suite)))
        assert a.overall.correct == b.overall.correct

    def test_missing_id_named(self):
        suite = _suite()
        predictions = {inst.id: "1" for inst in suite[1:]}
        with pytest.raises(ScoringError) as err:
            score_predictions(predictions, suite)
        assert suite[0].id in str(err.value)

    def test_duplicate_suite_ids(self):
        suite = _suite()
        with pytest.raises(ScoringError):
            score_predictions({inst.id: "1" for inst in suite}, suite + suite[:1])

    def test_totals_match_suite(self):
        suite = _suite()
        predictions = {inst.id: "0" for inst in suite}
        report = score_predictions(predictions, suite)
        by_aspect = {}
        for inst in suite:
            by_aspect[inst.aspect] = by_aspect.get(inst.aspect, 0) + 1
        assert {k: v.total for k, v in report.per_aspect.items()} == by_aspect

    def test_magnitude_disjoint_from_correct(self):
        suite = _suite()
        rng = random.Random(0)
        predictions = {}
        for inst in suite:
            roll = rng.random()
            if roll < 0.4:
                predictions[inst.id] = str(inst.answer)
            elif roll < 0.7:
                predictions[inst.id] = str(inst.answer * 10)
            else:
                predictions[inst.id] = "17"
        report = score_predictions(predictions, suite)
        for score in report.per_aspect.values():
            assert score.correct + score.magnitude_errors <= score.total

    def test_class_breakdown_present_with_training(self):
        suite = _suite()
        predictions = {inst.id: str(inst.answer) for inst in suite}
        training = [inst.bound_expression() for inst in suite[:2]]
        report = score_predictions(predictions, suite, training_expressions=training)
        assert report.per_class is not None
        assert sum(c.total for c in report.per_class.values()) == len(suite)

    def test_words_predictions_flag(self):
        suite = _suite(1)
        inst = next(i for i in suite if i.aspect == "original")
        from arithview.numbers import to_words

        text = to_words(int(inst.answer))
        assert not score_predictions({i.id: text for i in suite}, suite).overall.correct
        scored = score_predictions({i.id: text for i in suite}, suite, parse_words=True)
        assert scored.per_aspect["original"].correct == 1
