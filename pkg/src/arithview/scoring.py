"""Answer extraction and multi-view scoring of model prediction files.

Correctness is exact rational equality of the parsed prediction against the
gold value, so "1,000", "1000" and "1000.0" all count.  The magnitude
diagnostic flags wrong answers whose digit sequence matches the gold answer
after stripping leading and trailing zeros (e.g. 0.18 against gold 1.8).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .aspects import Instance
from .dependency import ClassCounts, DependencyClass, TrainingIndex, breakdown, classify
from .exact import to_decimal_string
from .expressions import Expression, op_signature
from .numbers import NumberFormatError, NumberLiteral, parse_number, words_to_int

STRATEGIES = ("first_number", "last_number", "whole_output")

# a maximal numeric token: optional sign, one grouping convention at most,
# at most one decimal point ("1,234.5", "1 234", "-42", ".32")
_NUMBER_TOKEN = re.compile(
    r"""[+-]?(?:
        \d{1,3}(?:,\d{3})+(?:\.\d+)?   # comma grouped
      | \d{1,3}(?:\ \d{3})+(?:\.\d+)?  # space grouped
      | \d+(?:\.\d+)?                  # plain
      | \.\d+                          # bare fraction
    )""",
    re.VERBOSE,
)


class ScoringError(ValueError):
    pass


def extract_answer(
    output: str,
    strategy: str = "last_number",
    parse_words: bool = False,
) -> NumberLiteral | None:
    """First/last maximal numeric token of the output, or None when absent.

    ``whole_output`` parses the entire stripped output as one numeral.  With
    ``parse_words`` enabled, an output containing no digit-form number is
    retried as an integer cardinal ("five").
    """
    if strategy not in STRATEGIES:
        raise ScoringError(f"unknown extraction strategy {strategy!r}")
    if strategy == "whole_output":
        try:
            return parse_number(output)
        except NumberFormatError:
            pass
    else:
        matches = _NUMBER_TOKEN.findall(output)
        if matches:
            token = matches[0] if strategy == "first_number" else matches[-1]
            try:
                return parse_number(token)
            except NumberFormatError:
                return None
    if parse_words:
        try:
            return NumberLiteral(digits=str(words_to_int(output)), style="plain")
        except NumberFormatError:
            return None
    return None


def is_correct(pred: NumberLiteral | None, gold: NumberLiteral) -> bool:
    """Exact value equality, independent of surface formatting."""
    return pred is not None and pred.value == gold.value


def diagnose_magnitude(pred: NumberLiteral | None, gold: NumberLiteral) -> bool:
    """True when the prediction has the right digits at the wrong magnitude."""
    if pred is None or pred.value == gold.value:
        return False

    def significant(lit: NumberLiteral) -> str:
        digits = to_decimal_string(abs(lit.value)).replace(".", "")
        stripped = digits.strip("0")
        return stripped or "0"

    return significant(pred) == significant(gold)


@dataclass
class GroupScore:
    total: int = 0
    correct: int = 0
    magnitude_errors: int = 0

    @property
    def accuracy_pct(self) -> float | None:
        return 100.0 * self.correct / self.total if self.total else None

    @property
    def magnitude_error_pct(self) -> float | None:
        return 100.0 * self.magnitude_errors / self.total if self.total else None


@dataclass
class ScoreReport:
    strategy: str
    overall: GroupScore
    per_aspect: dict[str, GroupScore]
    per_signature: dict[str, GroupScore]
    per_class: dict[DependencyClass, ClassCounts] | None = None
    missing_extractions: int = 0

    def aspect_rows(self) -> list[dict]:
        rows = []
        for aspect, score in sorted(self.per_aspect.items()):
            rows.append(
                {
                    "aspect": aspect,
                    "total": score.total,
                    "correct": score.correct,
                    "accuracy_pct": score.accuracy_pct,
                    "magnitude_errors": score.magnitude_errors,
                    "magnitude_error_pct": score.magnitude_error_pct,
                }
            )
        return rows

    def signature_rows(self) -> list[dict]:
        return [
            {
                "signature": shape,
                "total": score.total,
                "correct": score.correct,
                "accuracy_pct": score.accuracy_pct,
            }
            for shape, score in sorted(self.per_signature.items())
        ]

    def class_rows(self) -> list[dict]:
        if self.per_class is None:
            return []
        return [
            {
                "class": cls.label,
                "total": counts.total,
                "correct": counts.correct,
                "incorrect": counts.incorrect,
                "correct_ratio": counts.correct_ratio,
            }
            for cls, counts in self.per_class.items()
        ]


def score_predictions(
    predictions: Mapping[str, str],
    suite: Sequence[Instance],
    strategy: str = "last_number",
    training_expressions: Sequence[Expression] | None = None,
    parse_words: bool = False,
) -> ScoreReport:
    """Score a prediction map {instance id -> raw output} against a suite.

    Prediction ids must cover the suite; joining is by id, so file order never
    matters.  When training expressions are supplied, a per-dependency-class
    breakdown is included.
    """
    id_counts = Counter(inst.id for inst in suite)
    duplicates = sorted(i for i, c in id_counts.items() if c > 1)
    if duplicates:
        raise ScoringError(f"duplicate suite ids: {duplicates[:5]}")
    missing = [inst.id for inst in suite if inst.id not in predictions]
    if missing:
        raise ScoringError(f"missing prediction for id {missing[0]!r} ({len(missing)} total)")

    overall = GroupScore()
    per_aspect: dict[str, GroupScore] = {}
    per_signature: dict[str, GroupScore] = {}
    flags: list[bool] = []
    missing_extractions = 0
    for inst in suite:
        gold = NumberLiteral.from_value(inst.answer)
        pred = extract_answer(predictions[inst.id], strategy, parse_words=parse_words)
        if pred is None:
            missing_extractions += 1
        ok = is_correct(pred, gold)
        magnitude = diagnose_magnitude(pred, gold)
        flags.append(ok)
        shape = op_signature(inst.expression).shape
        for score in (overall, per_aspect.setdefault(inst.aspect, GroupScore()),
                      per_signature.setdefault(shape, GroupScore())):
            score.total += 1
            score.correct += ok
            score.magnitude_errors += magnitude

    per_class = None
    if training_expressions is not None:
        index = TrainingIndex(training_expressions)
        classes = [classify(inst.bound_expression(), index) for inst in suite]
        per_class = breakdown(classes, flags)

    return ScoreReport(
        strategy=strategy,
        overall=overall,
        per_aspect=per_aspect,
        per_signature=per_signature,
        per_class=per_class,
        missing_extractions=missing_extractions,
    )


def render_class_chart(report: ScoreReport, path: str) -> None:
    """Stacked correct/incorrect bars per dependency class (needs matplotlib)."""
    if report.per_class is None:
        raise ScoringError("report has no dependency-class breakdown")
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as err:  # pragma: no cover
        raise ScoringError("chart rendering requires the 'charts' extra (matplotlib)") from err
    labels = [cls.label for cls in report.per_class]
    correct = [c.correct for c in report.per_class.values()]
    incorrect = [c.incorrect for c in report.per_class.values()]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(labels, correct, label="correct", color="tab:orange")
    ax.bar(labels, incorrect, bottom=correct, label="incorrect", color="tab:blue")
    ax.set_ylabel("instances")
    ax.set_title("training dependency vs correctness")
    ax.legend()
    fig.autofmt_xdate(rotation=30)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
