"""Classification of test expressions by training-data overlap.

A test expression is compared against each training expression and the best
match wins: Exact (same canonical form modulo commutativity), All Numbers
(same number multiset, different operations), Number & Operation (shares at
least one number and one operation with a single training expression), One
Number, One Operation, else Unseen.  Number identity is exact rational value,
so 3, 3.0 and "three" all match; operation identity is the operator symbol.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

from .expressions import Expression, canonical_key


class DependencyClass(IntEnum):
    UNSEEN = 0
    ONE_OPERATION = 1
    ONE_NUMBER = 2
    NUMBER_AND_OPERATION = 3
    ALL_NUMBERS = 4
    EXACT = 5

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    DependencyClass.UNSEEN: "Unseen",
    DependencyClass.ONE_OPERATION: "One Operation",
    DependencyClass.ONE_NUMBER: "One Number",
    DependencyClass.NUMBER_AND_OPERATION: "Number & Operation",
    DependencyClass.ALL_NUMBERS: "All Numbers",
    DependencyClass.EXACT: "Exact",
}


def _number_multiset(expr: Expression) -> tuple[tuple[Fraction, int], ...]:
    counts = Counter(leaf.number.value for leaf in expr.leaves())
    return tuple(sorted(counts.items()))


def _op_multiset(expr: Expression) -> tuple[str, ...]:
    return tuple(sorted(expr.operators()))


def match_level(test: Expression, train: Expression) -> DependencyClass:
    """Dependency class of one test expression against one training expression."""
    if canonical_key(test) == canonical_key(train):
        return DependencyClass.EXACT
    test_numbers = _number_multiset(test)
    train_numbers = _number_multiset(train)
    test_ops = _op_multiset(test)
    train_ops = _op_multiset(train)
    shared_number = bool({v for v, _ in test_numbers} & {v for v, _ in train_numbers})
    shared_op = bool(set(test_ops) & set(train_ops))
    if test_numbers == train_numbers and test_ops != train_ops:
        return DependencyClass.ALL_NUMBERS
    if shared_number and shared_op:
        return DependencyClass.NUMBER_AND_OPERATION
    if shared_number:
        return DependencyClass.ONE_NUMBER
    if shared_op:
        return DependencyClass.ONE_OPERATION
    return DependencyClass.UNSEEN


class TrainingIndex:
    """Immutable summaries of a training corpus for fast best-match queries."""

    def __init__(self, expressions: Iterable[Expression]):
        self.canonical: set[str] = set()
        self.numbers_seen: set[Fraction] = set()
        self.ops_seen: set[str] = set()
        self.number_multisets: dict[tuple, set[tuple[str, ...]]] = {}
        self.co_ops: dict[Fraction, set[str]] = {}
        self.size = 0
        for expr in expressions:
            self.size += 1
            self.canonical.add(canonical_key(expr))
            numbers = _number_multiset(expr)
            ops = _op_multiset(expr)
            self.number_multisets.setdefault(numbers, set()).add(ops)
            values = {v for v, _ in numbers}
            self.numbers_seen.update(values)
            self.ops_seen.update(ops)
            for value in values:
                self.co_ops.setdefault(value, set()).update(ops)


def classify(
    test: Expression,
    index: TrainingIndex,
    aggregate: str = "pairwise",
) -> DependencyClass:
    """Best dependency class of ``test`` over the whole training corpus.

    ``aggregate="pairwise"`` (default) is the maximum of per-expression match
    levels.  ``aggregate="union"`` instead pools numbers and operations across
    the corpus before applying the class conditions.
    """
    if aggregate not in ("pairwise", "union"):
        raise ValueError(f"unknown aggregation {aggregate!r}")
    if canonical_key(test) in index.canonical:
        return DependencyClass.EXACT
    test_numbers = _number_multiset(test)
    test_ops = _op_multiset(test)
    test_values = {v for v, _ in test_numbers}

    if aggregate == "union":
        if test_values and test_values <= index.numbers_seen:
            return DependencyClass.ALL_NUMBERS
        shared_number = bool(test_values & index.numbers_seen)
        shared_op = bool(set(test_ops) & index.ops_seen)
        if shared_number and shared_op:
            return DependencyClass.NUMBER_AND_OPERATION
        if shared_number:
            return DependencyClass.ONE_NUMBER
        if shared_op:
            return DependencyClass.ONE_OPERATION
        return DependencyClass.UNSEEN

    if any(ops != test_ops for ops in index.number_multisets.get(test_numbers, ())):
        return DependencyClass.ALL_NUMBERS
    if any(
        op in index.co_ops.get(value, ())
        for value in test_values
        for op in set(test_ops)
    ):
        return DependencyClass.NUMBER_AND_OPERATION
    if test_values & index.numbers_seen:
        return DependencyClass.ONE_NUMBER
    if set(test_ops) & index.ops_seen:
        return DependencyClass.ONE_OPERATION
    return DependencyClass.UNSEEN


@dataclass
class ClassCounts:
    total: int = 0
    correct: int = 0

    @property
    def incorrect(self) -> int:
        return self.total - self.correct

    @property
    def correct_ratio(self) -> float | None:
        return self.correct / self.total if self.total else None


def breakdown(
    classes: Sequence[DependencyClass],
    correctness: Sequence[bool],
) -> dict[DependencyClass, ClassCounts]:
    """Join dependency classes with correctness flags, one flag per test."""
    if len(classes) != len(correctness):
        raise ValueError(
            f"{len(classes)} classes but {len(correctness)} correctness flags"
        )
    table = {cls: ClassCounts() for cls in sorted(DependencyClass, reverse=True)}
    for cls, ok in zip(classes, correctness):
        table[cls].total += 1
        table[cls].correct += bool(ok)
    return table
