"""Expansion of annotated seed questions into per-aspect evaluation views.

Each aspect rewrites only the number surfaces of a seed question (the language
is held fixed), either by re-rendering the same values, shifting magnitudes
while keeping the digit sequence, or resampling numbers from a target range
and recomputing the gold answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import within_digit_limit, is_terminating
from .expressions import (
    BinOp,
    COMMUTATIVE,
    Expression,
    ExpressionError,
    OperationSignature,
    Slot,
    bind,
    evaluate,
    op_signature,
)
from .numbers import NumberFormatError, NumberLiteral, NumberTypeSpec, render, shift_magnitude
from .sampling import SamplingError, sample_bindings

CATEGORIES = (
    "original",
    "same_number_representation",
    "magnitude_variant",
    "digit_grouping",
    "range_of_numbers",
)

# Digit grouping reuses large integers but keeps every draw at >= 5 digits so
# the separators are always visible.
GROUPING_GRID = (10_000, 1_000_000, 0)

# Size of the commuted view in the originally distributed evaluation release,
# reported next to locally computed counts for comparison.
COMMUTED_RELEASE_COUNT = 611


class AspectSkip(Exception):
    """An aspect does not apply to a seed; carries the reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class CorpusError(ValueError):
    """A seed corpus failed validation."""


@dataclass(frozen=True)
class Aspect:
    name: str
    category: str
    style: str | None = None
    shift: int | None = None
    to_fraction: bool = False
    number_kind: str | None = None
    grid: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown aspect category {self.category!r}")


def default_registry() -> list[Aspect]:
    """The built-in aspect set: the original view plus 18 number views."""
    aspects = [
        Aspect("original", "original"),
        # same value, different written form
        Aspect("words", "same_number_representation", style="words"),
        Aspect("trailing_zero", "same_number_representation", style="trailing_zero_decimal"),
        Aspect("commuted", "same_number_representation"),
        # same digit sequence, shifted magnitude
        Aspect("times_0_01", "magnitude_variant", shift=-2),
        Aspect("times_0_1", "magnitude_variant", shift=-1),
        Aspect("times_10", "magnitude_variant", shift=1),
        Aspect("times_100", "magnitude_variant", shift=2),
        Aspect("decimal_fraction", "magnitude_variant", to_fraction=True, style="plain"),
        Aspect("no_leading_zero", "magnitude_variant", to_fraction=True, style="no_leading_zero"),
        # digit grouping (resampled large integers)
        Aspect("comma_grouped", "digit_grouping", style="comma_grouped", grid=GROUPING_GRID),
        Aspect("space_grouped", "digit_grouping", style="space_grouped", grid=GROUPING_GRID),
        # resampled ranges
        Aspect("large_int", "range_of_numbers", number_kind="int_large"),
        Aspect("small_int", "range_of_numbers", number_kind="int_small"),
        Aspect("2_digit", "range_of_numbers", number_kind="int_2digit"),
        Aspect("3_digit", "range_of_numbers", number_kind="int_3digit"),
        Aspect("4_digit", "range_of_numbers", number_kind="int_4digit"),
        Aspect("1dp", "range_of_numbers", number_kind="dec_1dp_0_1000"),
        Aspect("2dp", "range_of_numbers", number_kind="dec_2dp_0_1000"),
    ]
    return aspects


@dataclass(frozen=True)
class PlacedNumber:
    """A number literal anchored at a character span of the question text."""

    literal: NumberLiteral
    start: int
    end: int
    slot: int

    @property
    def surface(self) -> str:
        return render(self.literal)


@dataclass(frozen=True)
class SeedInstance:
    id: str
    question: str
    numbers: tuple[PlacedNumber, ...]
    expression: Expression
    answer: Fraction


@dataclass(frozen=True)
class Instance:
    id: str
    seed_id: str
    aspect: str
    question: str
    numbers: tuple[PlacedNumber, ...]
    expression: Expression
    answer: Fraction
    template_id: str | None = None
    number_type: str | None = None

    def bound_expression(self) -> Expression:
        return bind(self.expression, {p.slot: p.literal for p in self.numbers})


@dataclass(frozen=True)
class SkipRecord:
    seed_id: str
    aspect: str
    reason: str


@dataclass
class EvalSuite:
    instances: list[Instance]
    counts: dict[str, int]
    skips: list[SkipRecord]


def _rewrite_question(seed: SeedInstance, literals: dict[int, NumberLiteral]) -> tuple[str, tuple[PlacedNumber, ...]]:
    """Substitute new literals at the recorded spans, recomputing spans."""
    ordered = sorted(seed.numbers, key=lambda p: p.start)
    pieces: list[str] = []
    new_placed: list[tuple[int, PlacedNumber]] = []
    cursor = 0
    offset = 0
    for placed in ordered:
        lit = literals[placed.slot]
        surface = render(lit)
        pieces.append(seed.question[cursor:placed.start])
        start = placed.start + offset
        pieces.append(surface)
        offset += len(surface) - (placed.end - placed.start)
        cursor = placed.end
        new_placed.append((placed.slot, PlacedNumber(lit, start, start + len(surface), placed.slot)))
    pieces.append(seed.question[cursor:])
    by_slot = dict(new_placed)
    numbers = tuple(by_slot[p.slot] for p in seed.numbers)
    return "".join(pieces), numbers


def _leaf_pair_slots(expr: Expression) -> list[tuple[int, int]]:
    """Slot index pairs that sit directly under a commutative operator."""
    pairs: list[tuple[int, int]] = []

    def walk(node) -> None:
        if not isinstance(node, BinOp):
            return
        if node.op in COMMUTATIVE and isinstance(node.left, Slot) and isinstance(node.right, Slot):
            pairs.append((node.left.index, node.right.index))
        walk(node.left)
        walk(node.right)

    walk(expr.root)
    return pairs


def _transform_literal(aspect: Aspect, lit: NumberLiteral) -> NumberLiteral:
    if aspect.category == "same_number_representation":
        if aspect.style == "words":
            if lit.scale != 0:
                raise AspectSkip("words rendering requires an integer")
            return NumberLiteral(lit.digits, 0, lit.sign, "words")
        if aspect.style == "trailing_zero_decimal":
            return NumberLiteral(lit.digits + "0", lit.scale + 1, lit.sign, "trailing_zero_decimal")
        raise AspectSkip(f"no literal transform for {aspect.name}")
    if aspect.shift is not None:
        return shift_magnitude(lit, aspect.shift)
    raise AspectSkip(f"no literal transform for {aspect.name}")


def _fraction_literals(aspect: Aspect, seed: SeedInstance) -> dict[int, NumberLiteral]:
    """Shift every number by one common power of ten so the largest drops below 1.

    A shared shift keeps all quotients exact, so recomputed answers stay
    terminating for every shape.
    """
    k = min(0, -max(len(p.literal.digits) - p.literal.scale for p in seed.numbers))
    style = aspect.style or "plain"
    out: dict[int, NumberLiteral] = {}
    for placed in seed.numbers:
        shifted = shift_magnitude(placed.literal, k)
        out[placed.slot] = NumberLiteral(shifted.digits, shifted.scale, placed.literal.sign, style)
    return out


def expand_instance(seed: SeedInstance, aspect: Aspect, rng: random.Random) -> Instance:
    """One aspect view of one seed; raises AspectSkip when inapplicable."""
    expr = seed.expression
    if aspect.category == "original":
        literals = {p.slot: p.literal for p in seed.numbers}
    elif aspect.name == "commuted":
        pairs = _leaf_pair_slots(expr)
        if not pairs:
            raise AspectSkip("no commutative operand pair")
        literals = {p.slot: p.literal for p in seed.numbers}
        for left, right in pairs:
            literals[left], literals[right] = literals[right], literals[left]
    elif aspect.to_fraction:
        literals = _fraction_literals(aspect, seed)
    elif aspect.category in ("same_number_representation", "magnitude_variant"):
        try:
            literals = {p.slot: _transform_literal(aspect, p.literal) for p in seed.numbers}
        except NumberFormatError as err:
            raise AspectSkip(str(err)) from err
    elif aspect.category == "digit_grouping":
        try:
            literals = sample_bindings(expr, aspect.grid or GROUPING_GRID, rng)
        except SamplingError as err:
            raise AspectSkip(str(err)) from err
        literals = {
            slot: NumberLiteral(lit.digits, lit.scale, lit.sign, aspect.style or "plain")
            for slot, lit in literals.items()
        }
    elif aspect.category == "range_of_numbers":
        spec = NumberTypeSpec(aspect.number_kind)
        try:
            literals = sample_bindings(expr, spec, rng)
        except SamplingError as err:
            raise AspectSkip(str(err)) from err
    else:
        raise AspectSkip(f"unsupported aspect {aspect.name}")

    try:
        answer = evaluate(expr, literals)
    except ExpressionError as err:
        raise AspectSkip(f"cannot evaluate rebound expression: {err}") from err
    if not is_terminating(answer):
        raise AspectSkip("recomputed answer is non-terminating")
    if not within_digit_limit(answer):
        raise AspectSkip("recomputed answer exceeds the digit limit")

    question, numbers = _rewrite_question(seed, literals)
    if aspect.category != "original" and question == seed.question:
        raise AspectSkip("transformed question identical to seed")
    return Instance(
        id=f"{seed.id}/{aspect.name}",
        seed_id=seed.id,
        aspect=aspect.name,
        question=question,
        numbers=numbers,
        expression=expr,
        answer=answer,
    )


def expand_suite(
    seeds: list[SeedInstance],
    registry: list[Aspect] | None = None,
    seed: int = 0,
) -> EvalSuite:
    """Expand seeds across the registry; deterministic for a fixed seed."""
    registry = registry if registry is not None else default_registry()
    resampling = {"digit_grouping", "range_of_numbers"}
    instances: list[Instance] = []
    skips: list[SkipRecord] = []
    counts: dict[str, int] = {a.name: 0 for a in registry}
    seen_text: dict[str, set[str]] = {a.name: set() for a in registry}
    for seed_instance in seeds:
        for aspect in registry:
            instance = None
            reason = None
            # resampling aspects retry textual collisions (either with an
            # already-emitted instance or with the seed itself) on a fresh
            # derived stream; deterministic aspects cannot, so they skip
            attempts = 40 if aspect.category in resampling else 1
            for attempt in range(attempts):
                key = f"{seed}|{seed_instance.id}|{aspect.name}"
                rng = random.Random(key if attempt == 0 else f"{key}|r{attempt}")
                try:
                    candidate = expand_instance(seed_instance, aspect, rng)
                except AspectSkip as skip:
                    reason = skip.reason
                    if skip.reason == "transformed question identical to seed":
                        continue
                    break
                if candidate.question not in seen_text[aspect.name]:
                    instance = candidate
                    break
                reason = "duplicate question text"
            if instance is None:
                skips.append(SkipRecord(seed_instance.id, aspect.name, reason or "exhausted retries"))
                continue
            seen_text[aspect.name].add(instance.question)
            instances.append(instance)
            counts[aspect.name] += 1
    instances.sort(key=lambda inst: (inst.seed_id, inst.aspect))
    skips.sort(key=lambda s: (s.seed_id, s.aspect))
    return EvalSuite(instances=instances, counts=counts, skips=skips)


@dataclass
class CorpusReport:
    signature_counts: dict[str, int]
    hop_counts: dict[int, int]
    total: int


def seed_signature(seed: SeedInstance) -> OperationSignature:
    return op_signature(seed.expression)


def validate_seed_corpus(seeds: list[SeedInstance]) -> CorpusReport:
    """Check alignment and answers for every seed and report the shape mix."""
    signature_counts: dict[str, int] = {}
    hop_counts: dict[int, int] = {}
    ids: set[str] = set()
    for seed in seeds:
        if seed.id in ids:
            raise CorpusError(f"duplicate seed id {seed.id}")
        ids.add(seed.id)
        slots = sorted(seed.expression.slots())
        number_slots = sorted(p.slot for p in seed.numbers)
        if slots != number_slots or len(set(slots)) != len(slots):
            raise CorpusError(f"seed {seed.id}: slot/number alignment mismatch")
        if slots != list(range(1, len(slots) + 1)):
            raise CorpusError(f"seed {seed.id}: slots must be num1..num{len(slots)}")
        for placed in seed.numbers:
            if seed.question[placed.start:placed.end] != placed.surface:
                raise CorpusError(f"seed {seed.id}: span does not match number surface")
        try:
            computed = evaluate(seed.expression, {p.slot: p.literal for p in seed.numbers})
        except ExpressionError as err:
            raise CorpusError(f"seed {seed.id}: {err}") from err
        if computed != seed.answer:
            raise CorpusError(
                f"seed {seed.id}: stored answer {seed.answer} != evaluated {computed}"
            )
        try:
            signature = op_signature(seed.expression)
        except ExpressionError as err:
            raise CorpusError(f"seed {seed.id}: {err}") from err
        signature_counts[signature.shape] = signature_counts.get(signature.shape, 0) + 1
        hop_counts[signature.hop_count] = hop_counts.get(signature.hop_count, 0) + 1
    return CorpusReport(
        signature_counts=dict(sorted(signature_counts.items())),
        hop_counts=dict(sorted(hop_counts.items())),
        total=len(seeds),
    )
