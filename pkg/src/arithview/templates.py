"""Question templates and training-set recipes.

Templates pair a placeholder text ("... num1 ... num2 ...") with a slot-only
expression.  Recipes instantiate them under a number-type mix; templates are
cycled round-robin over a shuffled order so that the operation distribution of
the output matches the template pool exactly whenever the counts divide.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .aspects import Instance, PlacedNumber
from .expressions import Expression, ExpressionError, OperationSignature, evaluate, op_signature, parse_expression
from .numbers import NumberTypeSpec, render
from .sampling import AnswerConstraint, DEFAULT_CONSTRAINT, SamplingError, sample_bindings

SOURCES = ("expert", "gsm8k", "aqua")

MAX_TEMPLATE_SLOTS = 3

_PLACEHOLDER = re.compile(r"\bnum(\d+)\b")


class TemplateError(ValueError):
    pass


class RecipeError(ValueError):
    pass


@dataclass(frozen=True)
class Template:
    id: str
    source: str
    text: str
    expression: Expression
    signature: OperationSignature


def make_template(id: str, source: str, text: str, expression: str | Expression) -> Template:
    """Validate and build a template; raises TemplateError with the id on failure."""
    if source not in SOURCES:
        raise TemplateError(f"template {id}: unknown source {source!r}")
    if isinstance(expression, str):
        try:
            expression = parse_expression(expression)
        except ExpressionError as err:
            raise TemplateError(f"template {id}: {err}") from err
    slots = expression.slots()
    if len(set(slots)) != len(slots):
        raise TemplateError(f"template {id}: repeated slot in expression")
    if not slots or sorted(slots) != list(range(1, len(slots) + 1)):
        raise TemplateError(f"template {id}: slots must be num1..num{len(slots)}")
    if len(slots) > MAX_TEMPLATE_SLOTS:
        raise TemplateError(f"template {id}: more than {MAX_TEMPLATE_SLOTS} slots")
    placeholders = [int(m.group(1)) for m in _PLACEHOLDER.finditer(text)]
    if sorted(placeholders) != sorted(slots):
        raise TemplateError(
            f"template {id}: text placeholders {sorted(set(placeholders))} "
            f"do not match expression slots {sorted(slots)}"
        )
    try:
        signature = op_signature(expression)
    except ExpressionError as err:
        raise TemplateError(f"template {id}: {err}") from err
    return Template(id=id, source=source, text=text, expression=expression, signature=signature)


@dataclass
class TemplateInventory:
    by_source: dict[str, int]
    by_signature: dict[str, int]
    total: int


def inventory(templates: list[Template]) -> TemplateInventory:
    by_source: dict[str, int] = {}
    by_signature: dict[str, int] = {}
    for t in templates:
        by_source[t.source] = by_source.get(t.source, 0) + 1
        by_signature[t.signature.shape] = by_signature.get(t.signature.shape, 0) + 1
    return TemplateInventory(
        by_source=dict(sorted(by_source.items())),
        by_signature=dict(sorted(by_signature.items())),
        total=len(templates),
    )


def instantiate(
    template: Template,
    spec: NumberTypeSpec,
    constraint: AnswerConstraint = DEFAULT_CONSTRAINT,
    rng: random.Random | None = None,
    instance_id: str | None = None,
    max_tries: int = 100,
) -> Instance:
    """Bind fresh numbers from the spec into the template text and expression."""
    rng = rng if rng is not None else random.Random()
    literals = sample_bindings(template.expression, spec, rng, constraint, max_tries=max_tries)
    answer = evaluate(template.expression, literals)

    pieces: list[str] = []
    placed: list[PlacedNumber] = []
    cursor = 0
    for match in _PLACEHOLDER.finditer(template.text):
        slot = int(match.group(1))
        surface = render(literals[slot])
        pieces.append(template.text[cursor:match.start()])
        start = sum(len(p) for p in pieces)
        pieces.append(surface)
        placed.append(PlacedNumber(literals[slot], start, start + len(surface), slot))
        cursor = match.end()
    pieces.append(template.text[cursor:])
    question = "".join(pieces)

    return Instance(
        id=instance_id or template.id,
        seed_id=template.id,
        aspect=spec.kind,
        question=question,
        numbers=tuple(sorted(placed, key=lambda p: p.slot)),
        expression=template.expression,
        answer=answer,
        template_id=template.id,
        number_type=spec.kind,
    )


# uniform mix over the four training number types
BASE_MIX: tuple[tuple[str, Fraction], ...] = (
    ("int_0_1000", Fraction(1, 4)),
    ("int_1000_1000000", Fraction(1, 4)),
    ("dec_1dp_0_1000", Fraction(1, 4)),
    ("dec_2dp_0_1000", Fraction(1, 4)),
)

RECIPE_NAMES = ("base", "base_scaled_up", "base_diversified", "dev", "custom")


@dataclass(frozen=True)
class RecipePhase:
    count: int
    sources: tuple[str, ...]


@dataclass(frozen=True)
class Recipe:
    name: str
    mix: tuple[tuple[str, Fraction], ...]
    phases: tuple[RecipePhase, ...]
    seed: int
    constraint: AnswerConstraint = DEFAULT_CONSTRAINT

    def __post_init__(self) -> None:
        if sum((p for _, p in self.mix), Fraction(0)) != 1:
            raise RecipeError(f"recipe {self.name}: mix proportions must sum to 1")
        for phase in self.phases:
            for kind, proportion in self.mix:
                stratum = phase.count * proportion
                if stratum.denominator != 1:
                    raise RecipeError(
                        f"recipe {self.name}: {kind} share of {phase.count} is not an integer"
                    )

    @property
    def total_count(self) -> int:
        return sum(p.count for p in self.phases)


def standard_recipe(name: str, seed: int, total: int | None = None) -> Recipe:
    """Named presets; ``custom`` takes an explicit total (expert sources only)."""
    expert = ("expert",)
    everything = SOURCES
    if name == "base":
        phases: tuple[RecipePhase, ...] = (RecipePhase(200_000, expert),)
    elif name == "base_scaled_up":
        phases = (RecipePhase(200_000, expert), RecipePhase(100_000, expert))
    elif name == "base_diversified":
        phases = (RecipePhase(200_000, expert), RecipePhase(100_000, everything))
    elif name == "dev":
        phases = (RecipePhase(1_000, expert),)
    elif name == "custom":
        if total is None:
            raise RecipeError("custom recipe needs a total count")
        phases = (RecipePhase(total, expert),)
    else:
        raise RecipeError(f"unknown recipe {name!r}")
    return Recipe(name=name, mix=BASE_MIX, phases=phases, seed=seed)


@dataclass
class RecipeSkip:
    phase: int
    kind: str
    template_id: str
    reason: str


def build_recipe(
    recipe: Recipe,
    templates: list[Template],
    skips: list[RecipeSkip] | None = None,
) -> Iterator[Instance]:
    """Stream the recipe's instances in deterministic (phase, type, counter) order.

    Instantiation failures are logged to ``skips`` and the cursor advances to
    the next template so the per-type totals stay exact.  The first phase of
    ``base_scaled_up``/``base_diversified`` reproduces ``base`` byte for byte
    under the same seed: derived rng streams do not involve the recipe name.
    """
    for phase_idx, phase in enumerate(recipe.phases):
        pool = [t for t in templates if t.source in phase.sources]
        if phase.count and not pool:
            raise RecipeError(f"recipe {recipe.name}: no templates for sources {phase.sources}")
        for kind, proportion in recipe.mix:
            target = int(phase.count * proportion)
            if not target:
                continue
            spec = NumberTypeSpec(kind)
            order = list(pool)
            random.Random(f"{recipe.seed}|p{phase_idx}|{kind}|order").shuffle(order)
            produced = 0
            cursor = 0
            consecutive_failures = 0
            while produced < target:
                template = order[cursor % len(order)]
                rng = random.Random(f"{recipe.seed}|p{phase_idx}|{kind}|{cursor}")
                cursor += 1
                try:
                    instance = instantiate(
                        template,
                        spec,
                        recipe.constraint,
                        rng,
                        instance_id=f"p{phase_idx}/{kind}/{produced:06d}",
                    )
                except SamplingError as err:
                    if skips is not None:
                        skips.append(RecipeSkip(phase_idx, kind, template.id, str(err)))
                    consecutive_failures += 1
                    if consecutive_failures >= len(order):
                        raise RecipeError(
                            f"recipe {recipe.name}: every template failed for {kind}"
                        ) from err
                    continue
                consecutive_failures = 0
                produced += 1
                yield instance
