"""Line-delimited record files and run-config headers.

Every output file starts with a header record carrying the run configuration
(command, seed, flags); re-running the command in the header reproduces the
file byte for byte.  All values are stored exactly: numbers keep both their
surface and an exact decimal value string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, TextIO

from .aspects import Instance, PlacedNumber, SeedInstance
from .exact import parse_decimal, to_decimal_string
from .expressions import parse_expression
from .numbers import NumberLiteral, render
from .templates import Template, make_template

FORMAT_NAME = "arithview/jsonl"
FORMAT_VERSION = 1


class SchemaError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    options: dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "record": "header",
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "command": self.command,
            "seed": self.seed,
            "options": dict(sorted(self.options.items())),
        }

    @classmethod
    def from_record(cls, record: dict) -> "RunConfig":
        return cls(
            command=record.get("command", ""),
            seed=record.get("seed", 0),
            options=record.get("options", {}),
        )


def _dumps(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def write_records(
    out: TextIO,
    records: Iterable[dict],
    config: RunConfig | None = None,
) -> int:
    count = 0
    if config is not None:
        out.write(_dumps(config.to_record()) + "\n")
    for record in records:
        out.write(_dumps(record) + "\n")
        count += 1
    return count


def write_file(path: str | Path, records: Iterable[dict], config: RunConfig | None = None) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        return write_records(handle, records, config)


def read_records(path: str | Path) -> tuple[RunConfig | None, list[dict]]:
    config: RunConfig | None = None
    records: list[dict] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise SchemaError(f"{path}:{line_no}: bad JSON: {err}") from err
            if not isinstance(record, dict):
                raise SchemaError(f"{path}:{line_no}: record must be an object")
            if record.get("record") == "header":
                if line_no == 1:
                    config = RunConfig.from_record(record)
                    continue
                raise SchemaError(f"{path}:{line_no}: header after first line")
            records.append(record)
    return config, records


# -- numbers ---------------------------------------------------------------


def number_to_record(placed: PlacedNumber) -> dict:
    lit = placed.literal
    return {
        "surface": placed.surface,
        "value": to_decimal_string(lit.value),
        "scale": lit.scale,
        "style": lit.style,
        "slot": placed.slot,
        "span": [placed.start, placed.end],
    }


def number_from_record(record: dict) -> PlacedNumber:
    try:
        value = parse_decimal(record["value"])
        scale = int(record["scale"])
        style = record["style"]
        slot = int(record["slot"])
        start, end = record["span"]
    except (KeyError, TypeError, ValueError) as err:
        raise SchemaError(f"bad number record {record!r}: {err}") from err
    sign = -1 if value < 0 else 1
    units = abs(value) * 10**scale
    if units.denominator != 1:
        raise SchemaError(f"value {record['value']} not representable at scale {scale}")
    # written digits come from the surface ("0.18" -> "018", ".32" -> "32");
    # words surfaces have none, so fall back to the canonical padding
    surface_digits = "".join(c for c in str(record.get("surface", "")) if c.isdigit())
    if surface_digits and int(surface_digits) == units.numerator:
        digits = surface_digits
    elif style == "no_leading_zero":
        digits = str(units.numerator).rjust(max(scale, 1), "0")
    else:
        digits = str(units.numerator).rjust(scale + 1, "0")
    literal = NumberLiteral(digits=digits, scale=scale, sign=sign, style=style)
    return PlacedNumber(literal=literal, start=int(start), end=int(end), slot=slot)


# -- instances and seeds -----------------------------------------------------


def instance_to_record(instance: Instance) -> dict:
    answer_lit = NumberLiteral.from_value(instance.answer)
    record = {
        "id": instance.id,
        "seed_id": instance.seed_id,
        "aspect": instance.aspect,
        "question": instance.question,
        "answer_surface": render(answer_lit),
        "answer_value": to_decimal_string(instance.answer),
        "expression": str(instance.expression),
        "numbers": [number_to_record(p) for p in instance.numbers],
    }
    if instance.template_id is not None:
        record["template_id"] = instance.template_id
    if instance.number_type is not None:
        record["number_type"] = instance.number_type
    return record


def instance_from_record(record: dict) -> Instance:
    try:
        return Instance(
            id=record["id"],
            seed_id=record.get("seed_id", ""),
            aspect=record.get("aspect", "original"),
            question=record["question"],
            numbers=tuple(number_from_record(n) for n in record.get("numbers", [])),
            expression=parse_expression(record["expression"]),
            answer=parse_decimal(record["answer_value"]),
            template_id=record.get("template_id"),
            number_type=record.get("number_type"),
        )
    except (KeyError, ValueError) as err:
        raise SchemaError(f"bad instance record ({record.get('id', '?')}): {err}") from err


def seed_to_record(seed: SeedInstance) -> dict:
    answer_lit = NumberLiteral.from_value(seed.answer)
    return {
        "id": seed.id,
        "question": seed.question,
        "answer_surface": render(answer_lit),
        "answer_value": to_decimal_string(seed.answer),
        "expression": str(seed.expression),
        "numbers": [number_to_record(p) for p in seed.numbers],
    }


def seed_from_record(record: dict) -> SeedInstance:
    try:
        return SeedInstance(
            id=record["id"],
            question=record["question"],
            numbers=tuple(number_from_record(n) for n in record.get("numbers", [])),
            expression=parse_expression(record["expression"]),
            answer=parse_decimal(record["answer_value"]),
        )
    except (KeyError, ValueError) as err:
        raise SchemaError(f"bad seed record ({record.get('id', '?')}): {err}") from err


def load_seeds(path: str | Path) -> list[SeedInstance]:
    _, records = read_records(path)
    return [seed_from_record(r) for r in records]


# -- templates ---------------------------------------------------------------


def template_to_record(template: Template) -> dict:
    return {
        "id": template.id,
        "source": template.source,
        "text": template.text,
        "expression": str(template.expression),
    }


def template_from_record(record: dict) -> Template:
    try:
        return make_template(
            id=record["id"],
            source=record["source"],
            text=record["text"],
            expression=record["expression"],
        )
    except KeyError as err:
        raise SchemaError(f"template record missing field {err}") from err


def load_templates(path: str | Path) -> list[Template]:
    _, records = read_records(path)
    return [template_from_record(r) for r in records]


# -- predictions ---------------------------------------------------------------


def load_predictions(path: str | Path) -> dict[str, str]:
    _, records = read_records(path)
    predictions: dict[str, str] = {}
    for record in records:
        if "id" not in record or "output" not in record:
            raise SchemaError(f"prediction record needs id and output: {record!r}")
        if record["id"] in predictions:
            raise SchemaError(f"duplicate prediction id {record['id']!r}")
        predictions[record["id"]] = str(record["output"])
    return predictions


def load_instances(path: str | Path) -> list[Instance]:
    _, records = read_records(path)
    return [instance_from_record(r) for r in records]
