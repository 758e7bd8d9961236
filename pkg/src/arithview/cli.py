"""Command-line interface.

Subcommands: gen-eval, gen-train, classify, score, report, validate.
Exit codes: 0 success, 1 usage error, 2 validation/schema error, 3 I/O error.
All randomness derives from --seed, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from pathlib import Path

from .aspects import (
    Aspect,
    COMMUTED_RELEASE_COUNT,
    CorpusError,
    Instance,
    PlacedNumber,
    expand_suite,
    validate_seed_corpus,
)
from .dependency import DependencyClass, TrainingIndex, classify
from .expressions import ExpressionError
from .numbers import NumberFormatError
from .prompts import BUILTIN_WRAPPERS, get_wrapper, wrap_prompt
from .records import (
    RunConfig,
    SchemaError,
    instance_to_record,
    load_instances,
    load_predictions,
    load_seeds,
    load_templates,
    read_records,
    write_file,
)
from .sampling import SamplingError
from .scoring import STRATEGIES, ScoringError, render_class_chart, score_predictions
from .templates import RecipeError, TemplateError, build_recipe, inventory, standard_recipe

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

_VALIDATION_ERRORS = (
    SchemaError,
    CorpusError,
    TemplateError,
    RecipeError,
    ScoringError,
    ExpressionError,
    NumberFormatError,
    SamplingError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2); we reserve 2
        raise UsageError(message)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("arithview").joinpath(f"data/{name}")))


def _wrap_instance(instance: Instance, wrapper_name: str) -> Instance:
    wrapper = get_wrapper(wrapper_name)
    if not wrapper.prefix and not wrapper.suffix:
        return instance
    offset = len(wrapper.prefix)
    numbers = tuple(
        PlacedNumber(p.literal, p.start + offset, p.end + offset, p.slot)
        for p in instance.numbers
    )
    return Instance(
        id=instance.id,
        seed_id=instance.seed_id,
        aspect=instance.aspect,
        question=wrap_prompt(instance.question, wrapper),
        numbers=numbers,
        expression=instance.expression,
        answer=instance.answer,
        template_id=instance.template_id,
        number_type=instance.number_type,
    )


def _skip_path(out: str) -> Path:
    out_path = Path(out)
    return out_path.with_name(out_path.name + ".skips.jsonl")


def _cmd_gen_eval(args: argparse.Namespace) -> int:
    seeds = load_seeds(args.seeds)
    registry = None
    if args.aspects:
        with open(args.aspects, encoding="utf-8") as handle:
            registry = registry_from_json(json.load(handle))
    suite = expand_suite(seeds, registry, seed=args.seed)
    config = RunConfig(
        command="gen-eval",
        seed=args.seed,
        options={"seeds": str(args.seeds), "aspects": args.aspects or "", "prompt": args.prompt},
    )
    instances = (_wrap_instance(i, args.prompt) for i in suite.instances)
    write_file(args.out, (instance_to_record(i) for i in instances), config)
    write_file(
        _skip_path(args.out),
        ({"seed_id": s.seed_id, "aspect": s.aspect, "reason": s.reason} for s in suite.skips),
        config,
    )
    for aspect, count in sorted(suite.counts.items()):
        note = f"  (release reference: {COMMUTED_RELEASE_COUNT})" if aspect == "commuted" else ""
        print(f"{aspect}\t{count}{note}")
    print(f"total\t{len(suite.instances)}")
    print(f"skips\t{len(suite.skips)}\t-> {_skip_path(args.out)}")
    return EXIT_OK


def registry_from_json(data: list[dict]) -> list[Aspect]:
    if not isinstance(data, list):
        raise SchemaError("aspect registry must be a JSON list")
    registry = []
    for record in data:
        try:
            registry.append(
                Aspect(
                    name=record["name"],
                    category=record["category"],
                    style=record.get("style"),
                    shift=record.get("shift"),
                    to_fraction=bool(record.get("to_fraction", False)),
                    number_kind=record.get("number_kind"),
                    grid=tuple(record["grid"]) if record.get("grid") else None,
                )
            )
        except (KeyError, TypeError, ValueError) as err:
            raise SchemaError(f"bad aspect record {record!r}: {err}") from err
    return registry


def _cmd_gen_train(args: argparse.Namespace) -> int:
    templates = load_templates(args.templates)
    recipe = standard_recipe(args.recipe, seed=args.seed, total=args.total)
    config = RunConfig(
        command="gen-train",
        seed=args.seed,
        options={
            "templates": str(args.templates),
            "recipe": args.recipe,
            "total": args.total or 0,
            "prompt": args.prompt,
        },
    )
    skips: list = []
    per_type: dict[str, int] = {}

    def stream():
        for instance in build_recipe(recipe, templates, skips):
            per_type[instance.number_type] = per_type.get(instance.number_type, 0) + 1
            yield instance_to_record(_wrap_instance(instance, args.prompt))

    total = write_file(args.out, stream(), config)
    write_file(
        _skip_path(args.out),
        (
            {"phase": s.phase, "number_type": s.kind, "template_id": s.template_id, "reason": s.reason}
            for s in skips
        ),
        config,
    )
    for kind, count in sorted(per_type.items()):
        print(f"{kind}\t{count}")
    print(f"total\t{total}")
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    train = load_instances(args.train)
    tests = load_instances(args.eval)
    index = TrainingIndex(inst.bound_expression() for inst in train)
    rows = [
        {"id": inst.id, "class": classify(inst.bound_expression(), index, args.aggregate).label}
        for inst in tests
    ]
    config = RunConfig(
        command="classify",
        options={"train": str(args.train), "eval": str(args.eval), "aggregate": args.aggregate},
    )
    write_file(args.out, rows, config)
    totals: dict[str, int] = {}
    for row in rows:
        totals[row["class"]] = totals.get(row["class"], 0) + 1
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["class", "total"])
            for cls in sorted(DependencyClass, reverse=True):
                writer.writerow([cls.label, totals.get(cls.label, 0)])
    for cls in sorted(DependencyClass, reverse=True):
        print(f"{cls.label}\t{totals.get(cls.label, 0)}")
    return EXIT_OK


def _cmd_score(args: argparse.Namespace) -> int:
    predictions = load_predictions(args.predictions)
    suite = load_instances(args.eval)
    training = None
    if args.train:
        training = [inst.bound_expression() for inst in load_instances(args.train)]
    report = score_predictions(
        predictions,
        suite,
        strategy=args.strategy,
        training_expressions=training,
        parse_words=args.parse_words,
    )
    config = RunConfig(
        command="score",
        options={
            "predictions": str(args.predictions),
            "eval": str(args.eval),
            "strategy": args.strategy,
            "train": str(args.train or ""),
        },
    )
    records = [
        {
            "record": "overall",
            "total": report.overall.total,
            "correct": report.overall.correct,
            "accuracy_pct": report.overall.accuracy_pct,
            "missing_extractions": report.missing_extractions,
            "strategy": report.strategy,
        }
    ]
    records += [{"record": "aspect", **row} for row in report.aspect_rows()]
    records += [{"record": "signature", **row} for row in report.signature_rows()]
    records += [{"record": "class", **row} for row in report.class_rows()]
    if args.out:
        write_file(args.out, records, config)
    acc = report.overall.accuracy_pct
    print(f"scored\t{report.overall.total}")
    print(f"accuracy\t{acc:.1f}%" if acc is not None else "accuracy\tn/a")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    _, records = read_records(args.report)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    groups = {"aspect": [], "signature": [], "class": []}
    for record in records:
        kind = record.get("record")
        if kind in groups:
            groups[kind].append({k: v for k, v in record.items() if k != "record"})
    filenames = {"aspect": "aspects.csv", "signature": "signatures.csv", "class": "classes.csv"}
    written = []
    for kind, rows in groups.items():
        if not rows:
            continue
        path = out_dir / filenames[kind]
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        written.append(path)
    if args.chart:
        if not groups["class"]:
            raise ScoringError("cannot chart: report has no dependency-class rows")
        from .dependency import ClassCounts
        from .scoring import GroupScore, ScoreReport

        per_class = {}
        by_label = {cls.label: cls for cls in DependencyClass}
        for row in groups["class"]:
            counts = ClassCounts(total=row["total"], correct=row["correct"])
            per_class[by_label[row["class"]]] = counts
        stub = ScoreReport(
            strategy="",
            overall=GroupScore(),
            per_aspect={},
            per_signature={},
            per_class=per_class,
        )
        chart_path = out_dir / "classes.png"
        render_class_chart(stub, str(chart_path))
        written.append(chart_path)
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    summary: dict = {}
    seeds = load_seeds(args.seeds)
    report = validate_seed_corpus(seeds)
    summary["seeds"] = {
        "total": report.total,
        "signatures": report.signature_counts,
        "hops": {str(k): v for k, v in report.hop_counts.items()},
    }
    if not args.json:
        print(f"seed corpus: {report.total} instances")
        for shape, count in report.signature_counts.items():
            print(f"  {shape}\t{count}")
        for hops, count in report.hop_counts.items():
            print(f"{hops}-hop total\t{count}")
    if args.templates:
        templates = load_templates(args.templates)
        inv = inventory(templates)
        summary["templates"] = {
            "total": inv.total,
            "sources": inv.by_source,
            "signatures": inv.by_signature,
        }
        if not args.json:
            sources = ", ".join(f"{k} {v}" for k, v in inv.by_source.items())
            print(f"templates: {inv.total} ({sources})")
            for shape, count in inv.by_signature.items():
                print(f"  {shape}\t{count}")
    if args.json:
        print(json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arithview", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen_eval = sub.add_parser("gen-eval", help="expand seeds into the multi-view evaluation suite")
    gen_eval.add_argument("--seeds", default=bundled_path("seeds.jsonl"))
    gen_eval.add_argument("--aspects", default=None, help="JSON file overriding the aspect registry")
    gen_eval.add_argument("--seed", type=int, default=0)
    gen_eval.add_argument("--out", required=True)
    gen_eval.add_argument("--prompt", default="none", choices=sorted(BUILTIN_WRAPPERS))
    gen_eval.set_defaults(func=_cmd_gen_eval)

    gen_train = sub.add_parser("gen-train", help="instantiate templates into a training set")
    gen_train.add_argument("--templates", default=bundled_path("templates.jsonl"))
    gen_train.add_argument(
        "--recipe", default="base",
        choices=["base", "base_scaled_up", "base_diversified", "dev", "custom"],
    )
    gen_train.add_argument("--total", type=int, default=None, help="instance count for --recipe custom")
    gen_train.add_argument("--seed", type=int, default=0)
    gen_train.add_argument("--out", required=True)
    gen_train.add_argument("--prompt", default="none", choices=sorted(BUILTIN_WRAPPERS))
    gen_train.set_defaults(func=_cmd_gen_train)

    classify_p = sub.add_parser("classify", help="classify test expressions by training overlap")
    classify_p.add_argument("--train", required=True)
    classify_p.add_argument("--eval", required=True)
    classify_p.add_argument("--aggregate", default="pairwise", choices=["pairwise", "union"])
    classify_p.add_argument("--out", required=True)
    classify_p.add_argument("--csv", default=None, help="write the aggregate table as CSV")
    classify_p.set_defaults(func=_cmd_classify)

    score = sub.add_parser("score", help="score a prediction file against an evaluation suite")
    score.add_argument("--predictions", required=True)
    score.add_argument("--eval", required=True)
    score.add_argument("--strategy", default="last_number", choices=list(STRATEGIES))
    score.add_argument("--train", default=None, help="training set for the dependency breakdown")
    score.add_argument("--parse-words", action="store_true")
    score.add_argument("--out", default=None)
    score.set_defaults(func=_cmd_score)

    report = sub.add_parser("report", help="render a score report into CSV tables")
    report.add_argument("--report", required=True)
    report.add_argument("--out", required=True)
    report.add_argument("--chart", action="store_true")
    report.set_defaults(func=_cmd_report)

    validate = sub.add_parser("validate", help="validate a seed corpus and report its distribution")
    validate.add_argument("--seeds", default=bundled_path("seeds.jsonl"))
    validate.add_argument("--templates", default=None)
    validate.add_argument("--json", action="store_true")
    validate.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except _VALIDATION_ERRORS as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
