"""Command-line entry point.

Subcommands wire the pipeline end to end: ``assess`` grades one file,
``report`` prints the full tables, ``improve`` plans and (on request)
applies transformations and writes the improved source, ``guidelines``
lists the catalog and ``corpus`` surveys a directory tree. Exit codes are
part of the contract: 0 success, 1 usage or configuration error, 2 parse
or model error, 3 assessment below the ``--fail-below`` gate, 4 file I/O
error.

Without ``--yes`` or ``--interactive``, ``improve`` is a dry run: the plan
is printed and nothing is written. Interactive answers can be captured with
``--record`` and replayed with ``--replay`` so dialogue sessions are
reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import IO

from .assessor import Assessment, ReuseBand, assess
from .config import Config, ConfigError, load_config, parse_operation_class
from .improver import TransformError, improve, plan_improvements
from .model import (
    ComponentModel,
    ModelError,
    SiblingContext,
    StructureKind,
    build_model,
    classification_is_low_confidence,
)
from .parser import ParseError, parse_component
from .printer import pretty_print
from .report import FORMATS, render, render_guideline_listing, render_summary, rounded_score
from .syntax import ParsedUnit, SourceLocation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ANALYSIS = 2
EXIT_GATE = 3
EXIT_IO = 4


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1, not argparse's default 2
        raise _UsageError(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="rais", description="Assess and improve component specifications for reuse.")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub, formats=FORMATS):
        sub.add_argument("--config", metavar="PATH", help="JSON configuration file")
        sub.add_argument("--format", choices=formats, default="text")

    assess_cmd = commands.add_parser("assess", help="grade one specification file")
    assess_cmd.add_argument("file")
    add_common(assess_cmd)
    assess_cmd.add_argument(
        "--fail-below",
        choices=[band.label for band in ReuseBand],
        help="exit 3 when the band is below this one",
    )

    improve_cmd = commands.add_parser("improve", help="plan and apply reuse transformations")
    improve_cmd.add_argument("file")
    improve_cmd.add_argument("-o", "--output", metavar="OUT", help="improved spec path")
    mode = improve_cmd.add_mutually_exclusive_group()
    mode.add_argument("--yes", action="store_true", help="apply every transformation")
    mode.add_argument("--interactive", action="store_true", help="confirm each transformation")
    improve_cmd.add_argument("--emit-body", action="store_true", help="also write a body skeleton")
    improve_cmd.add_argument("--record", metavar="PATH", help="record interactive answers")
    improve_cmd.add_argument("--replay", metavar="PATH", help="replay recorded answers")
    add_common(improve_cmd)

    report_cmd = commands.add_parser("report", help="full assessment tables")
    report_cmd.add_argument("file")
    add_common(report_cmd)

    guidelines_cmd = commands.add_parser("guidelines", help="list the guideline catalog")
    guidelines_cmd.add_argument("--format", choices=FORMATS, default="text")

    corpus_cmd = commands.add_parser("corpus", help="assess every .ads file under a directory")
    corpus_cmd.add_argument("directory")
    corpus_cmd.add_argument("--config", metavar="PATH")
    corpus_cmd.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def main() -> None:
    sys.exit(run(sys.argv[1:], sys.stdin, sys.stdout, sys.stderr))


def run(
    argv: list[str],
    input_stream: IO[str] | None = None,
    output_stream: IO[str] | None = None,
    error_stream: IO[str] | None = None,
) -> int:
    stdin = input_stream if input_stream is not None else sys.stdin
    out = output_stream if output_stream is not None else sys.stdout
    err = error_stream if error_stream is not None else sys.stderr

    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as error:
        print(f"rais: {error}", file=err)
        return EXIT_USAGE
    except SystemExit as exit_request:  # --help
        return int(exit_request.code or 0)

    try:
        if args.command == "assess":
            return _cmd_assess(args, out)
        if args.command == "report":
            return _cmd_report(args, out)
        if args.command == "improve":
            return _cmd_improve(args, stdin, out)
        if args.command == "guidelines":
            out.write(render_guideline_listing(args.format))
            return EXIT_OK
        if args.command == "corpus":
            return _cmd_corpus(args, out)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as error:
        print(f"rais: {error}", file=err)
        return EXIT_USAGE
    except ConfigError as error:
        print(f"rais: {error}", file=err)
        return EXIT_USAGE
    except (ParseError, ModelError) as error:
        print(f"rais: {error}", file=err)
        return EXIT_ANALYSIS
    except TransformError as error:
        print(f"rais: internal planning error: {error}", file=err)
        return EXIT_ANALYSIS
    except OSError as error:
        print(f"rais: {error}", file=err)
        return EXIT_IO


# --- shared pipeline ---------------------------------------------------------


def _load_config(args) -> Config:
    if getattr(args, "config", None):
        return load_config(args.config)
    return Config()


def _read_unit(path: Path) -> ParsedUnit:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError:
        location = SourceLocation(str(path), 1, 1)
        raise ParseError(location, "UTF-8 encoded source text", "undecodable bytes") from None
    return parse_component(text, str(path))


def _sibling_context(path: Path, unit: ParsedUnit, kind: StructureKind) -> SiblingContext:
    """Which representation variants exist: the unit itself counts as the
    variant of its own kind; the other is looked up on disk next to it by
    the ``<name>_static.ads`` / ``<name>_dynamic.ads`` convention.
    """
    directory = path.resolve().parent
    try:
        names = {p.name.casefold() for p in directory.iterdir() if p.is_file()}
    except OSError:
        names = set()
    base = unit.package_name.casefold()
    static = kind is StructureKind.STATIC or f"{base}_static.ads" in names
    dynamic = kind is StructureKind.DYNAMIC or f"{base}_dynamic.ads" in names
    return SiblingContext(static_exists=static, dynamic_exists=dynamic)


def _analyse(path: Path, config: Config) -> tuple[ParsedUnit, ComponentModel, Assessment]:
    unit = _read_unit(path)
    model = build_model(unit, config.overrides)
    context = _sibling_context(path, unit, model.structure_kind)
    model = replace(model, sibling_context=context)
    return unit, model, assess(model, config)


# --- commands ------------------------------------------------------------------


def _cmd_assess(args, out) -> int:
    config = _load_config(args)
    _, model, assessment = _analyse(Path(args.file), config)
    if args.format == "text":
        out.write(render_summary(assessment, model))
    else:
        out.write(render(assessment, model, format=args.format))
    if args.fail_below and assessment.band < ReuseBand.from_label(args.fail_below):
        return EXIT_GATE
    return EXIT_OK


def _cmd_report(args, out) -> int:
    config = _load_config(args)
    _, model, assessment = _analyse(Path(args.file), config)
    out.write(render(assessment, model, format=args.format))
    return EXIT_OK


def _cmd_corpus(args, out) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise FileNotFoundError(f"no such directory: {args.directory}")
    config = _load_config(args)

    rows: list[dict] = []
    band_counts = {band.label: 0 for band in ReuseBand}
    errors = 0
    for path in sorted(root.rglob("*.ads")):
        relative = path.relative_to(root).as_posix()
        try:
            _, model, assessment = _analyse(path, config)
        except (ParseError, ModelError) as error:
            rows.append({"file": relative, "error": str(error)})
            errors += 1
            continue
        rows.append(
            {
                "file": relative,
                "component": model.unit.package_name,
                "score": rounded_score(assessment.score_percent),
                "band": assessment.band.label,
            }
        )
        band_counts[assessment.band.label] += 1

    if args.format == "json":
        document = {"schema": 1, "files": rows, "bands": band_counts, "errors": errors}
        out.write(json.dumps(document, indent=2) + "\n")
        return EXIT_OK

    width = max([len(r["file"]) for r in rows], default=4)
    out.write(f"{'file'.ljust(width)}  {'component'.ljust(20)}  {'score':>7}  band\n")
    for row in rows:
        if "error" in row:
            out.write(f"{row['file'].ljust(width)}  error: {row['error']}\n")
        else:
            out.write(
                f"{row['file'].ljust(width)}  {row['component'].ljust(20)}  "
                f"{row['score']:7.2f}  {row['band']}\n"
            )
    summary = "  ".join(f"{label}={count}" for label, count in band_counts.items())
    out.write(f"bands: {summary}  errors={errors}\n")
    return EXIT_OK


# --- improve -------------------------------------------------------------------


class _Dialogue:
    """Prompt/answer plumbing with optional record and replay."""

    def __init__(self, stdin, out, replay_path: str | None, record_path: str | None):
        self.stdin = stdin
        self.out = out
        self.replay: list[str] | None = None
        if replay_path:
            self.replay = Path(replay_path).read_text(encoding="utf-8").splitlines()
        self.record_path = record_path
        self.answers: list[str] = []

    def ask(self, prompt: str) -> str:
        self.out.write(prompt)
        self.out.flush()
        if self.replay is not None:
            answer = self.replay.pop(0) if self.replay else ""
            self.out.write(answer + "\n")
        else:
            line = self.stdin.readline()
            answer = line.rstrip("\n") if line else ""
        answer = answer.strip()
        self.answers.append(answer)
        return answer

    def save_record(self) -> None:
        if self.record_path:
            Path(self.record_path).write_text(
                "".join(answer + "\n" for answer in self.answers), encoding="utf-8"
            )


def _classification_dialogue(
    dialogue: _Dialogue, model: ComponentModel, config: Config
) -> Config:
    """Confirm low-confidence operation classes; answers become overrides."""
    overrides = config.overrides
    for decl, op_class in model.classified_ops:
        if overrides.op_class_for(decl.name) is not None:
            continue
        if not classification_is_low_confidence(decl, model.adt_name):
            continue
        answer = dialogue.ask(f"CLASSIFY {decl.name} [suggested: {op_class.value}] > ")
        if not answer:
            continue
        try:
            overrides = overrides.with_op_class(decl.name, parse_operation_class(answer))
        except ConfigError:
            dialogue.out.write(f"unrecognized class '{answer}', keeping {op_class.value}\n")
    config.overrides = overrides
    return config


def _cmd_improve(args, stdin, out) -> int:
    config = _load_config(args)
    interactive = args.interactive or bool(args.replay) or (config.interactive and not args.yes)
    if args.record and not interactive:
        raise _UsageError("--record needs --interactive or --replay")
    if args.yes and args.replay:
        raise _UsageError("--replay implies --interactive; drop --yes")

    input_path = Path(args.file)
    unit, model, assessment = _analyse(input_path, config)
    plan = plan_improvements(assessment, model)

    emit_body = args.emit_body or config.emit_body

    if not args.yes and not interactive:
        # dry run: show the verdict and the plan, write nothing
        out.write(render_summary(assessment, model))
        if plan.is_empty:
            out.write("improvement plan: (empty)\n")
        else:
            out.write("improvement plan:\n")
            for index, transformation in enumerate(plan, start=1):
                out.write(f"  {index}. [{transformation.target_guideline_id}] {transformation.description}\n")
            out.write("dry run: pass --yes or --interactive to apply\n")
        return EXIT_OK

    dialogue: _Dialogue | None = None
    if interactive:
        dialogue = _Dialogue(stdin, out, args.replay, args.record)
        config = _classification_dialogue(dialogue, model, config)
        unit, model, assessment = _analyse(input_path, config)
        plan = plan_improvements(assessment, model)

        total = len(plan)

        def decide(transformation, index, _total) -> str:
            answer = dialogue.ask(
                f"PROPOSAL {index}/{total}: {transformation.description} [y/n/q] > "
            ).casefold()
            if answer in ("y", "yes"):
                return "accept"
            if answer == "q":
                return "quit"
            return "skip"

        decision_source = decide
    else:
        decision_source = "accept-all"

    artifacts = improve(unit, model, plan, decision_source, emit_body=emit_body)
    if dialogue is not None:
        dialogue.save_record()

    output_path = Path(args.output) if args.output else input_path.with_suffix(".improved.ads")
    output_path.write_text(pretty_print(artifacts.improved_spec), encoding="utf-8")
    written = [output_path]
    if artifacts.sibling_spec is not None:
        sibling_path = output_path.parent / (artifacts.sibling_spec.package_name.lower() + ".ads")
        sibling_path.write_text(pretty_print(artifacts.sibling_spec), encoding="utf-8")
        written.append(sibling_path)
    if artifacts.body_skeleton is not None:
        body_path = output_path.with_suffix(".adb")
        body_path.write_text(artifacts.body_skeleton, encoding="utf-8")
        written.append(body_path)

    improved_model = build_model(artifacts.improved_spec, config.overrides)
    context = _sibling_context(output_path, artifacts.improved_spec, improved_model.structure_kind)
    improved_model = replace(improved_model, sibling_context=context)
    improved_assessment = assess(improved_model, config)

    out.write(render(improved_assessment, improved_model, artifacts, format=args.format))
    for path in written:
        out.write(f"wrote {path}\n")
    return EXIT_OK


if __name__ == "__main__":
    main()
