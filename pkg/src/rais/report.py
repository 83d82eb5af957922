"""Rendering assessments as text tables, markdown, or versioned JSON.

All three formats agree on every number and outcome. Scores are printed
rounded half-up to two decimals while the band always comes from the
unrounded value, so display rounding can never move a component across a
band boundary. Output is deterministic: the same assessment renders to the
same bytes.
"""

from __future__ import annotations

import json
from decimal import Decimal, ROUND_HALF_UP

from .assessor import Assessment
from .guidelines import Outcome, catalog
from .improver import ImprovedArtifacts
from .model import ComponentModel
from .syntax import PrivateDef, TypeDecl

SCHEMA_VERSION = 1

FORMATS = ("text", "json", "md")


def rounded_score(score_percent: float) -> float:
    # quantize the shortest decimal form, not the raw binary float, so a
    # score written as 26.665 rounds up as a reader would expect
    return float(Decimal(str(score_percent)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def render(
    assessment: Assessment,
    model: ComponentModel,
    improvement: ImprovedArtifacts | None = None,
    format: str = "text",
) -> str:
    if format == "json":
        return json.dumps(build_document(assessment, model, improvement), indent=2) + "\n"
    if format == "md":
        return _render_tables(assessment, model, improvement, markdown=True)
    if format == "text":
        return _render_tables(assessment, model, improvement, markdown=False)
    raise ValueError(f"unknown report format '{format}'")


def render_summary(assessment: Assessment, model: ComponentModel) -> str:
    """Compact verdict used by the assess command's text output."""
    lines = [
        f"component : {model.unit.package_name}",
        f"class     : {_class_line(model)}",
        f"score     : {rounded_score(assessment.score_percent):.2f}%",
        f"band      : {assessment.band.label} reusable",
    ]
    if assessment.critical_violated:
        lines.append("critical  : a critical guideline is violated; band capped at weakly")
    violated = assessment.violated_ids()
    if violated:
        lines.append("violated  : " + ", ".join(violated))
    lines.extend(_notes(assessment, model))
    return "\n".join(lines) + "\n"


def build_document(
    assessment: Assessment,
    model: ComponentModel,
    improvement: ImprovedArtifacts | None = None,
) -> dict:
    """The JSON report document (schema version 1)."""
    subprograms = []
    for decl, op_class in model.classified_ops:
        parameters = [
            {"name": name, "mode": parameter.mode.value, "type": parameter.type_name}
            for parameter in decl.parameters
            for name in parameter.names
        ]
        subprograms.append(
            {
                "name": decl.name,
                "class": op_class.value,
                "parameters": parameters,
                "return_type": decl.return_type,
                "raises": list(decl.raises),
            }
        )

    private_types = [
        {"name": decl.name, "kind": "limited private" if decl.definition.limited else "private"}
        for decl in model.unit.visible_declarations
        if isinstance(decl, TypeDecl) and isinstance(decl.definition, PrivateDef)
    ]

    titles = {g.id: g.title for g in catalog()}
    significances = {g.id: g.significance.label for g in catalog()}
    guidelines = [
        {
            "id": result.guideline_id,
            "title": titles[result.guideline_id],
            "significance": significances[result.guideline_id],
            "outcome": result.outcome.value,
            "evidence": result.evidence,
            "weight": result.weight_used,
        }
        for result in assessment.results
    ]

    document = {
        "schema": SCHEMA_VERSION,
        "component": model.unit.package_name,
        "kind": model.structure_kind.value,
        "complex": model.is_complex,
        "generic": model.is_generic,
        "subprograms": subprograms,
        "private_types": private_types,
        "exceptions": list(model.exceptions),
        "guidelines": guidelines,
        "score": rounded_score(assessment.score_percent),
        "band": assessment.band.label,
        "critical_violated": assessment.critical_violated,
    }
    if improvement is not None:
        document["improvement"] = {
            "applied": [_transformation_entry(t) for t in improvement.applied],
            "skipped": [_transformation_entry(t) for t in improvement.skipped],
        }
    return document


def _transformation_entry(transformation) -> dict:
    return {
        "id": transformation.id,
        "guideline": transformation.target_guideline_id,
        "description": transformation.description,
    }


def _class_line(model: ComponentModel) -> str:
    parts = [model.structure_kind.value]
    parts.append("complex" if model.is_complex else "simple")
    parts.append("generic" if model.is_generic else "non-generic")
    return ", ".join(parts)


def _notes(assessment: Assessment, model: ComponentModel) -> list[str]:
    notes = []
    if model.element_independence_assumed and any(
        r.guideline_id == "G2" and r.outcome is not Outcome.NOT_APPLICABLE
        for r in assessment.results
    ):
        notes.append("note      : element independence assumed, confirm interactively")
    if model.is_complex and model.overrides.is_complex is None:
        notes.append(
            "note      : 'complex' derived from the representation"
            " (array, record, access, or limited private)"
        )
    extra_types = [
        decl.name for decl in model.unit.type_declarations()
        if decl.name.casefold() != model.adt_name.casefold()
    ]
    if extra_types:
        notes.append(
            "note      : additional types not analysed: " + ", ".join(sorted(set(extra_types)))
        )
    return notes


def _table(headers: list[str], rows: list[list[str]], markdown: bool) -> list[str]:
    if markdown:
        lines = ["| " + " | ".join(headers) + " |"]
        lines.append("| " + " | ".join("---" for _ in headers) + " |")
        for row in rows:
            lines.append("| " + " | ".join(row) + " |")
        return lines
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells: list[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return lines


def _render_tables(
    assessment: Assessment,
    model: ComponentModel,
    improvement: ImprovedArtifacts | None,
    markdown: bool,
) -> str:
    document = build_document(assessment, model, improvement)
    heading = "## " if markdown else ""
    lines: list[str] = []

    lines.append(f"{heading}Component {document['component']}")
    lines.append("")
    lines.append(f"class: {_class_line(model)}")
    lines.append(f"score: {document['score']:.2f}%")
    lines.append(f"band: {document['band']} reusable")
    if document["critical_violated"]:
        lines.append("critical violation: band capped at weakly")
    lines.append("")

    lines.append(f"{heading}Subprograms" if markdown else "Subprograms")
    if not markdown:
        lines.append("")
    rows = []
    for entry in document["subprograms"]:
        parameters = "; ".join(
            f"{p['name']} : {p['mode']} {p['type']}" for p in entry["parameters"]
        )
        rows.append(
            [
                entry["name"],
                entry["class"].replace("_", " "),
                parameters or "-",
                entry["return_type"] or "-",
                ", ".join(entry["raises"]) or "-",
            ]
        )
    if rows:
        lines.extend(_table(["name", "class", "parameters", "returns", "raises"], rows, markdown))
    else:
        lines.append("(none)")
    lines.append("")

    lines.append(f"{heading}Private types" if markdown else "Private types")
    if not markdown:
        lines.append("")
    if document["private_types"]:
        lines.extend(
            _table(
                ["name", "kind"],
                [[e["name"], e["kind"]] for e in document["private_types"]],
                markdown,
            )
        )
    else:
        lines.append("(none)")
    lines.append("")

    lines.append(f"{heading}Exceptions" if markdown else "Exceptions")
    if not markdown:
        lines.append("")
    lines.append(", ".join(document["exceptions"]) if document["exceptions"] else "(none)")
    lines.append("")

    lines.append(f"{heading}Guidelines" if markdown else "Guidelines")
    if not markdown:
        lines.append("")
    guideline_rows = [
        [
            e["id"],
            e["title"],
            e["significance"],
            e["outcome"].replace("_", " "),
            str(e["weight"]),
            e["evidence"] or "-",
        ]
        for e in document["guidelines"]
    ]
    lines.extend(
        _table(["id", "title", "significance", "outcome", "weight", "evidence"], guideline_rows, markdown)
    )
    lines.append("")

    for note in _notes(assessment, model):
        lines.append(note.replace("note      : ", "note: "))

    if improvement is not None:
        lines.append(f"{heading}Improvement" if markdown else "Improvement")
        if not markdown:
            lines.append("")
        if improvement.applied:
            lines.append("applied:")
            for t in improvement.applied:
                lines.append(f"  - [{t.target_guideline_id}] {t.description}")
        else:
            lines.append("applied: (none)")
        if improvement.skipped:
            lines.append("skipped:")
            for t in improvement.skipped:
                lines.append(f"  - [{t.target_guideline_id}] {t.description}")
        lines.append("")

    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def render_guideline_listing(format: str = "text") -> str:
    """The catalog itself (id, title, significance, applicability)."""
    if format == "json":
        entries = [
            {
                "id": g.id,
                "title": g.title,
                "description": g.description,
                "significance": g.significance.label,
                "weight": g.significance.weight,
                "applicability": g.applicability,
                "transformation": g.transformation_id,
            }
            for g in catalog()
        ]
        return json.dumps({"schema": SCHEMA_VERSION, "guidelines": entries}, indent=2) + "\n"
    rows = [
        [g.id, g.title, g.significance.label, str(g.significance.weight), g.applicability]
        for g in catalog()
    ]
    lines = _table(["id", "title", "significance", "weight", "applies to"], rows, format == "md")
    return "\n".join(lines) + "\n"
