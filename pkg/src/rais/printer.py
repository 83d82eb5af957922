"""Canonical source rendering for parsed units.

Formatting is fixed: 3-space indentation, one declaration per line, keywords
in lower case, identifiers in their original spelling. Raises-annotations are
re-emitted as ``--| raises:`` lines directly below their subprogram, which is
one of the positions the parser attaches from, so printing then re-parsing
reproduces the same tree. Ordinary comments from the original source are gone
by this point; that loss is intentional.
"""

from __future__ import annotations

from .syntax import (
    AccessDef,
    ArrayDef,
    ConstrainedRange,
    Declaration,
    EnumerationDef,
    ExceptionDecl,
    FormalSubprogram,
    FormalType,
    FormalTypeConstraint,
    IntegerRangeDef,
    ObjectDecl,
    Parameter,
    ParsedUnit,
    PrivateDef,
    RecordDef,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
)

INDENT = "   "


def pretty_print(unit: ParsedUnit) -> str:
    """Render a unit to canonical source text (total on well-formed trees)."""
    lines: list[str] = []
    if unit.generic_formals:
        lines.append("generic")
        for formal in unit.generic_formals:
            if isinstance(formal, FormalType):
                lines.append(INDENT + _formal_type(formal))
            elif isinstance(formal, FormalSubprogram):
                lines.append(INDENT + "with " + profile_text(formal.profile) + ";")
    lines.append(f"package {unit.package_name} is")
    for decl in unit.visible_declarations:
        lines.extend(_declaration(decl))
    if unit.private_declarations:
        lines.append("private")
        for decl in unit.private_declarations:
            lines.extend(_declaration(decl))
    lines.append(f"end {unit.package_name};")
    return "\n".join(lines) + "\n"


def _formal_type(formal: FormalType) -> str:
    if formal.constraint is FormalTypeConstraint.DISCRETE:
        return f"type {formal.name} is (<>);"
    return f"type {formal.name} is {formal.constraint.value};"


def _declaration(decl: Declaration) -> list[str]:
    if isinstance(decl, TypeDecl):
        return _type_decl(decl)
    if isinstance(decl, SubprogramDecl):
        lines = [INDENT + profile_text(decl) + ";"]
        if decl.raises:
            lines.append(INDENT + "--| raises: " + ", ".join(decl.raises))
        return lines
    if isinstance(decl, ExceptionDecl):
        return [INDENT + ", ".join(decl.names) + " : exception;"]
    if isinstance(decl, ObjectDecl):
        text = decl.name + " : "
        if decl.is_constant:
            text += "constant "
        text += decl.type_name
        if decl.initializer is not None:
            text += " := " + decl.initializer
        return [INDENT + text + ";"]
    raise TypeError(f"unknown declaration {decl!r}")


def _type_decl(decl: TypeDecl) -> list[str]:
    head = f"type {decl.name} is"
    definition = decl.definition
    if isinstance(definition, PrivateDef):
        kind = "limited private" if definition.limited else "private"
        return [f"{INDENT}{head} {kind};"]
    if isinstance(definition, ArrayDef):
        index = definition.index_range
        if isinstance(index, ConstrainedRange):
            range_text = f"{index.low} .. {index.high}"
        else:
            range_text = f"{index.index_type} range <>"
        return [f"{INDENT}{head} array ({range_text}) of {definition.element_type};"]
    if isinstance(definition, RecordDef):
        lines = [f"{INDENT}{head} record"]
        for component in definition.components:
            lines.append(f"{INDENT * 2}{component.name} : {component.type_name};")
        lines.append(f"{INDENT}end record;")
        return lines
    if isinstance(definition, AccessDef):
        return [f"{INDENT}{head} access {definition.designated_type};"]
    if isinstance(definition, EnumerationDef):
        return [f"{INDENT}{head} ({', '.join(definition.literals)});"]
    if isinstance(definition, IntegerRangeDef):
        return [f"{INDENT}{head} range {definition.low} .. {definition.high};"]
    raise TypeError(f"unknown type definition {definition!r}")


def profile_text(decl: SubprogramDecl) -> str:
    """The declaration text of a subprogram, without the closing semicolon."""
    text = decl.kind.value + " " + decl.name
    if decl.parameters:
        text += " (" + "; ".join(_parameter(p) for p in decl.parameters) + ")"
    if decl.kind is SubprogramKind.FUNCTION:
        text += f" return {decl.return_type}"
    return text


def _parameter(parameter: Parameter) -> str:
    text = ", ".join(parameter.names) + " : " + parameter.mode.value + " " + parameter.type_name
    if parameter.default is not None:
        text += " := " + parameter.default
    return text
