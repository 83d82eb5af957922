"""Semantic view of a parsed unit: the abstraction under assessment.

The model identifies the primary abstract data type (the first private or
limited-private type, else the first declared type), derives its structure
kind and element type from the full view in the private part, and classifies
every subprogram into an operation class. All of it can be overridden: name
heuristics only supply deterministic defaults for batch runs, and the
override set is where interactive or configured answers land.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .syntax import (
    AccessDef,
    ArrayDef,
    EnumerationDef,
    FormalType,
    FormalTypeConstraint,
    IntegerRangeDef,
    Mode,
    ParsedUnit,
    PrivateDef,
    RecordDef,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
)


class ModelError(Exception):
    """The unit offers nothing to assess, or an override names nothing."""


class StructureKind(enum.Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"
    UNKNOWN = "unknown"


class Privacy(enum.Enum):
    PRIVATE = "private"
    LIMITED_PRIVATE = "limited private"
    NOT_PRIVATE = "not private"


class OperationClass(enum.Enum):
    CREATION = "creation"
    TERMINATION = "termination"
    CONVERSION = "conversion"
    STATE_INQUIRY = "state_inquiry"
    STATE_CHANGE = "state_change"
    INPUT_OUTPUT = "input_output"
    UNCLASSIFIED = "unclassified"


#: The six classes a complete component provides, in catalog order.
REQUIRED_CLASSES = (
    OperationClass.CREATION,
    OperationClass.TERMINATION,
    OperationClass.CONVERSION,
    OperationClass.STATE_INQUIRY,
    OperationClass.STATE_CHANGE,
    OperationClass.INPUT_OUTPUT,
)

_NAME_PREFIXES: tuple[tuple[OperationClass, tuple[str, ...]], ...] = (
    (OperationClass.CREATION, ("create", "new_", "init", "initialize", "make")),
    (OperationClass.TERMINATION, ("destroy", "free", "delete", "dispose", "finalize", "clear")),
    (OperationClass.CONVERSION, ("to_", "from_", "convert")),
    (OperationClass.INPUT_OUTPUT, ("put", "get", "read", "write", "print", "display", "image")),
    (OperationClass.STATE_INQUIRY, ("is_", "has_", "length", "size", "count", "empty", "full", "top", "peek")),
)


@dataclass(frozen=True)
class OverrideSet:
    """Answers supplied by configuration or the interactive dialogue."""

    op_classes: tuple[tuple[str, OperationClass], ...] = ()
    structure_kind: StructureKind | None = None
    is_complex: bool | None = None
    element_type: str | None = None
    element_independent: bool | None = None

    def op_class_for(self, name: str) -> OperationClass | None:
        folded = name.casefold()
        for op_name, op_class in self.op_classes:
            if op_name.casefold() == folded:
                return op_class
        return None

    def with_op_class(self, name: str, op_class: OperationClass) -> OverrideSet:
        kept = tuple(p for p in self.op_classes if p[0].casefold() != name.casefold())
        return replace(self, op_classes=kept + ((name, op_class),))


@dataclass(frozen=True)
class SiblingContext:
    """Which representation variants of the abstraction are available."""

    static_exists: bool
    dynamic_exists: bool


@dataclass(frozen=True)
class ComponentModel:
    unit: ParsedUnit
    adt_name: str
    adt_privacy: Privacy
    structure_kind: StructureKind
    is_complex: bool
    element_type: str | None
    is_generic: bool
    element_is_generic_formal: bool
    element_independent_ops: bool
    element_independence_assumed: bool
    classified_ops: tuple[tuple[SubprogramDecl, OperationClass], ...]
    exceptions: tuple[str, ...]
    sibling_context: SiblingContext | None = None
    overrides: OverrideSet = field(default=OverrideSet(), compare=False)

    def class_of(self, subprogram: SubprogramDecl) -> OperationClass:
        for decl, op_class in self.classified_ops:
            if decl is subprogram:
                return op_class
        raise KeyError(subprogram.name)

    def ops_in_class(self, op_class: OperationClass) -> tuple[SubprogramDecl, ...]:
        return tuple(d for d, c in self.classified_ops if c is op_class)

    def raises_map(self) -> tuple[tuple[SubprogramDecl, tuple[str, ...]], ...]:
        return tuple((d, d.raises) for d, _ in self.classified_ops if d.raises)

    @property
    def adt_decl(self) -> TypeDecl:
        decl = self.unit.find_type(self.adt_name)
        assert decl is not None
        return decl

    def full_view(self) -> TypeDecl | None:
        return _full_view(self.unit, self.adt_name, self.adt_privacy)


def _select_adt(unit: ParsedUnit) -> TypeDecl:
    types = unit.type_declarations()
    if not types:
        raise ModelError(f"package {unit.package_name} declares no types: no abstraction to assess")
    for decl in types:
        if isinstance(decl.definition, PrivateDef):
            return decl
    return types[0]


def _full_view(unit: ParsedUnit, adt_name: str, privacy: Privacy) -> TypeDecl | None:
    """The declaration giving the ADT's representation, if the file shows one."""
    if privacy is Privacy.NOT_PRIVATE:
        return unit.find_type(adt_name)
    folded = adt_name.casefold()
    for decl in unit.private_declarations:
        if (
            isinstance(decl, TypeDecl)
            and decl.name.casefold() == folded
            and not isinstance(decl.definition, PrivateDef)
        ):
            return decl
    return None


def _declared_access_types(unit: ParsedUnit) -> set[str]:
    return {
        d.name.casefold()
        for d in unit.type_declarations()
        if isinstance(d.definition, AccessDef)
    }


def detect_structure_kind(
    unit: ParsedUnit,
    adt_name: str,
    override: StructureKind | None = None,
) -> StructureKind:
    """Static for array/plain-record representations, dynamic for access-based
    ones or limited-private types whose representation is hidden. Scalar full
    views count as static: a fixed-size value involves no indirection. The
    override wins unconditionally.
    """
    if override is not None:
        return override
    adt = unit.find_type(adt_name)
    if adt is None:
        return StructureKind.UNKNOWN
    privacy = _privacy_of(adt)
    full = _full_view(unit, adt_name, privacy)
    if full is None:
        if privacy is Privacy.LIMITED_PRIVATE:
            return StructureKind.DYNAMIC
        return StructureKind.UNKNOWN
    definition = full.definition
    if isinstance(definition, AccessDef):
        return StructureKind.DYNAMIC
    if isinstance(definition, RecordDef):
        access_types = _declared_access_types(unit)
        if any(c.type_name.casefold() in access_types for c in definition.components):
            return StructureKind.DYNAMIC
        return StructureKind.STATIC
    if isinstance(definition, (ArrayDef, EnumerationDef, IntegerRangeDef)):
        return StructureKind.STATIC
    return StructureKind.UNKNOWN


def _privacy_of(adt: TypeDecl) -> Privacy:
    if isinstance(adt.definition, PrivateDef):
        return Privacy.LIMITED_PRIVATE if adt.definition.limited else Privacy.PRIVATE
    return Privacy.NOT_PRIVATE


def classify_operation(
    subprogram: SubprogramDecl,
    adt_name: str,
    overrides: OverrideSet | None = None,
) -> OperationClass:
    """First matching rule wins, so e.g. ``Clear`` is termination even though
    it also changes state. Overrides are absolute.
    """
    if overrides is not None:
        forced = overrides.op_class_for(subprogram.name)
        if forced is not None:
            return forced
    name = subprogram.name.casefold()
    adt = adt_name.casefold()
    is_function = subprogram.kind is SubprogramKind.FUNCTION
    returns_adt = is_function and (subprogram.return_type or "").casefold() == adt
    adt_modes = subprogram.parameter_modes_of(adt_name)

    if name.startswith(_NAME_PREFIXES[0][1]) or (returns_adt and not adt_modes):
        return OperationClass.CREATION
    if name.startswith(_NAME_PREFIXES[1][1]):
        return OperationClass.TERMINATION
    if name.startswith(_NAME_PREFIXES[2][1]):
        return OperationClass.CONVERSION
    if name.startswith(_NAME_PREFIXES[3][1]):
        return OperationClass.INPUT_OUTPUT
    if (is_function and not returns_adt and adt_modes and all(m is Mode.IN for m in adt_modes)) or name.startswith(
        _NAME_PREFIXES[4][1]
    ):
        return OperationClass.STATE_INQUIRY
    if subprogram.kind is SubprogramKind.PROCEDURE and any(
        m in (Mode.OUT, Mode.IN_OUT) for m in adt_modes
    ):
        return OperationClass.STATE_CHANGE
    return OperationClass.UNCLASSIFIED


def classification_is_low_confidence(subprogram: SubprogramDecl, adt_name: str) -> bool:
    """True when no name prefix matched: the class rests on the signature
    shape alone (or nothing), which the dialogue should confirm.
    """
    name = subprogram.name.casefold()
    return not any(name.startswith(prefixes) for _, prefixes in _NAME_PREFIXES)


def element_independent_ops(model: ComponentModel) -> bool:
    """Whether operations stay independent of the element type. At the
    specification level this holds by construction; the override exists
    because true independence is semantic and needs a human answer.
    """
    return model.element_independent_ops


def build_model(
    unit: ParsedUnit,
    overrides: OverrideSet | None = None,
    sibling_context: SiblingContext | None = None,
) -> ComponentModel:
    """Build the assessable view of a unit; deterministic for fixed inputs."""
    overrides = overrides or OverrideSet()
    subprograms = unit.subprograms()
    known = {s.name.casefold() for s in subprograms}
    for name, _ in overrides.op_classes:
        if name.casefold() not in known:
            raise ModelError(f"operation class override names unknown subprogram '{name}'")

    adt = _select_adt(unit)
    privacy = _privacy_of(adt)
    structure_kind = detect_structure_kind(unit, adt.name, overrides.structure_kind)
    full = _full_view(unit, adt.name, privacy)

    if overrides.is_complex is not None:
        is_complex = overrides.is_complex
    else:
        is_complex = privacy is Privacy.LIMITED_PRIVATE or (
            full is not None and isinstance(full.definition, (ArrayDef, RecordDef, AccessDef))
        )

    formal_private = next(
        (
            f.name
            for f in unit.generic_formals
            if isinstance(f, FormalType)
            and f.constraint in (FormalTypeConstraint.PRIVATE, FormalTypeConstraint.LIMITED_PRIVATE)
        ),
        None,
    )

    if overrides.element_type is not None:
        element_type = overrides.element_type
    elif unit.is_generic and formal_private is not None:
        element_type = formal_private
    elif full is not None:
        element_type = _element_of(full)
    else:
        element_type = None

    formal_type_names = {
        f.name.casefold() for f in unit.generic_formals if isinstance(f, FormalType)
    }
    element_is_generic_formal = bool(
        unit.is_generic and element_type and element_type.casefold() in formal_type_names
    )

    if overrides.element_independent is not None:
        independent, assumed = overrides.element_independent, False
    else:
        independent, assumed = True, True

    classified = tuple(
        (s, classify_operation(s, adt.name, overrides)) for s in subprograms
    )

    return ComponentModel(
        unit=unit,
        adt_name=adt.name,
        adt_privacy=privacy,
        structure_kind=structure_kind,
        is_complex=is_complex,
        element_type=element_type,
        is_generic=unit.is_generic,
        element_is_generic_formal=element_is_generic_formal,
        element_independent_ops=independent,
        element_independence_assumed=assumed,
        classified_ops=classified,
        exceptions=unit.exception_names(),
        sibling_context=sibling_context,
        overrides=overrides,
    )


def _element_of(full: TypeDecl) -> str | None:
    definition = full.definition
    if isinstance(definition, ArrayDef):
        return definition.element_type
    if isinstance(definition, AccessDef):
        return definition.designated_type
    if isinstance(definition, RecordDef) and definition.components:
        return definition.components[0].type_name
    return None
