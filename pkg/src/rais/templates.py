"""Component templates: the canonical inventory of a good static or dynamic
abstraction.

Each template lists at least one subprogram profile per required operation
class, phrased over the two placeholders ADT and Element, plus the exceptions
such a representation should declare and which operations raise them. The
improver uses templates both ways: to generate missing operation skeletons
and to instantiate a whole sibling package when only one representation of
an abstraction exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import OperationClass, StructureKind, REQUIRED_CLASSES
from .syntax import (
    AccessDef,
    ArrayDef,
    ConstrainedRange,
    Declaration,
    ExceptionDecl,
    FormalType,
    FormalTypeConstraint,
    Mode,
    ObjectDecl,
    Parameter,
    ParsedUnit,
    PrivateDef,
    RecordComponent,
    RecordDef,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
)

#: Placeholder markers used in profile specs.
ADT = "{ADT}"
ELEMENT = "{Element}"


@dataclass(frozen=True)
class ProfileSpec:
    """A subprogram profile with placeholder type names."""

    kind: SubprogramKind
    name: str
    parameters: tuple[tuple[tuple[str, ...], Mode, str], ...] = ()
    return_type: str | None = None

    def instantiate(self, adt: str, element: str, name: str | None = None) -> SubprogramDecl:
        def subst(type_name: str) -> str:
            return {ADT: adt, ELEMENT: element}.get(type_name, type_name)

        parameters = tuple(
            Parameter(names, mode, subst(type_name)) for names, mode, type_name in self.parameters
        )
        return_type = subst(self.return_type) if self.return_type else None
        return SubprogramDecl(self.kind, name or self.name, parameters, return_type)


@dataclass(frozen=True)
class ComponentTemplate:
    kind: StructureKind
    operations: tuple[tuple[OperationClass, tuple[ProfileSpec, ...]], ...]
    required_exceptions: tuple[str, ...]
    #: exception name -> operation names (template or component ones) that raise it
    raises_associations: tuple[tuple[str, tuple[str, ...]], ...]
    extra_procedures: tuple[ProfileSpec, ...] = ()

    def profiles_for(self, op_class: OperationClass) -> tuple[ProfileSpec, ...]:
        for cls, profiles in self.operations:
            if cls is op_class:
                return profiles
        return ()

    def raisers_of(self, exception_name: str) -> tuple[str, ...]:
        folded = exception_name.casefold()
        for name, raisers in self.raises_associations:
            if name.casefold() == folded:
                return raisers
        return ()


def _proc(name: str, *parameters: tuple[tuple[str, ...], Mode, str]) -> ProfileSpec:
    return ProfileSpec(SubprogramKind.PROCEDURE, name, parameters)


def _func(name: str, return_type: str, *parameters: tuple[tuple[str, ...], Mode, str]) -> ProfileSpec:
    return ProfileSpec(SubprogramKind.FUNCTION, name, parameters, return_type)


_S = (("S",), Mode.IN, ADT)
_S_INOUT = (("S",), Mode.IN_OUT, ADT)
_ITEM_IN = (("Item",), Mode.IN, ELEMENT)
_ITEM_OUT = (("Item",), Mode.OUT, ELEMENT)

_STATIC_TEMPLATE = ComponentTemplate(
    kind=StructureKind.STATIC,
    operations=(
        (OperationClass.CREATION, (_func("Create", ADT), _proc("Initialize", _S_INOUT))),
        (OperationClass.TERMINATION, (_proc("Clear", _S_INOUT),)),
        (OperationClass.CONVERSION, (_func("To_String", "String", _S),)),
        (
            OperationClass.STATE_INQUIRY,
            (
                _func("Is_Empty", "Boolean", _S),
                _func("Is_Full", "Boolean", _S),
                _func("Length", "Natural", _S),
            ),
        ),
        (OperationClass.STATE_CHANGE, (_proc("Insert", _S_INOUT, _ITEM_IN), _proc("Remove", _S_INOUT, _ITEM_OUT))),
        (OperationClass.INPUT_OUTPUT, (_proc("Put", _S),)),
    ),
    required_exceptions=("Overflow", "Underflow"),
    raises_associations=(
        ("Overflow", ("Push", "Insert", "Add", "Append", "Enqueue")),
        ("Underflow", ("Pop", "Remove", "Dequeue")),
    ),
)

_DYNAMIC_TEMPLATE = ComponentTemplate(
    kind=StructureKind.DYNAMIC,
    operations=(
        (OperationClass.CREATION, (_func("Create", ADT), _proc("Initialize", _S_INOUT))),
        (OperationClass.TERMINATION, (_proc("Destroy", _S_INOUT), _proc("Clear", _S_INOUT))),
        (OperationClass.CONVERSION, (_func("To_String", "String", _S),)),
        (
            OperationClass.STATE_INQUIRY,
            (_func("Is_Empty", "Boolean", _S), _func("Length", "Natural", _S)),
        ),
        (OperationClass.STATE_CHANGE, (_proc("Insert", _S_INOUT, _ITEM_IN), _proc("Remove", _S_INOUT, _ITEM_OUT))),
        (OperationClass.INPUT_OUTPUT, (_proc("Put", _S),)),
    ),
    required_exceptions=("Storage_Exhausted",),
    raises_associations=(
        ("Storage_Exhausted", ("Create", "Push", "Insert", "Add", "Append", "Enqueue")),
    ),
    extra_procedures=(
        _proc("Set_Max_Free_List_Size", (("N",), Mode.IN, "Natural")),
        _proc("Release_Free_List"),
    ),
)


def template_for(kind: StructureKind) -> ComponentTemplate:
    """Dynamic template for dynamic structures, static otherwise (a humble
    array representation is the default for unknown kinds).
    """
    if kind is StructureKind.DYNAMIC:
        return _DYNAMIC_TEMPLATE
    return _STATIC_TEMPLATE


def instantiate_component(
    template: ComponentTemplate, package_name: str, adt_name: str
) -> ParsedUnit:
    """A complete generic package built from the template alone."""
    element = "Element"
    visible: list[Declaration] = [
        TypeDecl(
            adt_name,
            PrivateDef(limited=template.kind is StructureKind.DYNAMIC),
        ),
        ExceptionDecl(template.required_exceptions),
    ]
    for op_class in REQUIRED_CLASSES:
        for profile in template.profiles_for(op_class):
            decl = profile.instantiate(adt_name, element)
            raises = tuple(
                exc
                for exc in template.required_exceptions
                if profile.name.casefold() in {n.casefold() for n in template.raisers_of(exc)}
            )
            if raises:
                decl = SubprogramDecl(
                    decl.kind, decl.name, decl.parameters, decl.return_type, raises
                )
            visible.append(decl)
    for profile in template.extra_procedures:
        visible.append(profile.instantiate(adt_name, element))

    private: list[Declaration]
    if template.kind is StructureKind.DYNAMIC:
        node_name = f"{adt_name}_Node"
        private = [
            TypeDecl(node_name, RecordDef((RecordComponent("Value", element),))),
            TypeDecl(adt_name, AccessDef(node_name)),
        ]
    else:
        private = [
            ObjectDecl("Max_Size", "Positive", is_constant=True, initializer="100"),
            TypeDecl(adt_name, ArrayDef(ConstrainedRange("1", "Max_Size"), element)),
        ]

    return ParsedUnit(
        package_name=package_name,
        generic_formals=(FormalType(element, FormalTypeConstraint.PRIVATE),),
        visible_declarations=tuple(visible),
        private_declarations=tuple(private),
    )
