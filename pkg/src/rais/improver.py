"""Planning and applying the source transformations that repair violations.

A plan holds one transformation per violated guideline that the tool can fix
mechanically, in a fixed order chosen so later steps see the effect of
earlier ones: the package is made generic first so operation skeletons are
phrased over the generic element type, exceptions are declared before the
annotation sweep runs, and the annotation sweep runs after skeletons so it
covers freshly added operations too. Guideline violations that a syntactic
rewrite cannot honestly fix (a structure already generic, operations the
engineer marked element-dependent, a type with no private view to adjust)
are left out of the plan and stay in the report.

All transformations are pure tree-to-tree functions; writing improved specs,
sibling files and body skeletons to disk is the command-line layer's job.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .guidelines import FREE_LIST_COUNTER, FREE_LIST_RELEASE
from .assessor import Assessment
from .model import (
    ComponentModel,
    OperationClass,
    Privacy,
    StructureKind,
    REQUIRED_CLASSES,
    build_model,
)
from .printer import INDENT, profile_text
from .syntax import (
    AccessDef,
    ArrayDef,
    ConstrainedRange,
    Declaration,
    ExceptionDecl,
    FormalType,
    FormalTypeConstraint,
    ObjectDecl,
    Parameter,
    ParsedUnit,
    PrivateDef,
    RecordComponent,
    RecordDef,
    SubprogramDecl,
    TypeDecl,
    UnconstrainedRange,
)
from .templates import ComponentTemplate, instantiate_component, template_for


class TransformError(Exception):
    """A transformation's precondition does not hold: a planning bug."""


TRANSFORMATION_IDS = frozenset(
    {
        "genericize",
        "add-operation-skeleton",
        "add-exceptions",
        "adjust-private-kind",
        "constrain-array",
        "add-freelist-ops",
        "annotate-raises",
        "generate-dual-sibling",
    }
)


@dataclass(frozen=True)
class Transformation:
    id: str
    target_guideline_id: str
    description: str
    operation_class: OperationClass | None = None
    introduces: tuple[str, ...] = ()


@dataclass(frozen=True)
class ImprovementPlan:
    transformations: tuple[Transformation, ...]

    def __len__(self) -> int:
        return len(self.transformations)

    def __iter__(self):
        return iter(self.transformations)

    @property
    def is_empty(self) -> bool:
        return not self.transformations


@dataclass(frozen=True)
class ImprovedArtifacts:
    improved_spec: ParsedUnit
    body_skeleton: str | None
    sibling_spec: ParsedUnit | None
    applied: tuple[Transformation, ...]
    skipped: tuple[Transformation, ...]


def _unique_name(base: str, taken: set[str]) -> str:
    if base.casefold() not in taken:
        return base
    counter = 2
    while f"{base}_{counter}".casefold() in taken:
        counter += 1
    return f"{base}_{counter}"


def _element_name(unit: ParsedUnit, model: ComponentModel) -> str:
    for formal in unit.generic_formals:
        if isinstance(formal, FormalType) and formal.constraint in (
            FormalTypeConstraint.PRIVATE,
            FormalTypeConstraint.LIMITED_PRIVATE,
        ):
            return formal.name
    return model.element_type or "Element"


# --- planning ----------------------------------------------------------------


def plan_improvements(assessment: Assessment, model: ComponentModel) -> ImprovementPlan:
    """One transformation per violated, mechanically fixable guideline.

    annotate-raises is additionally planned whenever add-exceptions is: the
    newly declared exceptions will need annotations once every operation is
    in place, and the sweep runs late enough in the order to see them all.
    """
    violated = set(assessment.violated_ids())
    enabled = {r.guideline_id for r in assessment.results}
    transformations: list[Transformation] = []

    if "G2" in violated and _genericize_applicable(model):
        transformations.append(
            Transformation(
                "genericize",
                "G2",
                f"make {model.unit.package_name} generic over its element type "
                f"{model.element_type or 'Element'}",
            )
        )
    if "G4" in violated and model.adt_privacy is not Privacy.NOT_PRIVATE:
        required = (
            "limited private"
            if model.structure_kind is StructureKind.DYNAMIC
            else "private"
        )
        transformations.append(
            Transformation(
                "adjust-private-kind",
                "G4",
                f"declare {model.adt_name} as {required}",
            )
        )
    if "G5" in violated:
        transformations.append(
            Transformation(
                "constrain-array",
                "G5",
                f"constrain the array representation of {model.adt_name} to 1 .. Max_Size",
            )
        )
    template = template_for(model.structure_kind)
    if "G1.7" in violated:
        names = ", ".join(template.required_exceptions)
        transformations.append(
            Transformation(
                "add-exceptions",
                "G1.7",
                f"declare exceptions {names} and annotate the operations that raise them",
                introduces=template.required_exceptions,
            )
        )
    for index, op_class in enumerate(REQUIRED_CLASSES, start=1):
        guideline_id = f"G1.{index}"
        if guideline_id in violated:
            names = ", ".join(p.name for p in template.profiles_for(op_class))
            transformations.append(
                Transformation(
                    "add-operation-skeleton",
                    guideline_id,
                    f"add {op_class.value.replace('_', ' ')} operation skeletons: {names}",
                    operation_class=op_class,
                    introduces=tuple(p.name for p in template.profiles_for(op_class)),
                )
            )
    if "G6" in violated:
        transformations.append(
            Transformation(
                "add-freelist-ops",
                "G6",
                f"add procedure {FREE_LIST_COUNTER}",
                introduces=(FREE_LIST_COUNTER,),
            )
        )
    if "G7" in violated:
        transformations.append(
            Transformation(
                "add-freelist-ops",
                "G7",
                f"add procedure {FREE_LIST_RELEASE}",
                introduces=(FREE_LIST_RELEASE,),
            )
        )
    if ("G8" in violated or ("G1.7" in violated and "G8" in enabled)) and not any(
        t.id == "annotate-raises" for t in transformations
    ):
        transformations.append(
            Transformation(
                "annotate-raises",
                "G8",
                "attach raises annotations for every unannotated exception",
            )
        )
    if "G3" in violated:
        missing = _missing_sibling_kind(model)
        sibling = _sibling_name(model.unit.package_name, missing)
        transformations.append(
            Transformation(
                "generate-dual-sibling",
                "G3",
                f"generate the {missing.value} sibling package {sibling}",
                introduces=(sibling,),
            )
        )

    order = [
        "genericize",
        "adjust-private-kind",
        "constrain-array",
        "add-exceptions",
        "add-operation-skeleton",
        "add-freelist-ops",
        "annotate-raises",
        "generate-dual-sibling",
    ]
    transformations.sort(key=lambda t: order.index(t.id))
    return ImprovementPlan(tuple(transformations))


def _genericize_applicable(model: ComponentModel) -> bool:
    return not model.is_generic and model.element_independent_ops


def _missing_sibling_kind(model: ComponentModel) -> StructureKind:
    context = model.sibling_context
    static_present = (context.static_exists if context else False) or (
        model.structure_kind is StructureKind.STATIC
    )
    if not static_present:
        return StructureKind.STATIC
    return StructureKind.DYNAMIC


def _sibling_name(package_name: str, kind: StructureKind) -> str:
    suffix = "Static" if kind is StructureKind.STATIC else "Dynamic"
    return f"{package_name}_{suffix}"


def sibling_file_name(package_name: str, kind: StructureKind) -> str:
    return _sibling_name(package_name, kind).lower() + ".ads"


# --- application ---------------------------------------------------------------


def apply_transformation(
    unit: ParsedUnit, transformation: Transformation, model: ComponentModel
) -> ParsedUnit:
    """Apply one transformation; for generate-dual-sibling the returned unit
    is the new sibling package and the input unit is untouched.
    """
    handlers: dict[str, Callable[[ParsedUnit, Transformation, ComponentModel], ParsedUnit]] = {
        "genericize": _genericize,
        "add-operation-skeleton": _add_operation_skeletons,
        "add-exceptions": _add_exceptions,
        "adjust-private-kind": _adjust_private_kind,
        "constrain-array": _constrain_array,
        "add-freelist-ops": _add_freelist_ops,
        "annotate-raises": _annotate_raises,
        "generate-dual-sibling": _generate_dual_sibling,
    }
    try:
        handler = handlers[transformation.id]
    except KeyError:
        raise TransformError(f"unknown transformation '{transformation.id}'") from None
    return handler(unit, transformation, model)


def _genericize(unit: ParsedUnit, _t: Transformation, model: ComponentModel) -> ParsedUnit:
    if unit.is_generic:
        raise TransformError(f"{unit.package_name} is already generic")
    formal_name = _unique_name("Element", unit.declared_names())
    concrete = (model.element_type or "").casefold()

    def subst(type_name: str) -> str:
        return formal_name if concrete and type_name.casefold() == concrete else type_name

    def rewrite(decl: Declaration, is_full_view: bool) -> Declaration:
        if isinstance(decl, SubprogramDecl):
            parameters = tuple(
                Parameter(p.names, p.mode, subst(p.type_name), p.default)
                for p in decl.parameters
            )
            return_type = subst(decl.return_type) if decl.return_type else None
            return replace(decl, parameters=parameters, return_type=return_type)
        if is_full_view and isinstance(decl, TypeDecl):
            definition = decl.definition
            if isinstance(definition, ArrayDef):
                definition = replace(definition, element_type=subst(definition.element_type))
            elif isinstance(definition, AccessDef):
                definition = replace(definition, designated_type=subst(definition.designated_type))
            elif isinstance(definition, RecordDef):
                definition = RecordDef(
                    tuple(RecordComponent(c.name, subst(c.type_name)) for c in definition.components)
                )
            return replace(decl, definition=definition)
        return decl

    full_view = model.full_view()

    def rewrite_all(decls: tuple[Declaration, ...]) -> tuple[Declaration, ...]:
        return tuple(rewrite(d, d is full_view) for d in decls)

    return replace(
        unit,
        generic_formals=(FormalType(formal_name, FormalTypeConstraint.PRIVATE),),
        visible_declarations=rewrite_all(unit.visible_declarations),
        private_declarations=rewrite_all(unit.private_declarations),
    )


def _instantiate_with_raises(
    template: ComponentTemplate,
    profile,
    adt: str,
    element: str,
    unit: ParsedUnit,
    name: str,
) -> SubprogramDecl:
    decl = profile.instantiate(adt, element, name)
    declared_exceptions = {n.casefold() for n in unit.exception_names()}
    raises = tuple(
        exc
        for exc in template.required_exceptions
        if exc.casefold() in declared_exceptions
        and profile.name.casefold() in {n.casefold() for n in template.raisers_of(exc)}
    )
    if raises:
        decl = replace(decl, raises=raises)
    return decl


def _add_operation_skeletons(
    unit: ParsedUnit, transformation: Transformation, model: ComponentModel
) -> ParsedUnit:
    if transformation.operation_class is None:
        raise TransformError("add-operation-skeleton needs an operation class")
    template = template_for(model.structure_kind)
    profiles = template.profiles_for(transformation.operation_class)
    if not profiles:
        raise TransformError(
            f"template has no profiles for {transformation.operation_class.value}"
        )
    element = _element_name(unit, model)
    taken = unit.declared_names()
    added: list[Declaration] = []
    for profile in profiles:
        name = _unique_name(profile.name, taken)
        taken.add(name.casefold())
        added.append(
            _instantiate_with_raises(template, profile, model.adt_name, element, unit, name)
        )
    return replace(unit, visible_declarations=unit.visible_declarations + tuple(added))


def _add_exceptions(unit: ParsedUnit, _t: Transformation, model: ComponentModel) -> ParsedUnit:
    if unit.exception_names():
        raise TransformError(f"{unit.package_name} already declares exceptions")
    template = template_for(model.structure_kind)
    taken = unit.declared_names()
    names = tuple(_unique_name(n, taken) for n in template.required_exceptions)
    visible = unit.visible_declarations + (ExceptionDecl(names),)
    unit = replace(unit, visible_declarations=visible)
    # annotate the operations the template knows to raise these exceptions
    for original, name in zip(template.required_exceptions, names):
        raisers = {n.casefold() for n in template.raisers_of(original)}
        unit = _annotate_ops(unit, name, lambda d: d.name.casefold() in raisers)
    return unit


def _annotate_ops(
    unit: ParsedUnit, exception_name: str, wanted: Callable[[SubprogramDecl], bool]
) -> ParsedUnit:
    def update(decls: tuple[Declaration, ...]) -> tuple[Declaration, ...]:
        out: list[Declaration] = []
        for decl in decls:
            if (
                isinstance(decl, SubprogramDecl)
                and wanted(decl)
                and exception_name.casefold() not in {r.casefold() for r in decl.raises}
            ):
                decl = replace(decl, raises=decl.raises + (exception_name,))
            out.append(decl)
        return tuple(out)

    return replace(
        unit,
        visible_declarations=update(unit.visible_declarations),
        private_declarations=update(unit.private_declarations),
    )


def _adjust_private_kind(
    unit: ParsedUnit, _t: Transformation, model: ComponentModel
) -> ParsedUnit:
    if model.adt_privacy is Privacy.NOT_PRIVATE:
        raise TransformError(f"{model.adt_name} has no private view to adjust")
    limited = model.structure_kind is StructureKind.DYNAMIC
    if (model.adt_privacy is Privacy.LIMITED_PRIVATE) == limited:
        raise TransformError(f"{model.adt_name} already has the required privacy kind")
    adt_folded = model.adt_name.casefold()

    def update(decls: tuple[Declaration, ...]) -> tuple[Declaration, ...]:
        out: list[Declaration] = []
        for decl in decls:
            if (
                isinstance(decl, TypeDecl)
                and decl.name.casefold() == adt_folded
                and isinstance(decl.definition, PrivateDef)
            ):
                decl = replace(decl, definition=PrivateDef(limited=limited))
            out.append(decl)
        return tuple(out)

    return replace(unit, visible_declarations=update(unit.visible_declarations))


def _constrain_array(unit: ParsedUnit, _t: Transformation, model: ComponentModel) -> ParsedUnit:
    full = model.full_view()
    if full is None or not isinstance(full.definition, ArrayDef):
        raise TransformError(f"{model.adt_name} has no array representation")
    if not isinstance(full.definition.index_range, UnconstrainedRange):
        raise TransformError(f"array representation of {model.adt_name} is already constrained")
    bound = "Max_Size"
    have_bound = bound.casefold() in unit.declared_names()
    new_full = replace(
        full, definition=replace(full.definition, index_range=ConstrainedRange("1", bound))
    )

    def update(decls: tuple[Declaration, ...]) -> tuple[Declaration, ...]:
        out: list[Declaration] = []
        for decl in decls:
            if decl is full:
                if not have_bound and not unit.is_generic:
                    out.append(ObjectDecl(bound, "Positive", is_constant=True, initializer="100"))
                out.append(new_full)
            else:
                out.append(decl)
        return tuple(out)

    formals = unit.generic_formals
    if unit.is_generic and not have_bound:
        formals = formals + (FormalType(bound, FormalTypeConstraint.DISCRETE),)
    return replace(
        unit,
        generic_formals=formals,
        visible_declarations=update(unit.visible_declarations),
        private_declarations=update(unit.private_declarations),
    )


def _add_freelist_ops(
    unit: ParsedUnit, transformation: Transformation, model: ComponentModel
) -> ParsedUnit:
    template = template_for(StructureKind.DYNAMIC)
    wanted = {n.casefold() for n in transformation.introduces}
    existing = {s.name.casefold() for s in unit.subprograms()}
    added: list[Declaration] = []
    for profile in template.extra_procedures:
        if profile.name.casefold() not in wanted:
            continue
        if profile.name.casefold() in existing:
            raise TransformError(f"procedure {profile.name} already declared")
        added.append(profile.instantiate(model.adt_name, _element_name(unit, model)))
    if not added:
        raise TransformError("no free-list procedure to add")
    return replace(unit, visible_declarations=unit.visible_declarations + tuple(added))


def _annotate_raises(unit: ParsedUnit, _t: Transformation, model: ComponentModel) -> ParsedUnit:
    template = template_for(model.structure_kind)
    declared = {n.casefold(): n for n in unit.exception_names()}
    annotated = {
        name.casefold() for s in unit.subprograms() for name in s.raises
    }
    # declare any annotated-but-missing exceptions so annotations stay honest
    missing = []
    for sub in unit.subprograms():
        for name in sub.raises:
            if name.casefold() not in declared and name.casefold() not in {
                m.casefold() for m in missing
            }:
                missing.append(name)
    if missing:
        unit = replace(
            unit, visible_declarations=unit.visible_declarations + (ExceptionDecl(tuple(missing)),)
        )
    # annotate every declared-but-unannotated exception
    state_change = {d.name.casefold() for d, c in model.classified_ops if c is OperationClass.STATE_CHANGE}
    for folded, name in declared.items():
        if folded in annotated:
            continue
        raisers = {n.casefold() for n in template.raisers_of(name)}
        current = {s.name.casefold() for s in unit.subprograms()}
        if raisers & current:
            unit = _annotate_ops(unit, name, lambda d, r=raisers: d.name.casefold() in r)
        elif state_change:
            unit = _annotate_ops(unit, name, lambda d, sc=state_change: d.name.casefold() in sc)
    return unit


def _generate_dual_sibling(
    unit: ParsedUnit, _t: Transformation, model: ComponentModel
) -> ParsedUnit:
    missing = _missing_sibling_kind(model)
    return instantiate_component(
        template_for(missing), _sibling_name(unit.package_name, missing), model.adt_name
    )


# --- end-to-end improvement ------------------------------------------------------

DecisionSource = str | Callable[[Transformation, int, int], str]


def improve(
    unit: ParsedUnit,
    model: ComponentModel,
    plan: ImprovementPlan,
    decision_source: DecisionSource = "accept-all",
    emit_body: bool = False,
) -> ImprovedArtifacts:
    """Apply the accepted transformations in plan order.

    ``decision_source`` is ``"accept-all"``, ``"reject-all"``, or a callable
    answering ``accept``, ``skip`` or ``quit`` per transformation. The unit
    is re-modelled after each step so later transformations see earlier ones.
    """
    current = unit
    current_model = model
    sibling: ParsedUnit | None = None
    applied: list[Transformation] = []
    skipped: list[Transformation] = []
    quitting = False

    total = len(plan.transformations)
    for index, transformation in enumerate(plan.transformations, start=1):
        if quitting:
            skipped.append(transformation)
            continue
        if decision_source == "accept-all":
            decision = "accept"
        elif decision_source == "reject-all":
            decision = "skip"
        else:
            decision = decision_source(transformation, index, total)
            if decision == "quit":
                quitting = True
                decision = "skip"
        if decision != "accept":
            skipped.append(transformation)
            continue
        result = apply_transformation(current, transformation, current_model)
        if transformation.id == "generate-dual-sibling":
            sibling = result
        else:
            current = result
            current_model = build_model(current, model.overrides, model.sibling_context)
        applied.append(transformation)

    body = body_skeleton(current) if emit_body else None
    return ImprovedArtifacts(
        improved_spec=current,
        body_skeleton=body,
        sibling_spec=sibling,
        applied=tuple(applied),
        skipped=tuple(skipped),
    )


def body_skeleton(unit: ParsedUnit) -> str:
    """Package body text: one stub per subprogram, plus one handler arm per
    annotated exception, re-raising until the engineer fills them in.
    """
    lines: list[str] = [f"package body {unit.package_name} is", ""]
    for decl in unit.subprograms():
        lines.append(INDENT + profile_text(decl) + " is")
        lines.append(INDENT + "begin")
        lines.append(INDENT * 2 + "null;  -- TODO implement")
        if decl.raises:
            lines.append(INDENT + "exception")
            for name in decl.raises:
                lines.append(INDENT * 2 + f"when {name} =>")
                lines.append(INDENT * 3 + "-- TODO handle")
                lines.append(INDENT * 3 + "raise;")
        lines.append(INDENT + f"end {decl.name};")
        lines.append("")
    lines.append(f"end {unit.package_name};")
    return "\n".join(lines) + "\n"
