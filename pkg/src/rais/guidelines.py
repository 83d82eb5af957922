"""The reuse-guideline catalog: fourteen evaluable rules with weights.

The catalog is fixed. G1.1 through G1.6 check for one operation class each,
so a component missing some classes still scores proportionally. G1.7 and
G8 cover exception declarations and their raises-annotations, G2 demands a
generic element parameter for complex structures (the one critical rule),
G3 a static/dynamic representation pair, G4 the matching privacy kind, G5
explicit array bounds, and G6/G7 the free-list management procedures of
dynamic representations. Only weights and enabled flags are configurable;
the rules themselves are not pluggable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .model import ComponentModel, OperationClass, Privacy, StructureKind, REQUIRED_CLASSES
from .syntax import ArrayDef, ConstrainedRange, SourceLocation, SubprogramKind

#: Procedure names the free-list rules look for, fixed by the catalog.
FREE_LIST_COUNTER = "Set_Max_Free_List_Size"
FREE_LIST_RELEASE = "Release_Free_List"

_CLASS_LABELS = {
    OperationClass.CREATION: "creation",
    OperationClass.TERMINATION: "termination",
    OperationClass.CONVERSION: "conversion",
    OperationClass.STATE_INQUIRY: "state inquiry",
    OperationClass.STATE_CHANGE: "state change",
    OperationClass.INPUT_OUTPUT: "input/output",
}


class Significance(enum.Enum):
    CRITICAL = 3
    IMPORTANT = 2
    NORMAL = 1

    @property
    def weight(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()


class Outcome(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class GuidelineResult:
    guideline_id: str
    outcome: Outcome
    evidence: str = ""  # violation evidence, satisfied detail, or N/A reason
    locations: tuple[SourceLocation, ...] = ()
    weight_used: int = 0


# A check returns (satisfied, detail-or-evidence, locations).
CheckResult = tuple[bool, str, tuple[SourceLocation, ...]]


@dataclass(frozen=True)
class Guideline:
    id: str
    title: str
    description: str
    significance: Significance
    applicability: str  # short human description of when the rule applies
    applies: Callable[[ComponentModel], str | None]  # N/A reason, or None
    check: Callable[[ComponentModel], CheckResult]
    transformation_id: str | None


def evaluate(guideline: Guideline, model: ComponentModel, weight: int | None = None) -> GuidelineResult:
    """Pure evaluation of one rule against a model."""
    effective = weight if weight is not None else guideline.significance.weight
    reason = guideline.applies(model)
    if reason is not None:
        return GuidelineResult(guideline.id, Outcome.NOT_APPLICABLE, reason, (), 0)
    satisfied, detail, locations = guideline.check(model)
    outcome = Outcome.SATISFIED if satisfied else Outcome.VIOLATED
    return GuidelineResult(guideline.id, outcome, detail, locations, effective)


# --- applicability predicates -------------------------------------------------


def _always(model: ComponentModel) -> str | None:
    return None


def _if_complex(model: ComponentModel) -> str | None:
    return None if model.is_complex else "structure is not complex"


def _if_kind_known(model: ComponentModel) -> str | None:
    if model.structure_kind is StructureKind.UNKNOWN:
        return "structure kind is unknown"
    return None


def _if_static_array(model: ComponentModel) -> str | None:
    if model.structure_kind is not StructureKind.STATIC:
        return f"structure kind is {model.structure_kind.value.capitalize()}"
    full = model.full_view()
    if full is None or not isinstance(full.definition, ArrayDef):
        return "full view is not an array"
    return None


def _if_dynamic(model: ComponentModel) -> str | None:
    if model.structure_kind is not StructureKind.DYNAMIC:
        return f"structure kind is {model.structure_kind.value.capitalize()}"
    return None


def _if_exceptions_or_annotations(model: ComponentModel) -> str | None:
    if model.exceptions or model.raises_map():
        return None
    return "no exceptions declared and no raises annotations present"


# --- checks -------------------------------------------------------------------


def _check_operation_class(op_class: OperationClass) -> Callable[[ComponentModel], CheckResult]:
    label = _CLASS_LABELS[op_class]

    def check(model: ComponentModel) -> CheckResult:
        ops = model.ops_in_class(op_class)
        if ops:
            locations = tuple(o.location for o in ops if o.location)
            return True, ", ".join(o.name for o in ops), locations
        return False, f"no {label} operation declared for '{model.adt_name}'", ()

    return check


def _check_exceptions_declared(model: ComponentModel) -> CheckResult:
    if model.exceptions:
        return True, ", ".join(model.exceptions), ()
    return False, f"component '{model.unit.package_name}' declares no exceptions", ()


def _check_generic_element(model: ComponentModel) -> CheckResult:
    if model.is_generic and model.element_is_generic_formal and model.element_independent_ops:
        return True, f"generic over {model.element_type}", ()
    location = model.adt_decl.location
    locations = (location,) if location else ()
    if not model.element_independent_ops:
        return (
            False,
            f"operations of '{model.adt_name}' are not independent of the element type",
            locations,
        )
    if model.element_type:
        evidence = (
            f"complex structure '{model.adt_name}' is not a generic over "
            f"its element type {model.element_type}"
        )
    else:
        evidence = f"complex structure '{model.adt_name}' is not a generic package"
    return False, evidence, locations


def _check_dual_representation(model: ComponentModel) -> CheckResult:
    context = model.sibling_context
    static_ok = bool(context and context.static_exists)
    dynamic_ok = bool(context and context.dynamic_exists)
    if static_ok and dynamic_ok:
        return True, "static and dynamic variants available", ()
    missing = []
    if not static_ok:
        missing.append("static")
    if not dynamic_ok:
        missing.append("dynamic")
    base = model.unit.package_name.lower()
    expected = " and ".join(f"{base}_{kind}.ads" for kind in missing)
    return False, f"no {' or '.join(missing)} variant found (expected {expected})", ()


def _check_private_kind(model: ComponentModel) -> CheckResult:
    location = model.adt_decl.location
    locations = (location,) if location else ()
    required = (
        Privacy.LIMITED_PRIVATE
        if model.structure_kind is StructureKind.DYNAMIC
        else Privacy.PRIVATE
    )
    if model.adt_privacy is required:
        return True, f"{required.value} matches the {model.structure_kind.value} representation", locations
    return (
        False,
        f"{model.structure_kind.value} structure '{model.adt_name}' is declared "
        f"{model.adt_privacy.value}; expected {required.value}",
        locations,
    )


def _check_constrained_array(model: ComponentModel) -> CheckResult:
    full = model.full_view()
    assert full is not None and isinstance(full.definition, ArrayDef)
    locations = (full.location,) if full.location else ()
    index = full.definition.index_range
    if isinstance(index, ConstrainedRange):
        return True, f"{index.low} .. {index.high}", locations
    return (
        False,
        f"array representation of '{model.adt_name}' has an unconstrained range",
        locations,
    )


def _check_named_procedure(required_name: str) -> Callable[[ComponentModel], CheckResult]:
    folded = required_name.casefold()

    def check(model: ComponentModel) -> CheckResult:
        for decl, _ in model.classified_ops:
            if decl.kind is SubprogramKind.PROCEDURE and decl.name.casefold() == folded:
                locations = (decl.location,) if decl.location else ()
                return True, decl.name, locations
        return False, f"no procedure {required_name} declared", ()

    return check


def _check_raises_coverage(model: ComponentModel) -> CheckResult:
    declared = {name.casefold(): name for name in model.exceptions}
    annotated: dict[str, str] = {}
    for decl, names in model.raises_map():
        for name in names:
            annotated.setdefault(name.casefold(), name)
    problems: list[str] = []
    for folded, name in declared.items():
        if folded not in annotated:
            problems.append(f"exception {name} is never named in a raises annotation")
    for folded, name in annotated.items():
        if folded not in declared:
            problems.append(f"raises annotation names undeclared exception {name}")
    if problems:
        return False, "; ".join(problems), ()
    covered = ", ".join(model.exceptions) if model.exceptions else "annotations consistent"
    return True, covered, ()


# --- the catalog ----------------------------------------------------------------


def _operation_guideline(index: int, op_class: OperationClass) -> Guideline:
    label = _CLASS_LABELS[op_class]
    return Guideline(
        id=f"G1.{index}",
        title=f"{label.capitalize()} operations provided",
        description=f"A reusable abstraction offers at least one {label} operation.",
        significance=Significance.NORMAL,
        applicability="always",
        applies=_always,
        check=_check_operation_class(op_class),
        transformation_id="add-operation-skeleton",
    )


_CATALOG: tuple[Guideline, ...] = tuple(
    [_operation_guideline(i + 1, op_class) for i, op_class in enumerate(REQUIRED_CLASSES)]
    + [
        Guideline(
            id="G1.7",
            title="Exceptions declared",
            description="Error conditions are surfaced through declared exceptions.",
            significance=Significance.IMPORTANT,
            applicability="always",
            applies=_always,
            check=_check_exceptions_declared,
            transformation_id="add-exceptions",
        ),
        Guideline(
            id="G2",
            title="Generic element parameter",
            description=(
                "A complex structure whose operations do not depend on the element "
                "type is declared generic, taking the element type as a formal "
                "parameter."
            ),
            significance=Significance.CRITICAL,
            applicability="complex structures",
            applies=_if_complex,
            check=_check_generic_element,
            transformation_id="genericize",
        ),
        Guideline(
            id="G3",
            title="Dual static and dynamic representations",
            description=(
                "Both an array-backed and an access-backed variant of the "
                "abstraction are available to choose from."
            ),
            significance=Significance.NORMAL,
            applicability="always",
            applies=_always,
            check=_check_dual_representation,
            transformation_id="generate-dual-sibling",
        ),
        Guideline(
            id="G4",
            title="Privacy kind matches representation",
            description=(
                "Dynamic structures are limited private so assignment stays under "
                "the component's control; static structures are plain private."
            ),
            significance=Significance.IMPORTANT,
            applicability="structure kind known",
            applies=_if_kind_known,
            check=_check_private_kind,
            transformation_id="adjust-private-kind",
        ),
        Guideline(
            id="G5",
            title="Constrained array representation",
            description="Array representations of static structures declare explicit bounds.",
            significance=Significance.NORMAL,
            applicability="static array structures",
            applies=_if_static_array,
            check=_check_constrained_array,
            transformation_id="constrain-array",
        ),
        Guideline(
            id="G6",
            title="Free-list size counter provided",
            description=(
                f"Dynamic structures expose a procedure {FREE_LIST_COUNTER} that "
                "caps the size of the storage free list."
            ),
            significance=Significance.NORMAL,
            applicability="dynamic structures",
            applies=_if_dynamic,
            check=_check_named_procedure(FREE_LIST_COUNTER),
            transformation_id="add-freelist-ops",
        ),
        Guideline(
            id="G7",
            title="Free-list release provided",
            description=(
                f"Dynamic structures expose a procedure {FREE_LIST_RELEASE} that "
                "returns the whole free list to the system."
            ),
            significance=Significance.NORMAL,
            applicability="dynamic structures",
            applies=_if_dynamic,
            check=_check_named_procedure(FREE_LIST_RELEASE),
            transformation_id="add-freelist-ops",
        ),
        Guideline(
            id="G8",
            title="Exception annotations consistent",
            description=(
                "Every declared exception is named by at least one raises "
                "annotation, and every annotated name is declared; body skeletons "
                "emit one handler per annotation."
            ),
            significance=Significance.IMPORTANT,
            applicability="exceptions or annotations present",
            applies=_if_exceptions_or_annotations,
            check=_check_raises_coverage,
            transformation_id="annotate-raises",
        ),
    ]
)


def catalog() -> tuple[Guideline, ...]:
    """The full rule catalog, in its fixed order."""
    return _CATALOG


def guideline_by_id(guideline_id: str) -> Guideline:
    for guideline in _CATALOG:
        if guideline.id == guideline_id:
            return guideline
    raise KeyError(guideline_id)


def catalog_ids() -> tuple[str, ...]:
    return tuple(g.id for g in _CATALOG)
