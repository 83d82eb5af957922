"""Catalog shape and per-guideline evaluation."""

from __future__ import annotations

from rais.guidelines import (
    Outcome,
    Significance,
    catalog,
    catalog_ids,
    evaluate,
    guideline_by_id,
)
from rais.improver import TRANSFORMATION_IDS
from rais.model import OverrideSet, SiblingContext, build_model
from rais.parser import parse_component


def test_catalog_size_and_order():
    ids = catalog_ids()
    assert len(ids) == 14
    assert ids == (
        "G1.1", "G1.2", "G1.3", "G1.4", "G1.5", "G1.6", "G1.7",
        "G2", "G3", "G4", "G5", "G6", "G7", "G8",
    )


def test_catalog_ids_unique():
    ids = catalog_ids()
    assert len(set(ids)) == len(ids)


def test_significance_defaults():
    assert guideline_by_id("G2").significance is Significance.CRITICAL
    for important in ("G1.7", "G4", "G8"):
        assert guideline_by_id(important).significance is Significance.IMPORTANT
    for normal in ("G1.1", "G1.6", "G3", "G5", "G6", "G7"):
        assert guideline_by_id(normal).significance is Significance.NORMAL


def test_significance_weights():
    assert Significance.CRITICAL.weight == 3
    assert Significance.IMPORTANT.weight == 2
    assert Significance.NORMAL.weight == 1


def test_every_transformation_id_exists():
    for guideline in catalog():
        assert guideline.transformation_id in TRANSFORMATION_IDS


def test_g2_violation_evidence_on_fixture_a(int_stack_model):
    result = evaluate(guideline_by_id("G2"), int_stack_model)
    assert result.outcome is Outcome.VIOLATED
    assert result.evidence == (
        "complex structure 'Stack' is not a generic over its element type Integer"
    )
    assert result.weight_used == 3
    assert result.locations and result.locations[0].line == 4


def test_g2_not_applicable_for_simple_structures():
    unit = parse_component("package P is type E is (A, B); end P;")
    result = evaluate(guideline_by_id("G2"), build_model(unit))
    assert result.outcome is Outcome.NOT_APPLICABLE
    assert result.evidence == "structure is not complex"
    assert result.weight_used == 0


def test_g2_violated_when_independence_overridden(dyn_list_unit):
    model = build_model(dyn_list_unit, OverrideSet(element_independent=False))
    result = evaluate(guideline_by_id("G2"), model)
    assert result.outcome is Outcome.VIOLATED
    assert "not independent" in result.evidence


def test_g2_satisfied_on_fixture_b(dyn_list_model):
    result = evaluate(guideline_by_id("G2"), dyn_list_model)
    assert result.outcome is Outcome.SATISFIED


def test_g1_5_satisfied_with_op_names(int_stack_model):
    result = evaluate(guideline_by_id("G1.5"), int_stack_model)
    assert result.outcome is Outcome.SATISFIED
    assert result.evidence == "Push, Pop"


def test_g1_classes_violated_on_fixture_a(int_stack_model):
    for guideline_id in ("G1.1", "G1.2", "G1.3", "G1.4", "G1.6"):
        result = evaluate(guideline_by_id(guideline_id), int_stack_model)
        assert result.outcome is Outcome.VIOLATED
        assert "no" in result.evidence and "Stack" in result.evidence


def test_g6_not_applicable_reason_on_static(int_stack_model):
    result = evaluate(guideline_by_id("G6"), int_stack_model)
    assert result.outcome is Outcome.NOT_APPLICABLE
    assert result.evidence == "structure kind is Static"


def test_g6_g7_on_fixture_b(dyn_list_model):
    counter = evaluate(guideline_by_id("G6"), dyn_list_model)
    release = evaluate(guideline_by_id("G7"), dyn_list_model)
    assert counter.outcome is Outcome.SATISFIED
    assert counter.evidence == "Set_Max_Free_List_Size"
    assert release.outcome is Outcome.VIOLATED
    assert release.evidence == "no procedure Release_Free_List declared"


def test_g3_requires_both_variants(int_stack_unit):
    model = build_model(int_stack_unit)
    violated = evaluate(guideline_by_id("G3"), model)
    assert violated.outcome is Outcome.VIOLATED
    assert "int_stack_dynamic.ads" in violated.evidence

    model = build_model(int_stack_unit, sibling_context=SiblingContext(True, True))
    assert evaluate(guideline_by_id("G3"), model).outcome is Outcome.SATISFIED

    model = build_model(int_stack_unit, sibling_context=SiblingContext(True, False))
    assert evaluate(guideline_by_id("G3"), model).outcome is Outcome.VIOLATED


def test_g4_private_kind_rules():
    static_private = parse_component(
        "package P is type T is private; private type T is array (1 .. 3) of Integer; end P;"
    )
    assert evaluate(guideline_by_id("G4"), build_model(static_private)).outcome is Outcome.SATISFIED

    static_limited = parse_component(
        "package P is type T is limited private; private type T is array (1 .. 3) of Integer; end P;"
    )
    result = evaluate(guideline_by_id("G4"), build_model(static_limited))
    assert result.outcome is Outcome.VIOLATED
    assert "expected private" in result.evidence

    dynamic_plain = parse_component(
        "package P is type T is private; private type T is access Node; end P;"
    )
    result = evaluate(guideline_by_id("G4"), build_model(dynamic_plain))
    assert result.outcome is Outcome.VIOLATED
    assert "expected limited private" in result.evidence


def test_g4_not_applicable_when_kind_unknown():
    unit = parse_component("package P is type T is private; end P;")
    result = evaluate(guideline_by_id("G4"), build_model(unit))
    assert result.outcome is Outcome.NOT_APPLICABLE
    assert result.evidence == "structure kind is unknown"


def test_g5_constrained_and_unconstrained(int_stack_model):
    assert evaluate(guideline_by_id("G5"), int_stack_model).outcome is Outcome.SATISFIED

    unconstrained = parse_component(
        "package P is type T is private; private"
        " type T is array (Positive range <>) of Integer; end P;"
    )
    result = evaluate(guideline_by_id("G5"), build_model(unconstrained))
    assert result.outcome is Outcome.VIOLATED
    assert "unconstrained" in result.evidence


def test_g5_not_applicable_without_array(dyn_list_model):
    result = evaluate(guideline_by_id("G5"), dyn_list_model)
    assert result.outcome is Outcome.NOT_APPLICABLE


def test_g8_coverage_cases():
    covered = parse_component(
        "package P is\n"
        "   type T is private;\n"
        "   E : exception;\n"
        "   procedure Touch (X : in out T);\n"
        "   --| raises: E\n"
        "end P;\n"
    )
    assert evaluate(guideline_by_id("G8"), build_model(covered)).outcome is Outcome.SATISFIED

    unannotated = parse_component(
        "package P is type T is private; E : exception;"
        " procedure Touch (X : in out T); end P;"
    )
    result = evaluate(guideline_by_id("G8"), build_model(unannotated))
    assert result.outcome is Outcome.VIOLATED
    assert "E is never named" in result.evidence

    undeclared = parse_component(
        "package P is\n"
        "   type T is private;\n"
        "   procedure Touch (X : in out T);\n"
        "   --| raises: Ghost\n"
        "end P;\n"
    )
    result = evaluate(guideline_by_id("G8"), build_model(undeclared))
    assert result.outcome is Outcome.VIOLATED
    assert "undeclared exception Ghost" in result.evidence


def test_g8_not_applicable_without_exceptions(int_stack_model):
    result = evaluate(guideline_by_id("G8"), int_stack_model)
    assert result.outcome is Outcome.NOT_APPLICABLE
    assert result.evidence == "no exceptions declared and no raises annotations present"


def test_weight_override_applies_to_result(int_stack_model):
    result = evaluate(guideline_by_id("G3"), int_stack_model, weight=5)
    assert result.weight_used == 5


def test_not_applicable_weight_is_zero(int_stack_model):
    result = evaluate(guideline_by_id("G6"), int_stack_model, weight=5)
    assert result.weight_used == 0


def test_evaluation_is_pure(int_stack_model):
    for guideline in catalog():
        assert evaluate(guideline, int_stack_model) == evaluate(guideline, int_stack_model)


def test_violations_name_a_concrete_item(int_stack_model, dyn_list_model):
    for model in (int_stack_model, dyn_list_model):
        for guideline in catalog():
            result = evaluate(guideline, model)
            if result.outcome is Outcome.VIOLATED:
                assert result.evidence.strip()
