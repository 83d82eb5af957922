"""Pretty-printer round-trip and formatting checks."""

from __future__ import annotations

from rais.parser import parse_component
from rais.printer import pretty_print
from rais.syntax import ParsedUnit


def test_minimal_unit_text():
    assert pretty_print(ParsedUnit("P")) == "package P is\nend P;\n"


def test_keywords_lowercased_and_indent_three_spaces():
    unit = parse_component("PACKAGE P IS TYPE T IS PRIVATE; END P;")
    assert pretty_print(unit) == "package P is\n   type T is private;\nend P;\n"


def test_mode_is_printed_explicitly():
    unit = parse_component("package P is procedure Go (X : Integer); end P;")
    assert "procedure Go (X : in Integer);" in pretty_print(unit)


def test_raises_annotations_reemitted():
    unit = parse_component(
        "package P is\nprocedure A (X : in out Integer);\n--| raises: E1, E2\nend P;\n"
    )
    assert "   --| raises: E1, E2\n" in pretty_print(unit)


def test_generic_part_layout():
    unit = parse_component(
        "generic type E is private; type I is (<>); with procedure Note (X : E);"
        " package G is end G;"
    )
    text = pretty_print(unit)
    assert text.startswith(
        "generic\n"
        "   type E is private;\n"
        "   type I is (<>);\n"
        "   with procedure Note (X : in E);\n"
        "package G is\n"
    )


def test_record_layout():
    unit = parse_component(
        "package P is type R is record X : Integer; Y : Float; end record; end P;"
    )
    assert pretty_print(unit) == (
        "package P is\n"
        "   type R is record\n"
        "      X : Integer;\n"
        "      Y : Float;\n"
        "   end record;\n"
        "end P;\n"
    )


def test_corpus_round_trip(corpus_dir):
    for path in sorted(corpus_dir.glob("*.ads")):
        first = parse_component(path.read_text(), path.name)
        printed = pretty_print(first)
        second = parse_component(printed, path.name)
        assert first == second, path.name
        # printing is a fixed point after one pass
        assert pretty_print(second) == printed


def test_fixture_a_round_trip_identity(int_stack_unit):
    reparsed = parse_component(pretty_print(int_stack_unit), "roundtrip")
    assert reparsed == int_stack_unit


def test_generated_units_round_trip(unit_generator):
    for _ in range(300):
        unit = unit_generator.unit()
        printed = pretty_print(unit)
        assert parse_component(printed) == unit, printed


def test_printing_is_deterministic(dyn_list_unit):
    assert pretty_print(dyn_list_unit) == pretty_print(dyn_list_unit)
