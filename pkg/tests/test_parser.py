"""Parser behaviour: grammar coverage, annotations, error reporting."""

from __future__ import annotations

import pytest

from rais.parser import ParseError, parse_component
from rais.syntax import (
    AccessDef,
    ArrayDef,
    ConstrainedRange,
    EnumerationDef,
    ExceptionDecl,
    FormalSubprogram,
    FormalType,
    FormalTypeConstraint,
    IntegerRangeDef,
    Mode,
    ObjectDecl,
    Parameter,
    PrivateDef,
    RecordDef,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
    UnconstrainedRange,
)


def test_minimal_package():
    unit = parse_component("package P is end P;")
    assert unit.package_name == "P"
    assert unit.visible_declarations == ()
    assert unit.private_declarations == ()
    assert not unit.is_generic


def test_end_name_is_optional():
    unit = parse_component("package P is end;")
    assert unit.package_name == "P"


def test_fixture_a_structure(int_stack_unit):
    # hand-traced: one private type, two procedures, one array full view
    visible = int_stack_unit.visible_declarations
    assert len(visible) == 3
    stack, push, pop = visible
    assert isinstance(stack, TypeDecl)
    assert stack.name == "Stack"
    assert stack.definition == PrivateDef(limited=False)

    assert isinstance(push, SubprogramDecl)
    assert push.kind is SubprogramKind.PROCEDURE
    assert push.parameters == (
        Parameter(("S",), Mode.IN_OUT, "Stack"),
        Parameter(("X",), Mode.IN, "Integer"),
    )
    assert isinstance(pop, SubprogramDecl)
    assert pop.parameters[1].mode is Mode.OUT

    (full_view,) = int_stack_unit.private_declarations
    assert isinstance(full_view, TypeDecl)
    assert full_view.name == "Stack"
    assert full_view.definition == ArrayDef(ConstrainedRange("1", "100"), "Integer")


def test_construct_outside_subset_reports_first_token():
    with pytest.raises(ParseError) as info:
        parse_component("package P is task T; end P;", "t.ads")
    error = info.value
    assert error.expected == "declaration"
    assert error.found == "task"
    assert (error.location.line, error.location.column) == (1, 14)
    assert error.location.file_name == "t.ads"


def test_keywords_are_case_insensitive():
    unit = parse_component("PACKAGE P IS TYPE T IS PRIVATE; END P;")
    (decl,) = unit.visible_declarations
    assert isinstance(decl, TypeDecl)
    assert decl.definition == PrivateDef(limited=False)


def test_identifier_case_preserved_as_first_seen():
    unit = parse_component(
        "package Stacks is\n"
        "   type Stack is private;\n"
        "   procedure Push (S : in out STACK);\n"
        "end STACKS;\n"
    )
    assert unit.package_name == "Stacks"
    push = unit.visible_declarations[1]
    assert push.parameters[0].type_name == "Stack"


def test_generic_part_formal_kinds():
    unit = parse_component(
        "generic\n"
        "   type Element is private;\n"
        "   type Key is limited private;\n"
        "   type Index is (<>);\n"
        "   with function Less (L, R : Element) return Boolean;\n"
        "package G is end G;\n"
    )
    element, key, index, less = unit.generic_formals
    assert element == FormalType("Element", FormalTypeConstraint.PRIVATE)
    assert key == FormalType("Key", FormalTypeConstraint.LIMITED_PRIVATE)
    assert index == FormalType("Index", FormalTypeConstraint.DISCRETE)
    assert isinstance(less, FormalSubprogram)
    assert less.profile.kind is SubprogramKind.FUNCTION
    assert less.profile.parameters == (Parameter(("L", "R"), Mode.IN, "Element"),)


def test_duplicate_generic_formal_rejected():
    with pytest.raises(ParseError) as info:
        parse_component("generic type E is private; type E is (<>); package P is end P;")
    assert "distinct" in info.value.expected


def test_type_definition_forms():
    unit = parse_component(
        "package P is\n"
        "   type A is array (Positive range <>) of Integer;\n"
        "   type R is record\n"
        "      X : Integer;\n"
        "      Y : Float;\n"
        "   end record;\n"
        "   type H is access R;\n"
        "   type E is (Red, Green, Blue);\n"
        "   type N is range 1 .. 10;\n"
        "   type L is limited private;\n"
        "end P;\n"
    )
    a, r, h, e, n, l = unit.visible_declarations
    assert a.definition == ArrayDef(UnconstrainedRange("Positive"), "Integer")
    assert isinstance(r.definition, RecordDef) and len(r.definition.components) == 2
    assert h.definition == AccessDef("R")
    assert e.definition == EnumerationDef(("Red", "Green", "Blue"))
    assert n.definition == IntegerRangeDef("1", "10")
    assert l.definition == PrivateDef(limited=True)


def test_empty_record_is_accepted():
    unit = parse_component("package P is type R is record end record; end P;")
    (decl,) = unit.visible_declarations
    assert decl.definition == RecordDef(())


def test_exception_and_object_declarations():
    unit = parse_component(
        "package P is\n"
        "   Overflow, Underflow : exception;\n"
        "   Max : constant Natural := 100;\n"
        "   Current : Natural;\n"
        "end P;\n"
    )
    exceptions, constant, variable = unit.visible_declarations
    assert exceptions == ExceptionDecl(("Overflow", "Underflow"))
    assert constant == ObjectDecl("Max", "Natural", is_constant=True, initializer="100")
    assert variable == ObjectDecl("Current", "Natural", is_constant=False, initializer=None)


def test_parameter_defaults_and_modes():
    unit = parse_component(
        "package P is\n"
        "   function Make (Rows, Cols : in Natural := 1; Fill : Boolean := True) return Integer;\n"
        "end P;\n"
    )
    (make,) = unit.visible_declarations
    rows, fill = make.parameters
    assert rows == Parameter(("Rows", "Cols"), Mode.IN, "Natural", "1")
    assert fill == Parameter(("Fill",), Mode.IN, "Boolean", "True")
    assert make.return_type == "Integer"


def test_parenthesised_default_expression_is_captured():
    unit = parse_component(
        "package P is procedure Go (X : Integer := (1 + 2) * 3); end P;"
    )
    (go,) = unit.visible_declarations
    assert go.parameters[0].default == "(1 + 2) * 3"


@pytest.mark.parametrize(
    "source",
    [
        "package P is\n--| raises: Full\nprocedure Push (S : in out Integer);\nend P;",
        "package P is\nprocedure Push (S : in out Integer);\n--| raises: Full\nend P;",
        "package P is\nprocedure Push (S : in out Integer); --| raises: Full\nend P;",
    ],
    ids=["preceding", "following", "same-line"],
)
def test_raises_annotation_attachment_positions(source):
    unit = parse_component(source)
    (push,) = unit.subprograms()
    assert push.raises == ("Full",)


def test_annotation_between_two_subprograms_attaches_above():
    unit = parse_component(
        "package P is\n"
        "procedure A (X : in out Integer);\n"
        "--| raises: E\n"
        "procedure B (X : in out Integer);\n"
        "end P;\n"
    )
    a, b = unit.subprograms()
    assert a.raises == ("E",)
    assert b.raises == ()


def test_annotation_block_merges_names():
    unit = parse_component(
        "package P is\n"
        "procedure A (X : in out Integer);\n"
        "--| raises: E1, E2\n"
        "--| raises: E3\n"
        "end P;\n"
    )
    (a,) = unit.subprograms()
    assert a.raises == ("E1", "E2", "E3")


def test_unrelated_structured_comment_is_dropped():
    unit = parse_component(
        "package P is\n--| purpose: demo\nprocedure A (X : in out Integer);\nend P;\n"
    )
    (a,) = unit.subprograms()
    assert a.raises == ()


def test_annotation_adjacent_to_nothing_is_dropped():
    unit = parse_component(
        "package P is\nprocedure A (X : Integer);\n\n--| raises: E\n\nend P;\n"
    )
    (a,) = unit.subprograms()
    assert a.raises == ()


def test_malformed_raises_annotation_is_an_error():
    with pytest.raises(ParseError):
        parse_component("package P is\n--| raises: 123\nprocedure A (X : Integer);\nend P;")


@pytest.mark.parametrize(
    "source, expected_fragment",
    [
        ("package P__Q is end;", "identifier"),
        ("package P is end Q;", "package name 'P'"),
        ("package P is", "'end'"),
        ("package P is end P; garbage", "end of input"),
        ("package P is X : exception Y; end P;", "';'"),
        ("procedure Standalone;", "'package'"),
    ],
)
def test_parse_errors(source, expected_fragment):
    with pytest.raises(ParseError) as info:
        parse_component(source)
    assert expected_fragment in info.value.expected


def test_location_monotonicity(corpus_dir):
    for path in sorted(corpus_dir.glob("*.ads")):
        unit = parse_component(path.read_text(), path.name)
        lines = [d.location.line for d in unit.all_declarations() if d.location]
        assert lines == sorted(lines)
        assert all(
            d.location.file_name == path.name
            for d in unit.all_declarations()
            if d.location
        )


def test_parse_is_deterministic(corpus_dir):
    text = (corpus_dir / "dyn_list.ads").read_text()
    assert parse_component(text, "a") == parse_component(text, "b")


def test_crlf_line_endings(corpus_dir):
    unix = (corpus_dir / "dyn_list.ads").read_text()
    windows = unix.replace("\n", "\r\n")
    assert parse_component(windows, "crlf") == parse_component(unix, "lf")
