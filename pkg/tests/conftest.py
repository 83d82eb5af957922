"""Shared fixtures: corpus paths, parsed units, and a random unit generator
for round-trip property tests."""

from __future__ import annotations

import random
from io import StringIO
from pathlib import Path

import pytest

from rais.model import ComponentModel, build_model
from rais.parser import parse_component
from rais.syntax import (
    ArrayDef,
    ConstrainedRange,
    Declaration,
    EnumerationDef,
    ExceptionDecl,
    FormalSubprogram,
    FormalType,
    FormalTypeConstraint,
    IntegerRangeDef,
    Mode,
    ObjectDecl,
    Parameter,
    ParsedUnit,
    PrivateDef,
    RecordComponent,
    RecordDef,
    AccessDef,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
    UnconstrainedRange,
)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


def load_corpus_unit(name: str) -> ParsedUnit:
    path = CORPUS_DIR / name
    return parse_component(path.read_text(encoding="utf-8"), name)


@pytest.fixture(scope="session")
def int_stack_unit() -> ParsedUnit:
    return load_corpus_unit("int_stack.ads")


@pytest.fixture(scope="session")
def int_stack_model(int_stack_unit) -> ComponentModel:
    return build_model(int_stack_unit)


@pytest.fixture(scope="session")
def dyn_list_unit() -> ParsedUnit:
    return load_corpus_unit("dyn_list.ads")


@pytest.fixture(scope="session")
def dyn_list_model(dyn_list_unit) -> ComponentModel:
    return build_model(dyn_list_unit)


def run_cli(argv: list[str], stdin_text: str = "") -> tuple[int, str, str]:
    """Run the command line in-process with captured streams."""
    from rais.cli import run

    out, err = StringIO(), StringIO()
    code = run(argv, StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cli():
    return run_cli


# --- random unit generation ----------------------------------------------------

_NAMES = [
    "Alpha", "Beta", "Gamma", "Omega", "Epsilon", "Zeta", "Eta", "Theta",
    "Widget", "Gadget", "Handle", "Cursor", "Buffer_Kind", "Node_Ref",
    "Item_Count", "Slot", "Table", "Entry_Kind", "Key", "Value_Part",
]
_TYPE_NAMES = ["Integer", "Natural", "Boolean", "Character", "Float", "String"]
_OPAQUES = ["0", "1", "100", "True", "(1 + 2)"]


class UnitGenerator:
    """Seeded generator of well-formed parse trees.

    Names are drawn with a fixed spelling each, so the parser's first-seen
    case normalisation cannot make a printed-then-reparsed tree differ from
    the generated one.
    """

    def __init__(self, rng: random.Random):
        self.rng = rng

    def fresh_names(self, count: int) -> list[str]:
        return self.rng.sample(_NAMES, count)

    def opaque(self) -> str:
        return self.rng.choice(_OPAQUES)

    def type_name(self) -> str:
        return self.rng.choice(_TYPE_NAMES)

    def parameter(self, names: list[str]) -> Parameter:
        count = self.rng.choice((1, 1, 2))
        parameter_names = tuple(names.pop() for _ in range(count))
        mode = self.rng.choice(list(Mode))
        default = self.opaque() if mode is Mode.IN and self.rng.random() < 0.3 else None
        return Parameter(parameter_names, mode, self.type_name(), default)

    def subprogram(self, name: str, exceptions: list[str]) -> SubprogramDecl:
        kind = self.rng.choice(list(SubprogramKind))
        parameter_names = [f"P{i}" for i in range(6, 0, -1)]
        parameters = tuple(
            self.parameter(parameter_names) for _ in range(self.rng.randint(0, 3))
        )
        return_type = self.type_name() if kind is SubprogramKind.FUNCTION else None
        raises = ()
        if exceptions and self.rng.random() < 0.4:
            raises = tuple(
                self.rng.sample(exceptions, self.rng.randint(1, len(exceptions)))
            )
        return SubprogramDecl(kind, name, parameters, return_type, raises)

    def type_definition(self):
        roll = self.rng.randrange(7)
        if roll == 0:
            return PrivateDef(self.rng.random() < 0.5)
        if roll == 1:
            return ArrayDef(ConstrainedRange("1", self.opaque()), self.type_name())
        if roll == 2:
            return ArrayDef(UnconstrainedRange("Positive"), self.type_name())
        if roll == 3:
            components = tuple(
                RecordComponent(f"F{i + 1}", self.type_name())
                for i in range(self.rng.randint(0, 3))
            )
            return RecordDef(components)
        if roll == 4:
            return AccessDef(self.type_name())
        if roll == 5:
            literals = tuple(f"Lit{i + 1}" for i in range(self.rng.randint(1, 4)))
            return EnumerationDef(literals)
        return IntegerRangeDef("1", self.opaque())

    def declarations(self, names: list[str], exceptions: list[str]) -> list[Declaration]:
        declarations: list[Declaration] = []
        for name in names:
            roll = self.rng.randrange(4)
            if roll == 0:
                declarations.append(TypeDecl(name, self.type_definition()))
            elif roll == 1:
                declarations.append(self.subprogram(name, exceptions))
            elif roll == 2:
                declarations.append(ExceptionDecl((name,)))
            else:
                declarations.append(
                    ObjectDecl(
                        name,
                        self.type_name(),
                        is_constant=self.rng.random() < 0.5,
                        initializer=self.opaque() if self.rng.random() < 0.5 else None,
                    )
                )
        return declarations

    def unit(self) -> ParsedUnit:
        names = self.fresh_names(self.rng.randint(2, 8))
        package_name = names.pop()
        formals: list = []
        if self.rng.random() < 0.4:
            formal_name = names.pop() if len(names) > 1 else "Elem_T"
            constraint = self.rng.choice(list(FormalTypeConstraint))
            formals.append(FormalType(formal_name, constraint))
            if self.rng.random() < 0.3:
                profile = SubprogramDecl(
                    SubprogramKind.FUNCTION,
                    "Compare_Items",
                    (Parameter(("L", "R"), Mode.IN, formal_name),),
                    "Boolean",
                )
                formals.append(FormalSubprogram(profile))
        exception_names = [n for n in names[: len(names) // 2]]
        split = self.rng.randint(0, len(names))
        visible = self.declarations(names[:split], exception_names)
        private = self.declarations(names[split:], exception_names)
        # only exceptions that really got declared may appear in raises
        declared = {
            n.casefold()
            for d in visible + private
            if isinstance(d, ExceptionDecl)
            for n in d.names
        }

        def prune(decl: Declaration) -> Declaration:
            if isinstance(decl, SubprogramDecl) and decl.raises:
                kept = tuple(r for r in decl.raises if r.casefold() in declared)
                return SubprogramDecl(
                    decl.kind, decl.name, decl.parameters, decl.return_type, kept
                )
            return decl

        return ParsedUnit(
            package_name,
            tuple(formals),
            tuple(prune(d) for d in visible),
            tuple(prune(d) for d in private),
        )


@pytest.fixture
def unit_generator():
    return UnitGenerator(random.Random(20240811))
