"""Syntax tree for the Ada package-specification subset.

Every node is a frozen dataclass, so trees are immutable after construction
and safe to share between threads. Source locations are carried on each
declaration but excluded from equality: two trees are equal when they are
structurally identical, wherever their tokens came from. That is the
equality the pretty-printer round-trip guarantee is stated against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceLocation:
    """1-based line/column position in a named source file."""

    file_name: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file_name}:{self.line}:{self.column}"


class Mode(enum.Enum):
    """Parameter passing mode. ``IN`` is the default when none is written."""

    IN = "in"
    OUT = "out"
    IN_OUT = "in out"


class SubprogramKind(enum.Enum):
    PROCEDURE = "procedure"
    FUNCTION = "function"


@dataclass(frozen=True)
class Parameter:
    """One parameter group: ``A, B : in out Integer := 0``."""

    names: tuple[str, ...]
    mode: Mode
    type_name: str
    default: str | None = None


# --- type definitions -------------------------------------------------------


@dataclass(frozen=True)
class PrivateDef:
    limited: bool = False


@dataclass(frozen=True)
class ConstrainedRange:
    low: str
    high: str


@dataclass(frozen=True)
class UnconstrainedRange:
    index_type: str


IndexRange = ConstrainedRange | UnconstrainedRange


@dataclass(frozen=True)
class ArrayDef:
    index_range: IndexRange
    element_type: str


@dataclass(frozen=True)
class RecordComponent:
    name: str
    type_name: str


@dataclass(frozen=True)
class RecordDef:
    components: tuple[RecordComponent, ...]


@dataclass(frozen=True)
class AccessDef:
    designated_type: str


@dataclass(frozen=True)
class EnumerationDef:
    literals: tuple[str, ...]


@dataclass(frozen=True)
class IntegerRangeDef:
    low: str
    high: str


TypeDef = PrivateDef | ArrayDef | RecordDef | AccessDef | EnumerationDef | IntegerRangeDef


# --- declarations -----------------------------------------------------------


@dataclass(frozen=True)
class TypeDecl:
    name: str
    definition: TypeDef
    location: SourceLocation | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SubprogramDecl:
    kind: SubprogramKind
    name: str
    parameters: tuple[Parameter, ...] = ()
    return_type: str | None = None
    raises: tuple[str, ...] = ()
    location: SourceLocation | None = field(default=None, compare=False)

    def has_parameter_of(self, type_name: str) -> bool:
        folded = type_name.casefold()
        return any(p.type_name.casefold() == folded for p in self.parameters)

    def parameter_modes_of(self, type_name: str) -> tuple[Mode, ...]:
        folded = type_name.casefold()
        return tuple(p.mode for p in self.parameters if p.type_name.casefold() == folded)


@dataclass(frozen=True)
class ExceptionDecl:
    names: tuple[str, ...]
    location: SourceLocation | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    type_name: str
    is_constant: bool = False
    initializer: str | None = None
    location: SourceLocation | None = field(default=None, compare=False)


Declaration = TypeDecl | SubprogramDecl | ExceptionDecl | ObjectDecl


# --- generic part -----------------------------------------------------------


class FormalTypeConstraint(enum.Enum):
    PRIVATE = "private"
    LIMITED_PRIVATE = "limited private"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class FormalType:
    name: str
    constraint: FormalTypeConstraint
    location: SourceLocation | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FormalSubprogram:
    profile: SubprogramDecl
    location: SourceLocation | None = field(default=None, compare=False)

    @property
    def name(self) -> str:
        return self.profile.name


GenericFormal = FormalType | FormalSubprogram


@dataclass(frozen=True)
class ParsedUnit:
    """One parsed component specification file."""

    package_name: str
    generic_formals: tuple[GenericFormal, ...] = ()
    visible_declarations: tuple[Declaration, ...] = ()
    private_declarations: tuple[Declaration, ...] = ()
    location: SourceLocation | None = field(default=None, compare=False)

    @property
    def is_generic(self) -> bool:
        return bool(self.generic_formals)

    def all_declarations(self) -> tuple[Declaration, ...]:
        return self.visible_declarations + self.private_declarations

    def subprograms(self) -> tuple[SubprogramDecl, ...]:
        return tuple(d for d in self.all_declarations() if isinstance(d, SubprogramDecl))

    def type_declarations(self) -> tuple[TypeDecl, ...]:
        return tuple(d for d in self.all_declarations() if isinstance(d, TypeDecl))

    def exception_names(self) -> tuple[str, ...]:
        names: list[str] = []
        for decl in self.all_declarations():
            if isinstance(decl, ExceptionDecl):
                names.extend(decl.names)
        return tuple(names)

    def trailing_annotations(self) -> tuple[tuple[SubprogramDecl, tuple[str, ...]], ...]:
        """Raises-annotations per subprogram, in declaration order."""
        return tuple((d, d.raises) for d in self.subprograms() if d.raises)

    def find_type(self, name: str) -> TypeDecl | None:
        folded = name.casefold()
        for decl in self.type_declarations():
            if decl.name.casefold() == folded:
                return decl
        return None

    def declared_names(self) -> set[str]:
        """Casefolded names of every formal and declaration in the unit."""
        names: set[str] = set()
        for formal in self.generic_formals:
            names.add(formal.name.casefold())
        for decl in self.all_declarations():
            if isinstance(decl, ExceptionDecl):
                names.update(n.casefold() for n in decl.names)
            else:
                names.add(decl.name.casefold())
        return names
