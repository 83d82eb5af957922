"""Lexer and recursive-descent parser for the package-specification subset.

The accepted grammar covers exactly the constructs the reuse rules inspect:
package specifications with an optional generic part, private/limited-private
types, array/record/access/enumeration/range type definitions, subprogram
profiles, exception and object declarations. Anything else is a hard parse
error at its first token; there is no error recovery.

Plain ``--`` comments are discarded. ``--|`` comments whose text begins with
``raises:`` are structured annotations naming the exceptions a subprogram may
raise. An annotation attaches to the subprogram ending on its own line, else
to the subprogram ending just above the annotation block, else to the one
starting just below it; annotations adjacent to nothing are dropped like any
other comment.

Range bounds and default expressions are not parsed as expressions: they are
captured as opaque token text, normalised to single spacing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

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
    GenericFormal,
    IntegerRangeDef,
    Mode,
    ObjectDecl,
    Parameter,
    ParsedUnit,
    PrivateDef,
    RecordComponent,
    RecordDef,
    SourceLocation,
    SubprogramDecl,
    SubprogramKind,
    TypeDecl,
    UnconstrainedRange,
)


class ParseError(Exception):
    """Input that falls outside the accepted subset. First error aborts."""

    def __init__(self, location: SourceLocation, expected: str, found: str):
        self.location = location
        self.expected = expected
        self.found = found
        super().__init__(f"{location}: expected {expected}, found '{found}'")


# All Ada reserved words. Reserving the full set (not only the subset's own
# keywords) makes constructs like ``task T;`` fail at the reserved word with
# a clear "expected declaration" error instead of a confusing one later.
RESERVED_WORDS = frozenset(
    """
    abort abs accept access all and array at begin body case constant declare
    delay delta digits do else elsif end entry exception exit for function
    generic goto if in is limited loop mod new not null of or others out
    package pragma private procedure raise range record rem renames return
    reverse select separate subtype task terminate then type use when while
    with xor
    """.split()
)

_IDENTIFIER_RE = re.compile(r"[A-Za-z](?:_?[A-Za-z0-9])*")
_NUMBER_RE = re.compile(r"\d(?:_?\d)*(?:\.\d(?:_?\d)*)?")

_PUNCTUATION = (
    (":=", "ASSIGN"),
    ("..", "DOTDOT"),
    ("=>", "ARROW"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    (";", "SEMI"),
    (":", "COLON"),
    (",", "COMMA"),
    ("<", "LT"),
    (">", "GT"),
    ("=", "EQ"),
    (".", "DOT"),
    ("'", "TICK"),
    ("+", "PLUS"),
    ("-", "MINUS"),
    ("*", "STAR"),
    ("/", "SLASH"),
    ("&", "AMP"),
    ("|", "BAR"),
)


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, KEYWORD, NUMBER, STRING, CHAR, EOF, or a punctuation kind
    text: str
    line: int
    column: int

    @property
    def folded(self) -> str:
        return self.text.casefold()


@dataclass(frozen=True)
class _Annotation:
    line: int
    names: tuple[str, ...]
    own_line: bool  # no code before the comment on its line


def tokenize(source: str, file_name: str) -> tuple[list[Token], list[_Annotation]]:
    """Split source into tokens plus the raises-annotations found in comments."""
    tokens: list[Token] = []
    annotations: list[_Annotation] = []
    line = 1
    line_start = 0
    pos = 0
    line_had_code = False

    def location(at: int) -> SourceLocation:
        return SourceLocation(file_name, line, at - line_start + 1)

    while pos < len(source):
        ch = source[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            line_had_code = False
            continue
        if ch in " \t\r":
            pos += 1
            continue
        if source.startswith("--", pos):
            end = source.find("\n", pos)
            if end == -1:
                end = len(source)
            comment = source[pos:end]
            if comment.startswith("--|"):
                _collect_annotation(comment[3:], location(pos), line, not line_had_code, annotations)
            pos = end
            continue
        line_had_code = True
        if ch.isalpha():
            match = _IDENTIFIER_RE.match(source, pos)
            word = match.group(0) if match else ch
            after = pos + len(word)
            if after < len(source) and (source[after] == "_" or source[after].isalnum()):
                # matched prefix stopped inside a malformed identifier
                bad = re.match(r"\w+", source[pos:]).group(0)
                raise ParseError(location(pos), "a legal identifier", bad)
            kind = "KEYWORD" if word.casefold() in RESERVED_WORDS else "IDENT"
            tokens.append(Token(kind, word, line, pos - line_start + 1))
            pos = after
            continue
        if ch.isdigit():
            match = _NUMBER_RE.match(source, pos)
            tokens.append(Token("NUMBER", match.group(0), line, pos - line_start + 1))
            pos = match.end()
            continue
        if ch == '"':
            end = pos + 1
            while end < len(source):
                if source[end] == '"':
                    if source.startswith('""', end):
                        end += 2
                        continue
                    break
                if source[end] == "\n":
                    break
                end += 1
            if end >= len(source) or source[end] != '"':
                raise ParseError(location(pos), "a closing string quote", source[pos:pos + 10])
            tokens.append(Token("STRING", source[pos:end + 1], line, pos - line_start + 1))
            pos = end + 1
            continue
        if ch == "'" and pos + 2 < len(source) and source[pos + 2] == "'":
            tokens.append(Token("CHAR", source[pos:pos + 3], line, pos - line_start + 1))
            pos += 3
            continue
        for text, kind in _PUNCTUATION:
            if source.startswith(text, pos):
                tokens.append(Token(kind, text, line, pos - line_start + 1))
                pos += len(text)
                break
        else:
            raise ParseError(location(pos), "a legal token", ch)

    tokens.append(Token("EOF", "", line, len(source) - line_start + 1))
    return tokens, annotations


def _collect_annotation(
    text: str,
    loc: SourceLocation,
    line: int,
    own_line: bool,
    out: list[_Annotation],
) -> None:
    body = text.strip()
    if not body.casefold().startswith("raises:"):
        return  # ordinary structured comment, dropped
    names_text = body[len("raises:"):].strip()
    names: list[str] = []
    for part in names_text.split(","):
        name = part.strip()
        if not name or not _IDENTIFIER_RE.fullmatch(name) or name.casefold() in RESERVED_WORDS:
            raise ParseError(loc, "an exception name in the raises annotation", name or body)
        names.append(name)
    out.append(_Annotation(line, tuple(names), own_line))


# --- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token], file_name: str):
        self.tokens = tokens
        self.pos = 0
        self.file_name = file_name
        # first-seen spelling per casefolded identifier
        self._spellings: dict[str, str] = {}
        # subprogram declaration spans for annotation attachment
        self.subprogram_spans: list[tuple[SubprogramDecl, int, int]] = []

    # token plumbing

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def at_keyword(self, word: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.kind == "KEYWORD" and token.folded == word

    def take_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str, expected: str | None = None) -> Token:
        if not self.at_keyword(word):
            self.fail(expected or f"'{word}'")
        return self.advance()

    def expect(self, kind: str, expected: str) -> Token:
        if self.peek().kind != kind:
            self.fail(expected)
        return self.advance()

    def fail(self, expected: str) -> None:
        token = self.peek()
        found = token.text if token.kind != "EOF" else "end of input"
        raise ParseError(self.location_of(token), expected, found)

    def location_of(self, token: Token) -> SourceLocation:
        return SourceLocation(self.file_name, token.line, token.column)

    def identifier(self, expected: str = "an identifier") -> str:
        token = self.expect("IDENT", expected)
        return self._spellings.setdefault(token.folded, token.text)

    # grammar

    def compilation(self) -> ParsedUnit:
        formals: tuple[GenericFormal, ...] = ()
        if self.at_keyword("generic"):
            formals = self.generic_part()
        unit = self.package_spec(formals)
        if self.peek().kind != "EOF":
            self.fail("end of input")
        return unit

    def generic_part(self) -> tuple[GenericFormal, ...]:
        self.expect_keyword("generic")
        formals: list[GenericFormal] = []
        seen: set[str] = set()
        while not self.at_keyword("package"):
            token = self.peek()
            if self.at_keyword("type"):
                formal = self.formal_type()
            elif self.at_keyword("with"):
                formal = self.formal_subprogram()
            else:
                self.fail("a generic formal or 'package'")
            if formal.name.casefold() in seen:
                raise ParseError(
                    self.location_of(token), "a distinct generic formal name", formal.name
                )
            seen.add(formal.name.casefold())
            formals.append(formal)
        return tuple(formals)

    def formal_type(self) -> FormalType:
        start = self.peek()
        self.expect_keyword("type")
        name = self.identifier("a formal type name")
        self.expect_keyword("is")
        if self.peek().kind == "LPAREN":
            self.advance()
            self.expect("LT", "'<'")
            self.expect("GT", "'>'")
            self.expect("RPAREN", "')'")
            constraint = FormalTypeConstraint.DISCRETE
        elif self.take_keyword("limited"):
            self.expect_keyword("private")
            constraint = FormalTypeConstraint.LIMITED_PRIVATE
        elif self.take_keyword("private"):
            constraint = FormalTypeConstraint.PRIVATE
        else:
            self.fail("'private', 'limited private' or '(<>)'")
        self.expect("SEMI", "';'")
        return FormalType(name, constraint, self.location_of(start))

    def formal_subprogram(self) -> FormalSubprogram:
        start = self.peek()
        self.expect_keyword("with")
        profile = self.subprogram_profile()
        self.expect("SEMI", "';'")
        return FormalSubprogram(profile, self.location_of(start))

    def package_spec(self, formals: tuple[GenericFormal, ...]) -> ParsedUnit:
        start = self.peek()
        self.expect_keyword("package", "'package'")
        name = self.identifier("a package name")
        self.expect_keyword("is")
        visible = self.declarations()
        private: tuple[Declaration, ...] = ()
        if self.take_keyword("private"):
            private = self.declarations()
        self.expect_keyword("end", "'end'")
        if self.peek().kind == "IDENT":
            end_token = self.peek()
            end_name = self.identifier()
            if end_name.casefold() != name.casefold():
                raise ParseError(
                    self.location_of(end_token), f"the package name '{name}'", end_name
                )
        self.expect("SEMI", "';'")
        return ParsedUnit(name, formals, visible, private, self.location_of(start))

    def declarations(self) -> tuple[Declaration, ...]:
        decls: list[Declaration] = []
        while True:
            if self.at_keyword("private") or self.at_keyword("end") or self.peek().kind == "EOF":
                return tuple(decls)
            decls.append(self.declaration())

    def declaration(self) -> Declaration:
        if self.at_keyword("type"):
            return self.type_decl()
        if self.at_keyword("procedure") or self.at_keyword("function"):
            start = self.peek()
            profile = self.subprogram_profile()
            end_token = self.peek()
            self.expect("SEMI", "';'")
            profile = SubprogramDecl(
                profile.kind,
                profile.name,
                profile.parameters,
                profile.return_type,
                location=self.location_of(start),
            )
            self.subprogram_spans.append((profile, start.line, end_token.line))
            return profile
        if self.peek().kind == "IDENT":
            return self.exception_or_object_decl()
        self.fail("declaration")

    def type_decl(self) -> TypeDecl:
        start = self.peek()
        self.expect_keyword("type")
        name = self.identifier("a type name")
        self.expect_keyword("is")
        definition = self.type_def()
        self.expect("SEMI", "';'")
        return TypeDecl(name, definition, self.location_of(start))

    def type_def(self):
        if self.take_keyword("limited"):
            self.expect_keyword("private")
            return PrivateDef(limited=True)
        if self.take_keyword("private"):
            return PrivateDef(limited=False)
        if self.take_keyword("array"):
            self.expect("LPAREN", "'('")
            index_range = self.range_spec()
            self.expect("RPAREN", "')'")
            self.expect_keyword("of")
            element = self.identifier("an element type name")
            return ArrayDef(index_range, element)
        if self.take_keyword("record"):
            components: list[RecordComponent] = []
            while not self.at_keyword("end"):
                component_name = self.identifier("a component name or 'end record'")
                self.expect("COLON", "':'")
                type_name = self.identifier("a component type name")
                self.expect("SEMI", "';'")
                components.append(RecordComponent(component_name, type_name))
            self.expect_keyword("end")
            self.expect_keyword("record")
            return RecordDef(tuple(components))
        if self.take_keyword("access"):
            return AccessDef(self.identifier("a designated type name"))
        if self.take_keyword("range"):
            low = self.opaque_until({"DOTDOT"}, "a range bound")
            self.expect("DOTDOT", "'..'")
            high = self.opaque_until({"SEMI"}, "a range bound")
            return IntegerRangeDef(low, high)
        if self.peek().kind == "LPAREN":
            self.advance()
            literals = [self.identifier("an enumeration literal")]
            while self.peek().kind == "COMMA":
                self.advance()
                literals.append(self.identifier("an enumeration literal"))
            self.expect("RPAREN", "')'")
            return EnumerationDef(tuple(literals))
        self.fail("a type definition")

    def range_spec(self):
        if self.peek().kind == "IDENT" and self.at_keyword("range", offset=1):
            index_type = self.identifier()
            self.expect_keyword("range")
            self.expect("LT", "'<'")
            self.expect("GT", "'>'")
            return UnconstrainedRange(index_type)
        low = self.opaque_until({"DOTDOT"}, "a range bound")
        self.expect("DOTDOT", "'..'")
        high = self.opaque_until({"RPAREN"}, "a range bound")
        return ConstrainedRange(low, high)

    def subprogram_profile(self) -> SubprogramDecl:
        if self.take_keyword("procedure"):
            name = self.identifier("a procedure name")
            parameters = self.formals() if self.peek().kind == "LPAREN" else ()
            return SubprogramDecl(SubprogramKind.PROCEDURE, name, parameters)
        self.expect_keyword("function", "'procedure' or 'function'")
        name = self.identifier("a function name")
        parameters = self.formals() if self.peek().kind == "LPAREN" else ()
        self.expect_keyword("return", "'return'")
        return_type = self.identifier("a return type name")
        return SubprogramDecl(SubprogramKind.FUNCTION, name, parameters, return_type)

    def formals(self) -> tuple[Parameter, ...]:
        self.expect("LPAREN", "'('")
        parameters = [self.param()]
        while self.peek().kind == "SEMI":
            self.advance()
            parameters.append(self.param())
        self.expect("RPAREN", "')'")
        return tuple(parameters)

    def param(self) -> Parameter:
        names = [self.identifier("a parameter name")]
        while self.peek().kind == "COMMA":
            self.advance()
            names.append(self.identifier("a parameter name"))
        self.expect("COLON", "':'")
        if self.take_keyword("in"):
            mode = Mode.IN_OUT if self.take_keyword("out") else Mode.IN
        elif self.take_keyword("out"):
            mode = Mode.OUT
        else:
            mode = Mode.IN
        type_name = self.identifier("a parameter type name")
        default = None
        if self.peek().kind == "ASSIGN":
            self.advance()
            default = self.opaque_until({"SEMI", "RPAREN"}, "a default expression")
        return Parameter(tuple(names), mode, type_name, default)

    def exception_or_object_decl(self) -> Declaration:
        start = self.peek()
        names = [self.identifier()]
        while self.peek().kind == "COMMA":
            self.advance()
            names.append(self.identifier())
        self.expect("COLON", "':'")
        if self.take_keyword("exception"):
            self.expect("SEMI", "';'")
            return ExceptionDecl(tuple(names), self.location_of(start))
        if len(names) > 1:
            self.fail("'exception' after a multi-name declaration")
        is_constant = self.take_keyword("constant")
        type_name = self.identifier("a type name")
        initializer = None
        if self.peek().kind == "ASSIGN":
            self.advance()
            initializer = self.opaque_until({"SEMI"}, "an initial value")
        self.expect("SEMI", "';'")
        return ObjectDecl(names[0], type_name, is_constant, initializer, self.location_of(start))

    def opaque_until(self, stop_kinds: set[str], expected: str) -> str:
        """Collect raw tokens (paren-depth aware) up to, not including, a stop."""
        collected: list[Token] = []
        depth = 0
        while True:
            token = self.peek()
            if token.kind == "EOF":
                self.fail(expected)
            if depth == 0 and token.kind in stop_kinds:
                break
            if token.kind == "LPAREN":
                depth += 1
            elif token.kind == "RPAREN":
                if depth == 0:
                    break
                depth -= 1
            collected.append(self.advance())
        if not collected:
            self.fail(expected)
        return join_opaque(collected)


def join_opaque(tokens: list[Token]) -> str:
    """Render captured tokens back to normalised text with single spacing."""
    parts: list[str] = []
    for token in tokens:
        if parts and token.kind in ("RPAREN", "COMMA", "TICK"):
            parts[-1] += token.text
        elif parts and parts[-1].endswith(("(", "'")):
            parts[-1] += token.text
        else:
            parts.append(token.text)
    return " ".join(parts)


def _attach_annotations(
    annotations: list[_Annotation],
    spans: list[tuple[SubprogramDecl, int, int]],
) -> dict[int, tuple[str, ...]]:
    """Resolve each annotation to a subprogram; returns raises per span index.

    Consecutive own-line annotations form one block. A block (or a trailing
    same-line annotation) attaches to the subprogram ending on the line above
    it, else to the one starting on the line below it.
    """
    raises_by_span: dict[int, list[str]] = {}

    def attach(index: int, names: tuple[str, ...]) -> None:
        existing = raises_by_span.setdefault(index, [])
        for name in names:
            if name.casefold() not in {n.casefold() for n in existing}:
                existing.append(name)

    def span_ending(line: int) -> int | None:
        for i, (_, _, end) in enumerate(spans):
            if end == line:
                return i
        return None

    def span_starting(line: int) -> int | None:
        for i, (_, start, _) in enumerate(spans):
            if start == line:
                return i
        return None

    pending = sorted(annotations, key=lambda a: a.line)
    i = 0
    while i < len(pending):
        annotation = pending[i]
        if not annotation.own_line:
            target = span_ending(annotation.line)
            if target is not None:
                attach(target, annotation.names)
            i += 1
            continue
        block = [annotation]
        j = i + 1
        while j < len(pending) and pending[j].own_line and pending[j].line == block[-1].line + 1:
            block.append(pending[j])
            j += 1
        target = span_ending(block[0].line - 1)
        if target is None:
            target = span_starting(block[-1].line + 1)
        if target is not None:
            for member in block:
                attach(target, member.names)
        i = j

    return {index: tuple(names) for index, names in raises_by_span.items()}


def parse_component(source: str, file_name: str = "<string>") -> ParsedUnit:
    """Parse one component specification; raises ParseError on any deviation."""
    tokens, annotations = tokenize(source, file_name)
    parser = _Parser(tokens, file_name)
    unit = parser.compilation()
    if not annotations:
        return unit
    raises_by_span = _attach_annotations(annotations, parser.subprogram_spans)
    if not raises_by_span:
        return unit
    replacements: dict[int, SubprogramDecl] = {}
    for index, names in raises_by_span.items():
        decl = parser.subprogram_spans[index][0]
        replacements[id(decl)] = SubprogramDecl(
            decl.kind, decl.name, decl.parameters, decl.return_type, names, decl.location
        )

    def swap(decls: tuple[Declaration, ...]) -> tuple[Declaration, ...]:
        return tuple(replacements.get(id(d), d) for d in decls)

    return ParsedUnit(
        unit.package_name,
        unit.generic_formals,
        swap(unit.visible_declarations),
        swap(unit.private_declarations),
        unit.location,
    )
