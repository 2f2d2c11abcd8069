"""
Parser for `.skb` knowledge bases and run-time commands.

Each non-blank line holds one statement terminated by `.`. Syntax errors and
semantic problems found while assembling the knowledge base are reported as
positioned diagnostics; any error means no knowledge base is produced.
Missing contingency table rows are left to validation so that partially
written knowledge bases can still be inspected.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from lark import Token, Transformer
from lark.exceptions import (
    LarkError,
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedToken,
    VisitError,
)

from ..errors import ParseError
from ..models import (
    AddMember,
    Command,
    CptTemplate,
    GroundAtom,
    KnowledgeBase,
    Observe,
    ParentRef,
    ParseDiagnostic,
    ParseResult,
    Prior,
    Quantifier,
    QuantifierKind,
    Query,
    Schema,
    SchemaAtom,
    SchemaKind,
    Severity,
    SourceSpan,
    TypeDecl,
    is_constant,
    is_parameter,
)
from .grammar import PARSER

logger = logging.getLogger(__name__)


class _SemanticError(Exception):
    def __init__(self, token: Token, message: str):
        self.token = token
        self.message = message
        super().__init__(message)


@dataclass
class _Located:
    """A parsed value together with the token that locates it."""
    value: object
    token: Token


@dataclass
class _TypeStmt:
    name: Token
    members: list[Token]


@dataclass
class _IndividualsStmt:
    members: list[Token]


@dataclass
class _SchemaStmt:
    parents: list[_Located]
    child: _Located


@dataclass
class _PriorStmt:
    atom: _Located
    number: Token


@dataclass
class _RowStmt:
    child: _Located
    conditions: list[tuple[bool, _Located]]
    number: Token


_Statement = Union[_TypeStmt, _IndividualsStmt, _SchemaStmt, _PriorStmt, _RowStmt]


class _StatementBuilder(Transformer):
    """Turns parse trees into statement records, checking identifier forms."""

    def ident_list(self, children):
        return list(children)

    def atom(self, children):
        predicate = children[0]
        args = children[1] if len(children) > 1 else []
        if not is_constant(predicate):
            raise _SemanticError(predicate, f"predicate '{predicate}' must start with a lowercase letter")
        return _Located(SchemaAtom(predicate=str(predicate), args=tuple(str(a) for a in args)), predicate)

    def quantifier(self, children):
        kind, bound, type_name, body = children
        if not is_parameter(bound):
            raise _SemanticError(bound, f"bound parameter '{bound}' must be capitalized")
        if not is_constant(type_name):
            raise _SemanticError(type_name, f"type name '{type_name}' must start with a lowercase letter")
        if str(bound) not in body.value.args:
            raise _SemanticError(bound, f"bound parameter {bound} does not occur in {body.value}")
        quantifier = Quantifier(
            kind=QuantifierKind(str(kind)),
            bound_param=str(bound),
            type_name=str(type_name),
            body=body.value,
        )
        return _Located(quantifier, kind)

    def parents(self, children):
        return list(children)

    def condition(self, children):
        if len(children) == 2:
            return (False, children[1])
        return (True, children[0])

    def conditions(self, children):
        return list(children)

    def type_decl(self, children):
        name = children[0]
        members = children[1] if len(children) > 1 else []
        if not is_constant(name):
            raise _SemanticError(name, f"type name '{name}' must start with a lowercase letter")
        for member in members:
            if not is_constant(member):
                raise _SemanticError(member, f"individual '{member}' must start with a lowercase letter")
        return _TypeStmt(name, members)

    def individuals_decl(self, children):
        members = children[0] if children else []
        for member in members:
            if not is_constant(member):
                raise _SemanticError(member, f"individual '{member}' must start with a lowercase letter")
        return _IndividualsStmt(members)

    def schema_decl(self, children):
        return _SchemaStmt(children[0], children[1])

    def prior_decl(self, children):
        return _PriorStmt(children[0], children[1])

    def row_decl(self, children):
        return _RowStmt(children[0], children[1], children[2])

    def observe(self, children):
        atom, value = children
        return Observe(atom=_to_ground(atom), value=str(value) == "true")

    def query(self, children):
        return Query(atom=_to_ground(children[0]))

    def member(self, children):
        type_name, constant = children
        if not is_constant(type_name):
            raise _SemanticError(type_name, f"type name '{type_name}' must start with a lowercase letter")
        if not is_constant(constant):
            raise _SemanticError(constant, f"individual '{constant}' must start with a lowercase letter")
        return AddMember(type_name=str(type_name), constant=str(constant))


def _to_ground(located: _Located) -> GroundAtom:
    atom: SchemaAtom = located.value  # type: ignore[assignment]
    if atom.params:
        raise _SemanticError(located.token, f"{atom} is not ground; parameters are not allowed here")
    return GroundAtom(predicate=atom.predicate, args=atom.args)


def _span(line: int, token: Token) -> SourceSpan:
    return SourceSpan(line=line, column=max(1, token.column or 1), length=max(1, len(token)))


def _end_span(line: int, text: str) -> SourceSpan:
    return SourceSpan(line=line, column=max(1, len(text.rstrip())), length=1)


def _parse_line(text: str, line: int, start: str) -> tuple[object, Optional[ParseDiagnostic]]:
    """Parse one line. Returns the built value or a diagnostic."""
    try:
        tree = PARSER.parse(text, start=start)
        return _StatementBuilder().transform(tree), None
    except VisitError as e:
        orig = e.orig_exc
        if isinstance(orig, _SemanticError):
            return None, ParseDiagnostic(span=_span(line, orig.token), message=orig.message)
        return None, ParseDiagnostic(span=SourceSpan(line=line, column=1), message=str(orig))
    except UnexpectedCharacters as e:
        char = text[e.pos_in_stream] if 0 <= e.pos_in_stream < len(text) else "?"
        return None, ParseDiagnostic(
            span=SourceSpan(line=line, column=max(1, e.column)),
            message=f"unknown token {char!r}",
        )
    except UnexpectedToken as e:
        if e.token.type == "$END":
            return None, ParseDiagnostic(span=_end_span(line, text), message="statement is incomplete")
        return None, ParseDiagnostic(span=_span(line, e.token), message=f"unexpected {str(e.token)!r}")
    except UnexpectedEOF:
        return None, ParseDiagnostic(span=_end_span(line, text), message="statement is incomplete")
    except LarkError as e:
        return None, ParseDiagnostic(span=SourceSpan(line=line, column=1), message=str(e))


def _is_blank(text: str) -> bool:
    stripped = text.strip()
    return not stripped or stripped.startswith("#")


class _KbAssembler:
    """Collects statements in source order and assembles the knowledge base."""

    def __init__(self) -> None:
        self.diagnostics: list[ParseDiagnostic] = []
        self.types: dict[str, list[str]] = {}
        self.individuals: list[str] = []
        self.schemata: list[tuple[tuple[ParentRef, ...], SchemaAtom]] = []
        self.rows: list[dict[tuple[bool, ...], float]] = []
        self.priors: dict[SchemaAtom, float] = {}

    def error(self, line: int, token: Token, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(span=_span(line, token), message=message))

    def warning(self, line: int, token: Token, message: str) -> None:
        self.diagnostics.append(
            ParseDiagnostic(span=_span(line, token), message=message, severity=Severity.WARNING)
        )

    def probability(self, line: int, token: Token) -> Optional[float]:
        value = float(token)
        if not 0.0 <= value <= 1.0:
            self.error(line, token, f"probability {token} is outside [0,1]")
            return None
        return value

    def add(self, statement: _Statement, line: int) -> None:
        if isinstance(statement, _TypeStmt):
            self._add_type(statement, line)
        elif isinstance(statement, _IndividualsStmt):
            for member in statement.members:
                if str(member) in self.individuals:
                    self.warning(line, member, f"individual '{member}' is already declared")
                else:
                    self.individuals.append(str(member))
        elif isinstance(statement, _SchemaStmt):
            self._add_schema(statement, line)
        elif isinstance(statement, _PriorStmt):
            self._add_prior(statement, line)
        elif isinstance(statement, _RowStmt):
            self._add_row(statement, line)

    def _add_type(self, statement: _TypeStmt, line: int) -> None:
        name = str(statement.name)
        if name in self.types:
            self.error(line, statement.name, f"type '{name}' is already declared")
            return
        members: list[str] = []
        for member in statement.members:
            if str(member) in members:
                self.warning(line, member, f"'{member}' is listed twice in type '{name}'")
            else:
                members.append(str(member))
        self.types[name] = members

    def _add_schema(self, statement: _SchemaStmt, line: int) -> None:
        parents = tuple(p.value for p in statement.parents)
        quantified = [p for p in statement.parents if isinstance(p.value, Quantifier)]
        if quantified and len(parents) != 1:
            self.error(line, quantified[0].token, "a quantified parent must be the schema's only parent")
            return
        self.schemata.append((parents, statement.child.value))  # type: ignore[arg-type]
        self.rows.append({})

    def _add_prior(self, statement: _PriorStmt, line: int) -> None:
        atom: SchemaAtom = statement.atom.value  # type: ignore[assignment]
        value = self.probability(line, statement.number)
        if atom in self.priors:
            self.error(line, statement.atom.token, f"duplicate prior for {atom}")
            return
        if value is not None:
            self.priors[atom] = value

    def _add_row(self, statement: _RowStmt, line: int) -> None:
        child: SchemaAtom = statement.child.value  # type: ignore[assignment]
        index = next(
            (i for i in range(len(self.schemata) - 1, -1, -1)
             if self.schemata[i][1].signature == child.signature),
            None,
        )
        token = statement.child.token
        if index is None:
            self.error(line, token, f"no schema for {child.predicate}/{child.arity} precedes this row")
            return
        parents, schema_child = self.schemata[index]
        if child != schema_child:
            self.error(line, token, f"row child {child} does not match schema child {schema_child}")
            return
        if len(statement.conditions) != len(parents):
            self.error(
                line, token,
                f"arity mismatch: schema for {child} has {len(parents)} parents, "
                f"the row gives {len(statement.conditions)}",
            )
            return
        for (_, condition), parent in zip(statement.conditions, parents):
            if condition.value != parent:
                self.error(line, condition.token, f"row condition {condition.value} does not match schema parent {parent}")
                return
        assignment = tuple(truth for truth, _ in statement.conditions)
        value = self.probability(line, statement.number)
        if assignment in self.rows[index]:
            self.error(line, token, f"duplicate row for {child} under this assignment")
            return
        if value is not None:
            self.rows[index][assignment] = value

    def build(self) -> KnowledgeBase:
        schemata = []
        for (parents, child), rows in zip(self.schemata, self.rows):
            quantifier = parents[0] if isinstance(parents[0], Quantifier) else None
            if quantifier is None:
                kind = SchemaKind.PLAIN
            elif quantifier.kind == QuantifierKind.EXISTS:
                kind = SchemaKind.EXISTENTIAL
            else:
                kind = SchemaKind.UNIVERSAL
            schemata.append(Schema(
                parents=parents,
                child=child,
                cpt=CptTemplate(child=child, parents=parents, rows=rows),
                kind=kind,
                quantifier=quantifier,
            ))
        return KnowledgeBase(
            types=tuple(TypeDecl(name=n, members=tuple(m)) for n, m in self.types.items()),
            schemata=tuple(schemata),
            priors=tuple(Prior(atom=a, p_true=p) for a, p in self.priors.items()),
            extra_individuals=tuple(self.individuals),
        )


def _decode(data: bytes) -> tuple[Optional[str], Optional[ParseDiagnostic]]:
    try:
        return data.decode("utf-8"), None
    except UnicodeDecodeError as e:
        before = data[: e.start]
        line = before.count(b"\n") + 1
        column = e.start - (before.rfind(b"\n") + 1) + 1
        return None, ParseDiagnostic(
            span=SourceSpan(line=line, column=column), message="input is not valid UTF-8"
        )


def parse_kb(text: Union[str, bytes]) -> ParseResult:
    """
    Parse knowledge-base text.

    Returns a ParseResult whose `kb` is None when any error was found.
    """
    if isinstance(text, bytes):
        decoded, problem = _decode(text)
        if decoded is None:
            return ParseResult(kb=None, diagnostics=(problem,))
        text = decoded
    if text.startswith("\ufeff"):
        text = text[1:]

    assembler = _KbAssembler()
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if _is_blank(line):
            continue
        statement, problem = _parse_line(line, number, "statement")
        if problem is not None:
            assembler.diagnostics.append(problem)
            continue
        try:
            assembler.add(statement, number)  # type: ignore[arg-type]
        except ValueError as e:
            assembler.diagnostics.append(ParseDiagnostic(span=SourceSpan(line=number, column=1), message=str(e)))

    diagnostics = tuple(assembler.diagnostics)
    if any(d.severity == Severity.ERROR for d in diagnostics):
        return ParseResult(kb=None, diagnostics=diagnostics)
    try:
        kb = assembler.build()
    except ValueError as e:
        problem = ParseDiagnostic(span=SourceSpan(line=1, column=1), message=str(e))
        return ParseResult(kb=None, diagnostics=diagnostics + (problem,))
    logger.debug("parsed knowledge base: %d schemata, %d types", len(kb.schemata), len(kb.types))
    return ParseResult(kb=kb, diagnostics=diagnostics)


def _parse_single(text: str, start: str, line: int):
    stripped = text.rstrip("\r\n")
    if _is_blank(stripped):
        raise ParseError([ParseDiagnostic(span=SourceSpan(line=line, column=1), message="empty input")])
    value, problem = _parse_line(stripped, line, start)
    if problem is not None:
        raise ParseError([problem])
    return value


def parse_command(text: str, line: int = 1) -> Command:
    """Parse one run-time command: `observe a = true`, `query a`, `member t += c`."""
    return _parse_single(text, "command", line)


def parse_ground_atom(text: str) -> GroundAtom:
    """Parse `name` or `name(c1,...,cn)` with constants only."""
    located = _parse_single(text, "atom", 1)
    try:
        return _to_ground(located)
    except _SemanticError as e:
        raise ParseError([ParseDiagnostic(span=_span(1, e.token), message=e.message)]) from None
