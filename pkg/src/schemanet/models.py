"""
Data models for schemanet.

Defines the background-knowledge data model (atoms, schemata, contingency
table templates, types, priors), the diagnostics produced while reading and
validating a knowledge base, run-time commands, and query results.
"""

import re
from enum import Enum
from typing import Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

IDENTIFIER_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def is_identifier(text: str) -> bool:
    return bool(IDENTIFIER_RE.match(text))


def is_parameter(text: str) -> bool:
    """Parameters are capitalized identifiers."""
    return is_identifier(text) and text[0].isupper()


def is_constant(text: str) -> bool:
    return is_identifier(text) and text[0].islower()


def _check_constant(value: str, what: str) -> str:
    if not is_constant(value):
        raise ValueError(f"{what} '{value}' must be an identifier starting with a lowercase letter")
    return value


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)


# Atoms


class GroundAtom(FrozenModel):
    """
    A proposition: a predicate applied to constants only.

    The canonical text form doubles as the node name in ground networks.
    """
    predicate: str = Field(..., description="Predicate name (constant-form)")
    args: tuple[str, ...] = Field(default=(), description="Constant arguments")

    @field_validator("predicate")
    @classmethod
    def _predicate_is_constant(cls, value: str) -> str:
        return _check_constant(value, "predicate")

    @field_validator("args")
    @classmethod
    def _args_are_constants(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        for arg in value:
            _check_constant(arg, "argument")
        return value

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


class SchemaAtom(FrozenModel):
    """A predicate whose arguments are constants or capitalized parameters."""
    predicate: str = Field(..., description="Predicate name (constant-form)")
    args: tuple[str, ...] = Field(default=(), description="Constants and parameters")

    @field_validator("predicate")
    @classmethod
    def _predicate_is_constant(cls, value: str) -> str:
        return _check_constant(value, "predicate")

    @field_validator("args")
    @classmethod
    def _args_are_identifiers(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        for arg in value:
            if not is_identifier(arg):
                raise ValueError(f"argument '{arg}' is not an identifier")
        return value

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> tuple[str, int]:
        return (self.predicate, len(self.args))

    @property
    def params(self) -> frozenset[str]:
        return frozenset(a for a in self.args if is_parameter(a))

    def param_list(self) -> list[str]:
        """Parameters in order of first occurrence."""
        seen: list[str] = []
        for arg in self.args:
            if is_parameter(arg) and arg not in seen:
                seen.append(arg)
        return seen

    def substitute(self, substitution: Mapping[str, str]) -> "SchemaAtom":
        return SchemaAtom(
            predicate=self.predicate,
            args=tuple(substitution.get(a, a) if is_parameter(a) else a for a in self.args),
        )

    def ground(self, substitution: Mapping[str, str]) -> GroundAtom:
        """Instantiate every parameter. Raises KeyError if one is unbound."""
        return GroundAtom(
            predicate=self.predicate,
            args=tuple(substitution[a] if is_parameter(a) else a for a in self.args),
        )

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


# Schemata


class QuantifierKind(str, Enum):
    """Combination mechanisms for left-multiple dependencies."""
    EXISTS = "exists"
    FORALL = "forall"


class Quantifier(FrozenModel):
    """A quantified parent term such as `exists X in person . a(X)`."""
    kind: QuantifierKind
    bound_param: str = Field(..., description="Parameter ranging over the type's members")
    type_name: str = Field(..., description="Type the bound parameter ranges over")
    body: SchemaAtom

    @model_validator(mode="after")
    def _bound_param_in_body(self) -> "Quantifier":
        if not is_parameter(self.bound_param):
            raise ValueError(f"bound parameter '{self.bound_param}' must be capitalized")
        _check_constant(self.type_name, "type name")
        if self.bound_param not in self.body.args:
            raise ValueError(f"bound parameter {self.bound_param} does not occur in {self.body}")
        return self

    @property
    def params(self) -> frozenset[str]:
        """Free parameters of the term (the bound one excluded)."""
        return self.body.params - {self.bound_param}

    def __str__(self) -> str:
        return f"{self.kind.value} {self.bound_param} in {self.type_name} . {self.body}"


ParentRef = Union[SchemaAtom, Quantifier]


def parent_params(parent: ParentRef) -> frozenset[str]:
    return parent.params


class CptTemplate(FrozenModel):
    """
    Contingency table template.

    Rows map a full truth assignment over the parents (in parent order) to the
    probability that the child is true. Completeness is checked by validation,
    not on construction, so partially written knowledge bases can be inspected.
    """
    child: SchemaAtom
    parents: tuple[ParentRef, ...]
    rows: dict[tuple[bool, ...], float] = Field(default_factory=dict)

    @property
    def expected_rows(self) -> int:
        return 2 ** len(self.parents)

    def is_complete(self) -> bool:
        return len(self.rows) == self.expected_rows and all(
            len(key) == len(self.parents) for key in self.rows
        )

    def lookup(self, assignment: tuple[bool, ...]) -> float:
        return self.rows[assignment]


class SchemaKind(str, Enum):
    PLAIN = "plain"
    EXISTENTIAL = "existential"
    UNIVERSAL = "universal"


class Classification(str, Enum):
    """How a schema instantiates for multiple individuals."""
    UNIQUE = "Unique"
    RIGHT_MULTIPLE = "RightMultiple"
    LEFT_MULTIPLE = "LeftMultiple"
    QUANTIFIED = "Quantified"


class Schema(FrozenModel):
    """A dependency `parents -> child` with its contingency table template."""
    parents: tuple[ParentRef, ...]
    child: SchemaAtom
    cpt: CptTemplate
    kind: SchemaKind = SchemaKind.PLAIN
    quantifier: Optional[Quantifier] = None

    @model_validator(mode="after")
    def _consistent(self) -> "Schema":
        if not self.parents:
            raise ValueError("a schema needs at least one parent")
        if self.cpt.child != self.child or self.cpt.parents != self.parents:
            raise ValueError("contingency table does not match the schema")
        quantified = [p for p in self.parents if isinstance(p, Quantifier)]
        if self.kind == SchemaKind.PLAIN:
            if quantified or self.quantifier is not None:
                raise ValueError("plain schemata cannot have quantified parents")
        else:
            if len(self.parents) != 1 or self.quantifier is None or self.parents[0] != self.quantifier:
                raise ValueError("a quantified schema has exactly one parent, its quantifier")
            expected = (
                QuantifierKind.EXISTS if self.kind == SchemaKind.EXISTENTIAL else QuantifierKind.FORALL
            )
            if self.quantifier.kind != expected:
                raise ValueError(f"{self.kind.value} schema with a {self.quantifier.kind.value} quantifier")
        return self

    @property
    def params(self) -> frozenset[str]:
        result = set(self.child.params)
        for parent in self.parents:
            result |= parent_params(parent)
        return frozenset(result)

    def __str__(self) -> str:
        return f"{', '.join(str(p) for p in self.parents)} -> {self.child}"


class TypeDecl(FrozenModel):
    """A named set of individuals."""
    name: str
    members: tuple[str, ...] = ()

    @field_validator("name")
    @classmethod
    def _name_is_constant(cls, value: str) -> str:
        return _check_constant(value, "type name")

    @field_validator("members")
    @classmethod
    def _members_distinct(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        for member in value:
            _check_constant(member, "individual")
        if len(set(value)) != len(value):
            raise ValueError("type members must be distinct")
        return value


class Prior(FrozenModel):
    """Prior probability of a root atom (parameters allowed)."""
    atom: SchemaAtom
    p_true: float = Field(..., description="Probability that the atom is true")


class KnowledgeBase(FrozenModel):
    """Static background knowledge: schemata, types, priors and known individuals."""
    types: tuple[TypeDecl, ...] = ()
    schemata: tuple[Schema, ...] = ()
    priors: tuple[Prior, ...] = ()
    extra_individuals: tuple[str, ...] = Field(
        default=(), description="Individuals that belong to no type"
    )

    def type_named(self, name: str) -> Optional[TypeDecl]:
        for decl in self.types:
            if decl.name == name:
                return decl
        return None

    def individual_pool(self) -> list[str]:
        """Every known individual, lexicographically ordered."""
        pool = set(self.extra_individuals)
        for decl in self.types:
            pool.update(decl.members)
        return sorted(pool)

    def with_member(self, type_name: str, constant: str) -> "KnowledgeBase":
        """Copy of this knowledge base with `constant` added to the named type."""
        _check_constant(constant, "individual")
        types = []
        found = False
        for decl in self.types:
            if decl.name == type_name:
                found = True
                if constant not in decl.members:
                    decl = TypeDecl(name=decl.name, members=decl.members + (constant,))
            types.append(decl)
        if not found:
            types.append(TypeDecl(name=type_name, members=(constant,)))
        return self.model_copy(update={"types": tuple(types)})

    def with_individual(self, constant: str) -> "KnowledgeBase":
        """Copy with `constant` added to the individuals outside any type."""
        _check_constant(constant, "individual")
        if constant in self.extra_individuals:
            return self
        return self.model_copy(update={"extra_individuals": self.extra_individuals + (constant,)})

    def rename_individuals(self, mapping: Mapping[str, str]) -> "KnowledgeBase":
        """Rename known individuals; constants inside schemata are left alone."""
        return self.model_copy(update={
            "types": tuple(
                TypeDecl(name=d.name, members=tuple(mapping.get(m, m) for m in d.members))
                for d in self.types
            ),
            "extra_individuals": tuple(mapping.get(c, c) for c in self.extra_individuals),
        })


# Diagnostics


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class DiagnosticCode(str, Enum):
    """Knowledge-base validation failures."""
    INCOMPLETE_CPT = "IncompleteCpt"
    PROBABILITY_OUT_OF_RANGE = "ProbabilityOutOfRange"
    AMBIGUOUS_HEAD = "AmbiguousHead"
    UNDECLARED_TYPE = "UndeclaredType"
    LEFT_MULTIPLE_REQUIRES_QUANTIFIER = "LeftMultipleRequiresQuantifier"
    UNBOUND_QUANTIFIER_PARAMETER = "UnboundQuantifierParameter"
    PRIOR_ON_SCHEMA_CHILD = "PriorOnSchemaChild"
    AMBIGUOUS_PRIOR = "AmbiguousPrior"
    UNDEFINED_PARENT = "UndefinedParent"


class Diagnostic(FrozenModel):
    """A validation finding about a knowledge base."""
    code: DiagnosticCode
    message: str
    schema_index: Optional[int] = Field(None, description="Index of the offending schema, if any")

    def __str__(self) -> str:
        return f"{self.code.value}: {self.message}"


class SourceSpan(FrozenModel):
    line: int = Field(..., ge=1)
    column: int = Field(..., ge=1)
    length: int = Field(1, ge=1)


class ParseDiagnostic(FrozenModel):
    """A positioned message from the parser."""
    span: SourceSpan
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.severity.value}: {self.message}"


class ParseResult(FrozenModel):
    """Outcome of parsing knowledge-base text."""
    kb: Optional[KnowledgeBase] = None
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    @property
    def errors(self) -> list[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == Severity.ERROR]

    @property
    def ok(self) -> bool:
        return self.kb is not None

    def unwrap(self) -> KnowledgeBase:
        from .errors import ParseError

        if self.kb is None:
            raise ParseError(self.errors)
        return self.kb


# Run-time commands


class Observe(FrozenModel):
    atom: GroundAtom
    value: bool


class Query(FrozenModel):
    atom: GroundAtom


class AddMember(FrozenModel):
    type_name: str
    constant: str


Command = Union[Observe, Query, AddMember]


# Inference


class QueryResult(FrozenModel):
    """Posterior of a single query."""
    query: str = Field(..., description="Canonical name of the queried node")
    p_true: float = Field(..., ge=0.0, le=1.0)
    evidence_probability: float = Field(..., gt=0.0, le=1.0)


class SessionScript(FrozenModel):
    """A knowledge base plus run-time commands executed in order."""
    kb_path: str
    commands: tuple[Command, ...] = ()
