"""
Run-time sessions.

A session holds a knowledge base, the individuals declared at run time and the
evidence observed so far. The ground network is built lazily and rebuilt after
a member is added, so every query sees the network for the individuals known
at that point. Used by both the CLI and the HTTP API.
"""

import logging
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .errors import ParseError
from .grounding import GroundNetwork, NodeId, add_member, ground
from .inference import oracle_posterior, posterior
from .models import (
    AddMember,
    Command,
    KnowledgeBase,
    Observe,
    ParseDiagnostic,
    Query,
    QueryResult,
    SessionScript,
    is_constant,
)
from .parsing import parse_command, parse_ground_atom, parse_kb

logger = logging.getLogger(__name__)


def load_kb(path: Union[str, Path]) -> KnowledgeBase:
    """Read and parse a knowledge-base file. Raises OSError or ParseError."""
    return parse_kb(Path(path).read_bytes()).unwrap()


def load_script(kb_path: Union[str, Path], script_path: Union[str, Path]) -> SessionScript:
    """Parse a command script; blank lines and `#` comments are skipped."""
    text = Path(script_path).read_text(encoding="utf-8")
    commands: list[Command] = []
    problems: list[ParseDiagnostic] = []
    for number, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            commands.append(parse_command(line, line=number))
        except ParseError as e:
            problems.extend(e.diagnostics)
    if problems:
        raise ParseError(problems)
    return SessionScript(kb_path=str(kb_path), commands=tuple(commands))


def canonical_name(text: str) -> str:
    """Canonical node name for user input such as `foo( b , a )`."""
    try:
        return str(parse_ground_atom(text))
    except ParseError:
        # quantifier nodes, e.g. `exists(person, sets_off_alarm/1)`
        return text.strip()


def parse_members(entry: str) -> tuple[str, list[str]]:
    """Split `type=c1,c2` into the type name and its constants."""
    type_name, sep, constants = entry.partition("=")
    members = [c.strip() for c in constants.split(",") if c.strip()]
    if not sep or not type_name.strip():
        raise ValueError(f"expected type=c1,c2 but got '{entry}'")
    return type_name.strip(), members


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value not in {"true", "false"}:
        raise ValueError(f"expected true or false but got '{text}'")
    return value == "true"


class Session:
    """Knowledge base plus run-time individuals and evidence."""

    def __init__(self, kb: KnowledgeBase, oracle: bool = False):
        self._kb = kb
        self._net: Optional[GroundNetwork] = None
        self.oracle = oracle
        self.evidence: dict[str, bool] = {}

    @property
    def kb(self) -> KnowledgeBase:
        return self._kb

    @property
    def net(self) -> GroundNetwork:
        if self._net is None:
            self._net = ground(self._kb)
        return self._net

    def add_members(self, type_name: str, constants: Iterable[str]) -> None:
        for constant in constants:
            self.add_member(type_name, constant)

    def add_member(self, type_name: str, constant: str) -> None:
        """Declare a run-time member. Raises ValueError for malformed names."""
        if not is_constant(type_name):
            raise ValueError(f"type name '{type_name}' must start with a lowercase letter")
        if not is_constant(constant):
            raise ValueError(f"individual '{constant}' must start with a lowercase letter")
        if self._net is not None:
            self._net = add_member(self._net, self._kb, type_name, constant)
        self._kb = self._kb.with_member(type_name, constant)
        logger.debug("member %s += %s", type_name, constant)

    def observe(self, name: str, value: bool) -> None:
        self.evidence[canonical_name(name)] = value

    def resolve(self, name: str) -> NodeId:
        return self.net.find(canonical_name(name))

    def query(self, name: str) -> QueryResult:
        net = self.net
        node = self.resolve(name)
        ev = {self.resolve(k): v for k, v in self.evidence.items()}
        if self.oracle:
            return oracle_posterior(net, node, ev)
        return posterior(net, node, ev)

    def apply(self, command: Command) -> Optional[QueryResult]:
        """Execute one command; queries return their result."""
        if isinstance(command, AddMember):
            self.add_member(command.type_name, command.constant)
        elif isinstance(command, Observe):
            self.observe(str(command.atom), command.value)
        elif isinstance(command, Query):
            return self.query(str(command.atom))
        return None


def describe(result: QueryResult, evidence: Mapping[str, bool]) -> str:
    """`P(fire | smoke=true) = 0.909091`"""
    if not evidence:
        return f"P({result.query}) = {result.p_true:.6f}"
    given = ", ".join(f"{name}={str(value).lower()}" for name, value in evidence.items())
    return f"P({result.query} | {given}) = {result.p_true:.6f}"
