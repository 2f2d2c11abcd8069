"""
Ground Bayesian network.

Nodes are boolean propositions: ground atoms, or quantifier nodes that
combine every member of a type deterministically. Each node carries a
complete table of P(node = true | parent assignment), indexed with the first
parent as the most significant bit and True = 1.
"""

import difflib
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import networkx as nx
from pydantic import Field

from ..errors import UnknownNode
from ..models import GroundAtom, QuantifierKind, SchemaAtom, FrozenModel

CANONICAL_BOUND_PARAM = "X"


class QuantifierNodeId(FrozenModel):
    """
    Identity of an existential or universal combination node.

    The body keeps its fixed arguments and names the bound parameter `X`, so
    two nodes are equal iff kind, type and body predicate/arity/fixed
    arguments agree.
    """
    kind: QuantifierKind
    type_name: str
    body: SchemaAtom

    @property
    def symbol(self) -> str:
        return "∃" if self.kind == QuantifierKind.EXISTS else "∀"

    def label(self) -> str:
        return f"{self.symbol}{CANONICAL_BOUND_PARAM}∈{self.type_name}·{self.body}"

    def __str__(self) -> str:
        if all(arg == CANONICAL_BOUND_PARAM for arg in self.body.args):
            body = f"{self.body.predicate}/{self.body.arity}"
        else:
            body = str(self.body)
        return f"{self.kind.value}({self.type_name}, {body})"


NodeId = Union[GroundAtom, QuantifierNodeId]


class NodeKind(str, Enum):
    CHANCE = "chance"
    DET_OR = "det_or"
    DET_AND = "det_and"


class ArcProvenance(FrozenModel):
    """The schema instance an arc came from."""
    schema_index: int
    substitution: dict[str, str] = Field(default_factory=dict)
    gathering: bool = Field(False, description="Arc from a body instance into a quantifier node")


def deterministic_table(kind: NodeKind, fan_in: int) -> tuple[float, ...]:
    """Indicator table of OR / AND over `fan_in` parents."""
    size = 2 ** fan_in
    if kind == NodeKind.DET_OR:
        return tuple(0.0 if index == 0 else 1.0 for index in range(size))
    if kind == NodeKind.DET_AND:
        return tuple(1.0 if index == size - 1 else 0.0 for index in range(size))
    raise ValueError(f"{kind} is not deterministic")


def _rename_atom(atom: SchemaAtom, mapping: Mapping[str, str]) -> SchemaAtom:
    return SchemaAtom(predicate=atom.predicate, args=tuple(mapping.get(a, a) for a in atom.args))


def rename_node(node: NodeId, mapping: Mapping[str, str]) -> NodeId:
    """Apply a renaming of constants to a node."""
    if isinstance(node, GroundAtom):
        return GroundAtom(predicate=node.predicate, args=tuple(mapping.get(a, a) for a in node.args))
    return QuantifierNodeId(kind=node.kind, type_name=node.type_name, body=_rename_atom(node.body, mapping))


class GroundNetwork:
    """
    An immutable ground Bayesian network.

    Safe to share between threads for read-only queries.
    """

    def __init__(
        self,
        nodes: Iterable[NodeId],
        parents: Mapping[NodeId, tuple[NodeId, ...]],
        cpt: Mapping[NodeId, tuple[float, ...]],
        kinds: Mapping[NodeId, NodeKind],
        provenance: Mapping[tuple[NodeId, NodeId], ArcProvenance],
    ):
        self._nodes = tuple(nodes)
        self._parents = MappingProxyType({n: tuple(parents[n]) for n in self._nodes})
        self._cpt = MappingProxyType({n: tuple(cpt[n]) for n in self._nodes})
        self._kinds = MappingProxyType({n: kinds[n] for n in self._nodes})
        self._provenance = MappingProxyType(dict(provenance))
        self._by_name = {str(n): n for n in self._nodes}
        children: dict[NodeId, list[NodeId]] = {n: [] for n in self._nodes}
        for node in self._nodes:
            for parent in self._parents[node]:
                children[parent].append(node)
        self._children = MappingProxyType({n: tuple(c) for n, c in children.items()})

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return self._nodes

    @property
    def parents(self) -> Mapping[NodeId, tuple[NodeId, ...]]:
        return self._parents

    @property
    def cpt(self) -> Mapping[NodeId, tuple[float, ...]]:
        return self._cpt

    @property
    def kinds(self) -> Mapping[NodeId, NodeKind]:
        return self._kinds

    @property
    def provenance(self) -> Mapping[tuple[NodeId, NodeId], ArcProvenance]:
        return self._provenance

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node: object) -> bool:
        return node in self._parents

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroundNetwork):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and dict(self._parents) == dict(other._parents)
            and dict(self._cpt) == dict(other._cpt)
            and dict(self._kinds) == dict(other._kinds)
        )

    def __repr__(self) -> str:
        return f"GroundNetwork({len(self._nodes)} nodes, {len(self.arcs())} arcs)"

    def arcs(self) -> list[tuple[NodeId, NodeId]]:
        """All arcs (parent, child), grouped by child in node order."""
        return [(p, n) for n in self._nodes for p in self._parents[n]]

    def children(self, node: NodeId) -> tuple[NodeId, ...]:
        return self._children[node]

    def roots(self) -> list[NodeId]:
        return [n for n in self._nodes if not self._parents[n]]

    def leaves(self) -> list[NodeId]:
        return [n for n in self._nodes if not self._children[n]]

    def find(self, name: str) -> NodeId:
        """Look a node up by its canonical name."""
        node = self._by_name.get(name.strip())
        if node is None:
            suggestions = difflib.get_close_matches(name, list(self._by_name), n=3, cutoff=0.6)
            raise UnknownNode(name, suggestions)
        return node

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self._nodes)
        graph.add_edges_from(self.arcs())
        return graph

    def subnetwork(self, keep: Iterable[NodeId]) -> "GroundNetwork":
        """Restrict to `keep`, which must be closed under parents."""
        kept = set(keep)
        for node in kept:
            missing = [p for p in self._parents[node] if p not in kept]
            if missing:
                raise ValueError(f"cannot drop {missing[0]}: it is a parent of {node}")
        nodes = [n for n in self._nodes if n in kept]
        return GroundNetwork(
            nodes=nodes,
            parents=self._parents,
            cpt=self._cpt,
            kinds=self._kinds,
            provenance={arc: p for arc, p in self._provenance.items() if arc[1] in kept},
        )

    def rename(self, mapping: Mapping[str, str]) -> "GroundNetwork":
        """Rename constants everywhere; `mapping` should be a bijection."""
        renamed = {n: rename_node(n, mapping) for n in self._nodes}
        return GroundNetwork(
            nodes=[renamed[n] for n in self._nodes],
            parents={renamed[n]: tuple(renamed[p] for p in self._parents[n]) for n in self._nodes},
            cpt={renamed[n]: self._cpt[n] for n in self._nodes},
            kinds={renamed[n]: self._kinds[n] for n in self._nodes},
            provenance={
                (renamed[a], renamed[b]): prov.model_copy(update={
                    "substitution": {k: mapping.get(v, v) for k, v in prov.substitution.items()}
                })
                for (a, b), prov in self._provenance.items()
            },
        )
