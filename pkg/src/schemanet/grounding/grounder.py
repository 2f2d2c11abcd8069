"""
Network construction.

Every schema in the knowledge base is instantiated by substituting the known
individuals for its parameters; each instance contributes arcs and a copy of
the schema's contingency table to the network. Existential and universal
schemata expand into a deterministic Or / And node over the members of their
type.
"""

import itertools
import logging
from dataclasses import dataclass

import networkx as nx

from ..errors import (
    CycleDetected,
    DuplicateNodeDefinition,
    EmptyIndividualPool,
    GroundingError,
    InvalidKnowledgeBase,
    MissingPrior,
    SelfArc,
    UndeclaredType,
)
from ..knowledge import classify, match_ground, validate_kb
from ..models import (
    Classification,
    CptTemplate,
    GroundAtom,
    KnowledgeBase,
    QuantifierKind,
    Schema,
    SchemaKind,
)
from .network import (
    CANONICAL_BOUND_PARAM,
    ArcProvenance,
    GroundNetwork,
    NodeId,
    NodeKind,
    QuantifierNodeId,
    deterministic_table,
)

logger = logging.getLogger(__name__)

Substitution = dict[str, str]


@dataclass(frozen=True)
class QuantifierExpansion:
    """A combination node and the body instances it gathers."""
    node: QuantifierNodeId
    parents: tuple[GroundAtom, ...]
    kind: NodeKind
    substitutions: tuple[Substitution, ...]

    @property
    def arcs(self) -> list[tuple[GroundAtom, QuantifierNodeId]]:
        return [(parent, self.node) for parent in self.parents]


def enumerate_substitutions(schema: Schema, kb: KnowledgeBase) -> list[Substitution]:
    """
    All substitutions of known individuals for the schema's parameters.

    Plain schemata range over the whole individual pool. For quantified
    schemata only the free parameters are substituted here; the bound one is
    expanded by `expand_quantifier`. Order is lexicographic in the constants.
    """
    if classify(schema) == Classification.LEFT_MULTIPLE:
        raise GroundingError(f"schema '{schema}' is left-multiple and cannot be instantiated")

    params = sorted(schema.params)
    if not params:
        return [{}]
    pool = kb.individual_pool()
    if not pool:
        raise EmptyIndividualPool(str(schema))
    return [dict(zip(params, combo)) for combo in itertools.product(pool, repeat=len(params))]


def expand_quantifier(schema: Schema, free_sub: Substitution, kb: KnowledgeBase) -> QuantifierExpansion:
    """Expand `exists/forall X in type . a(X)` into a node gathering a(c) for every member c."""
    quantifier = schema.quantifier
    if quantifier is None or schema.kind == SchemaKind.PLAIN:
        raise GroundingError(f"schema '{schema}' has no quantifier")
    decl = kb.type_named(quantifier.type_name)
    if decl is None:
        raise UndeclaredType(quantifier.type_name)

    body = quantifier.body.substitute(free_sub)
    node = QuantifierNodeId(
        kind=quantifier.kind,
        type_name=quantifier.type_name,
        body=body.substitute({quantifier.bound_param: CANONICAL_BOUND_PARAM}),
    )
    members = sorted(decl.members)
    substitutions = tuple({**free_sub, quantifier.bound_param: m} for m in members)
    parents = tuple(body.ground({quantifier.bound_param: m}) for m in members)
    kind = NodeKind.DET_OR if quantifier.kind == QuantifierKind.EXISTS else NodeKind.DET_AND
    return QuantifierExpansion(node=node, parents=parents, kind=kind, substitutions=substitutions)


def _parent_index_bits(index: int, fan_in: int) -> list[bool]:
    return [bool((index >> (fan_in - 1 - i)) & 1) for i in range(fan_in)]


def instantiate_cpt(
    template: CptTemplate,
    ground_parents: list[NodeId],
    unique_parents: list[NodeId],
) -> tuple[float, ...]:
    """
    Ground table for one schema instance.

    `ground_parents` lists the instance's parents in template order and may
    contain repeats when a substitution made two parent atoms coincide; only
    the template rows where coinciding parents agree are kept.
    """
    positions = [unique_parents.index(p) for p in ground_parents]
    fan_in = len(unique_parents)
    table = []
    for index in range(2 ** fan_in):
        bits = _parent_index_bits(index, fan_in)
        table.append(template.rows[tuple(bits[p] for p in positions)])
    return tuple(table)


class _NetworkBuilder:
    def __init__(self) -> None:
        self.parents: dict[NodeId, tuple[NodeId, ...]] = {}
        self.cpt: dict[NodeId, tuple[float, ...]] = {}
        self.kinds: dict[NodeId, NodeKind] = {}
        self.provenance: dict[tuple[NodeId, NodeId], ArcProvenance] = {}
        self.referenced: set[NodeId] = set()

    def define(
        self,
        node: NodeId,
        parents: tuple[NodeId, ...],
        table: tuple[float, ...],
        kind: NodeKind,
        provenance: list[ArcProvenance],
    ) -> None:
        if node in self.parents:
            if self.parents[node] != parents:
                raise DuplicateNodeDefinition(str(node))
            return
        self.parents[node] = parents
        self.cpt[node] = table
        self.kinds[node] = kind
        self.referenced.update(parents)
        for parent, prov in zip(parents, provenance):
            self.provenance.setdefault((parent, node), prov)

    def add_roots(self, kb: KnowledgeBase) -> None:
        for node in sorted(self.referenced - set(self.parents), key=str):
            prior = None
            if isinstance(node, GroundAtom):
                prior = next((p for p in kb.priors if match_ground(p.atom, node) is not None), None)
            if prior is None:
                raise MissingPrior(str(node))
            self.parents[node] = ()
            self.cpt[node] = (prior.p_true,)
            self.kinds[node] = NodeKind.CHANCE

    def build(self) -> GroundNetwork:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.parents)
        graph.add_edges_from((p, n) for n, ps in self.parents.items() for p in ps)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [str(u) for u, _ in nx.find_cycle(graph)]
            raise CycleDetected(cycle)
        order = list(nx.lexicographical_topological_sort(graph, key=str))
        return GroundNetwork(
            nodes=order,
            parents=self.parents,
            cpt=self.cpt,
            kinds=self.kinds,
            provenance=self.provenance,
        )


def _ground_plain(builder: _NetworkBuilder, index: int, schema: Schema, sub: Substitution) -> None:
    child = schema.child.ground(sub)
    ground_parents: list[NodeId] = [p.ground(sub) for p in schema.parents]  # type: ignore[union-attr]
    if child in ground_parents:
        raise SelfArc(str(child), str(schema))
    unique = list(dict.fromkeys(ground_parents))
    table = instantiate_cpt(schema.cpt, ground_parents, unique)
    prov = ArcProvenance(schema_index=index, substitution=sub)
    builder.define(child, tuple(unique), table, NodeKind.CHANCE, [prov] * len(unique))


def _ground_quantified(
    builder: _NetworkBuilder, index: int, schema: Schema, sub: Substitution, kb: KnowledgeBase
) -> None:
    expansion = expand_quantifier(schema, sub, kb)
    builder.define(
        expansion.node,
        expansion.parents,
        deterministic_table(expansion.kind, len(expansion.parents)),
        expansion.kind,
        [ArcProvenance(schema_index=index, substitution=s, gathering=True) for s in expansion.substitutions],
    )
    child = schema.child.ground(sub)
    rows = schema.cpt.rows
    table = (rows[(False,)], rows[(True,)])
    builder.define(
        child, (expansion.node,), table, NodeKind.CHANCE, [ArcProvenance(schema_index=index, substitution=sub)]
    )


def ground(kb: KnowledgeBase) -> GroundNetwork:
    """
    Build the ground Bayesian network for a knowledge base and its individuals.

    Raises InvalidKnowledgeBase when validation fails, and CycleDetected,
    SelfArc or DuplicateNodeDefinition when the instances do not form a
    Bayesian network.

    Like cycles, MissingPrior depends on the individuals and can follow a
    clean validation: a parent such as `bar(a)`, defined only by a schema for
    `bar(X)`, becomes a root without a prior while `a` is not a known
    individual.
    """
    diagnostics = validate_kb(kb)
    if diagnostics:
        raise InvalidKnowledgeBase(diagnostics)

    builder = _NetworkBuilder()
    for index, schema in enumerate(kb.schemata):
        try:
            substitutions = enumerate_substitutions(schema, kb)
        except EmptyIndividualPool:
            logger.warning("no individuals known; schema '%s' contributes no instances", schema)
            continue
        for sub in substitutions:
            if schema.kind == SchemaKind.PLAIN:
                _ground_plain(builder, index, schema, sub)
            else:
                _ground_quantified(builder, index, schema, sub, kb)

    builder.add_roots(kb)
    net = builder.build()
    logger.info("grounded %d nodes, %d arcs", len(net), len(net.arcs()))
    return net


def add_member(net: GroundNetwork, kb: KnowledgeBase, type_name: str, constant: str) -> GroundNetwork:
    """
    Network for `kb` with `constant` added to the named type.

    Defined as re-grounding the extended knowledge base; an undeclared type is
    declared on the fly.
    """
    decl = kb.type_named(type_name)
    if decl is not None and constant in decl.members:
        return net
    if decl is None:
        logger.warning("declaring type '%s' at run time", type_name)
    return ground(kb.with_member(type_name, constant))
