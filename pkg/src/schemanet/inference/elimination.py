"""
Exact posterior computation by variable elimination.

Evidence is absorbed by restricting every factor that mentions an observed
variable; the remaining hidden variables are summed out one at a time in a
greedy min-degree order over the moralized graph.
"""

import logging
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx

from ..config import IMPOSSIBLE_EVIDENCE_THRESHOLD, PRUNE_BARREN
from ..errors import ImpossibleEvidence, UnknownNode, VarNotInScope
from ..grounding.network import GroundNetwork, NodeId
from ..models import QueryResult
from .factor import Factor, product

logger = logging.getLogger(__name__)

Evidence = Mapping[NodeId, bool]


def eliminate(factors: Sequence[Factor], var: NodeId) -> list[Factor]:
    """Multiply the factors mentioning `var` and sum it out."""
    relevant = [f for f in factors if var in f.scope]
    if not relevant:
        raise VarNotInScope(str(var))
    marginal = product(relevant).sum_out(var)
    marginal = marginal.reorder(sorted(marginal.scope, key=str))
    return [f for f in factors if var not in f.scope] + [marginal]


def elimination_order(net: GroundNetwork, keep: Iterable[NodeId]) -> list[NodeId]:
    """
    Every node outside `keep`, in greedy min-degree order.

    Degrees are taken on the moralized graph, updated with fill-in edges as
    nodes are eliminated; ties go to the lexicographically smaller name.
    """
    keep = set(keep)
    graph = nx.moral_graph(net.to_networkx())
    remaining = {n for n in net.nodes if n not in keep}
    order = []
    while remaining:
        node = min(remaining, key=lambda n: (graph.degree(n), str(n)))
        neighbors = list(graph.neighbors(node))
        for i, u in enumerate(neighbors):
            for v in neighbors[i + 1:]:
                graph.add_edge(u, v)
        graph.remove_node(node)
        remaining.remove(node)
        order.append(node)
    return order


def prune_barren(net: GroundNetwork, keep: Iterable[NodeId]) -> GroundNetwork:
    """Repeatedly drop leaves outside `keep`; marginals of the rest are unchanged."""
    keep = set(keep)
    alive = set(net.nodes)
    child_count = {n: len(net.children(n)) for n in net.nodes}
    stack = [n for n in net.nodes if child_count[n] == 0 and n not in keep]
    while stack:
        node = stack.pop()
        alive.discard(node)
        for parent in net.parents[node]:
            child_count[parent] -= 1
            if child_count[parent] == 0 and parent not in keep:
                stack.append(parent)
    logger.debug("pruned %d barren nodes", len(net) - len(alive))
    return net.subnetwork(alive)


def resolve_node(net: GroundNetwork, node: Union[NodeId, str]) -> NodeId:
    if isinstance(node, str):
        return net.find(node)
    if node not in net:
        raise UnknownNode(str(node))
    return node


def normalize_result(query: NodeId, ev: Evidence, result: Factor) -> QueryResult:
    """Turn an unnormalized factor over the query into a posterior, checking the evidence mass."""
    if query in ev:
        z = result.total()
        p_true = 1.0 if ev[query] else 0.0
    else:
        false_mass, true_mass = (float(x) for x in result.reorder((query,)).flat)
        z = false_mass + true_mass
        p_true = true_mass / z if z > IMPOSSIBLE_EVIDENCE_THRESHOLD else 0.0
    if z <= IMPOSSIBLE_EVIDENCE_THRESHOLD:
        raise ImpossibleEvidence(z)
    return QueryResult(
        query=str(query),
        p_true=min(1.0, max(0.0, p_true)),
        evidence_probability=min(1.0, z),
    )


def posterior(
    net: GroundNetwork,
    query: Union[NodeId, str],
    ev: Optional[Mapping[Union[NodeId, str], bool]] = None,
    prune: Optional[bool] = None,
    order: Optional[Sequence[NodeId]] = None,
) -> QueryResult:
    """
    P(query = true | ev) by variable elimination.

    `prune` enables barren-node pruning (default from config). `order`
    overrides the elimination order; it must cover every hidden variable.
    """
    query = resolve_node(net, query)
    evidence = {resolve_node(net, k): bool(v) for k, v in (ev or {}).items()}
    if PRUNE_BARREN if prune is None else prune:
        net = prune_barren(net, {query, *evidence})

    factors = []
    for node in net.nodes:
        factor = Factor.from_cpt(node, net.parents[node], net.cpt[node])
        for var, value in evidence.items():
            if var in factor.scope:
                factor = factor.restrict(var, value)
        factors.append(factor)

    if order is None:
        order = elimination_order(net, {query, *evidence})
    logger.debug("elimination order: %s", [str(n) for n in order])
    for var in order:
        if var in net and var != query and var not in evidence:
            factors = eliminate(factors, var)

    return normalize_result(query, evidence, product(factors))
