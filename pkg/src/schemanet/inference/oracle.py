"""Brute-force joint enumeration, the reference for differential tests."""

from typing import Mapping, Optional, Union

from ..config import ORACLE_MAX_NODES
from ..errors import TooLargeForOracle
from ..grounding.network import GroundNetwork, NodeId
from ..models import QueryResult
from .elimination import normalize_result, resolve_node
from .factor import Factor, product


def joint_enumerate(net: GroundNetwork, max_nodes: Optional[int] = None) -> Factor:
    """The full joint distribution: the product of every CPT, scoped in node order."""
    limit = ORACLE_MAX_NODES if max_nodes is None else max_nodes
    if len(net) > limit:
        raise TooLargeForOracle(len(net), limit)
    factors = [Factor.from_cpt(n, net.parents[n], net.cpt[n]) for n in net.nodes]
    return product(factors).reorder(net.nodes)


def oracle_posterior(
    net: GroundNetwork,
    query: Union[NodeId, str],
    ev: Optional[Mapping[Union[NodeId, str], bool]] = None,
    joint: Optional[Factor] = None,
) -> QueryResult:
    """Posterior read off the joint table. Pass `joint` to reuse one enumeration."""
    query = resolve_node(net, query)
    evidence = {resolve_node(net, k): bool(v) for k, v in (ev or {}).items()}
    table = joint if joint is not None else joint_enumerate(net)
    for var, value in evidence.items():
        table = table.restrict(var, value)
    for var in table.scope:
        if var != query:
            table = table.sum_out(var)
    return normalize_result(query, evidence, table)
