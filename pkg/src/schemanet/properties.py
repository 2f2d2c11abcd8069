"""
Randomized correctness checks.

Each trial draws a knowledge base from `generator`, grounds it and compares
two computations that must agree. A trial returns the largest absolute
difference it saw, and raises PropertyViolation when structures disagree
or a difference exceeds the tolerance.
"""

import logging
import random
from typing import Optional

import numpy as np

from .config import TOLERANCE
from .errors import ImpossibleEvidence, SchemaNetError
from .generator import new_individual, random_evidence, random_kb
from .grounding import GroundNetwork, NodeId, ground
from .grounding.network import rename_node
from .inference import Factor, joint_enumerate, oracle_posterior, posterior
from .models import QueryResult

logger = logging.getLogger(__name__)


class PropertyViolation(SchemaNetError):
    """Two computations that must agree did not."""


def _answer(compute) -> Optional[QueryResult]:
    try:
        return compute()
    except ImpossibleEvidence:
        return None


def _compare(label: str, left: Optional[QueryResult], right: Optional[QueryResult], tolerance: float) -> float:
    if (left is None) != (right is None):
        raise PropertyViolation(f"{label}: only one side found the evidence impossible")
    if left is None or right is None:
        return 0.0
    diff = max(
        abs(left.p_true - right.p_true),
        abs(left.evidence_probability - right.evidence_probability),
    )
    if diff > tolerance:
        raise PropertyViolation(f"{label}: {left.p_true!r} vs {right.p_true!r} (diff {diff:.3g})")
    return diff


def oracle_trial(rng: random.Random, queries: int = 3, tolerance: float = TOLERANCE) -> float:
    """Variable elimination against joint enumeration on one random knowledge base."""
    net = ground(random_kb(rng))
    joint = joint_enumerate(net)
    worst = 0.0
    for _ in range(queries):
        query = rng.choice(net.nodes)
        ev = random_evidence(rng, net, exclude=query)
        for prune in (True, False):
            fast = _answer(lambda: posterior(net, query, ev, prune=prune))
            slow = _answer(lambda: oracle_posterior(net, query, ev, joint=joint))
            worst = max(worst, _compare(f"P({query})", fast, slow, tolerance))
    return worst


def _same_network(left: GroundNetwork, right: GroundNetwork, tolerance: float) -> bool:
    """Same nodes, parents and tables; parent order may differ."""
    if set(left.nodes) != set(right.nodes):
        return False
    for node in left.nodes:
        if set(left.parents[node]) != set(right.parents[node]):
            return False
        mine = Factor.from_cpt(node, left.parents[node], left.cpt[node])
        theirs = Factor.from_cpt(node, right.parents[node], right.cpt[node])
        if not np.allclose(mine.reorder(theirs.scope).values, theirs.values, rtol=0.0, atol=tolerance):
            return False
    return True


def renaming_trial(rng: random.Random, queries: int = 3, tolerance: float = TOLERANCE) -> float:
    """Renaming individuals bijectively renames the network and keeps every posterior."""
    kb = random_kb(rng)
    pool = kb.individual_pool()
    shuffled = list(pool)
    rng.shuffle(shuffled)
    mapping = {old: f"z{new}" for old, new in zip(pool, shuffled)}

    net = ground(kb)
    renamed = ground(kb.rename_individuals(mapping))
    if not _same_network(net.rename(mapping), renamed, tolerance):
        raise PropertyViolation(f"renaming {mapping} changed the network")

    worst = 0.0
    for _ in range(queries):
        query = rng.choice(net.nodes)
        ev = random_evidence(rng, net, exclude=query)
        renamed_ev = {rename_node(n, mapping): v for n, v in ev.items()}
        before = _answer(lambda: posterior(net, query, ev))
        after = _answer(lambda: posterior(renamed, rename_node(query, mapping), renamed_ev))
        worst = max(worst, _compare(f"P({query})", before, after, tolerance))
    return worst


def irrelevance_trial(rng: random.Random, queries: int = 3, tolerance: float = TOLERANCE) -> float:
    """An unobserved individual outside every type leaves existing posteriors unchanged."""
    kb = random_kb(rng)
    net = ground(kb)
    extended = ground(kb.with_individual(new_individual(kb)))
    missing = [n for n in net.nodes if n not in extended]
    if missing:
        raise PropertyViolation(f"adding an individual removed {missing[0]}")

    worst = 0.0
    for _ in range(queries):
        query: NodeId = rng.choice(net.nodes)
        ev = random_evidence(rng, net, exclude=query)
        before = _answer(lambda: posterior(net, query, ev))
        after = _answer(lambda: posterior(extended, query, ev))
        worst = max(worst, _compare(f"P({query})", before, after, tolerance))
    return worst


TRIALS = {
    "oracle": oracle_trial,
    "renaming": renaming_trial,
    "irrelevance": irrelevance_trial,
}
