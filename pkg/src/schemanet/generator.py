"""
Seeded random knowledge bases for property checks.

Generated knowledge bases use unary and nullary predicates only, mention no
constants inside schemata, and are acyclic by construction: every schema
defines a fresh predicate from predicates defined before it.
"""

import random
from itertools import product
from typing import Optional

from .grounding import GroundNetwork, NodeId, ground
from .models import (
    CptTemplate,
    KnowledgeBase,
    Prior,
    Quantifier,
    QuantifierKind,
    Schema,
    SchemaAtom,
    SchemaKind,
    TypeDecl,
)

GROUP_TYPE = "grp"


def _probability(rng: random.Random) -> float:
    roll = rng.random()
    if roll < 0.05:
        return 0.0
    if roll < 0.1:
        return 1.0
    return round(rng.random(), 4)


def _atom(name: str, arity: int) -> SchemaAtom:
    return SchemaAtom(predicate=name, args=("X",) * arity)


def _rows(rng: random.Random, fan_in: int) -> dict[tuple[bool, ...], float]:
    return {assignment: _probability(rng) for assignment in product((True, False), repeat=fan_in)}


def _plain_schema(rng: random.Random, name: str, available: list[tuple[str, int]]) -> tuple[Schema, int]:
    nullary = [p for p in available if p[1] == 0]
    arity = 1 if not nullary else rng.choice((0, 1))
    candidates = available if arity == 1 else nullary
    chosen = rng.sample(candidates, k=min(len(candidates), rng.randint(1, 2)))
    parents = tuple(_atom(p, a) for p, a in chosen)
    child = _atom(name, arity)
    cpt = CptTemplate(child=child, parents=parents, rows=_rows(rng, len(parents)))
    return Schema(parents=parents, child=child, cpt=cpt), arity


def _quantified_schema(rng: random.Random, name: str, unary: list[str]) -> Schema:
    kind = rng.choice((QuantifierKind.EXISTS, QuantifierKind.FORALL))
    quantifier = Quantifier(
        kind=kind, bound_param="X", type_name=GROUP_TYPE, body=_atom(rng.choice(unary), 1)
    )
    child = _atom(name, 0)
    cpt = CptTemplate(child=child, parents=(quantifier,), rows=_rows(rng, 1))
    return Schema(
        parents=(quantifier,),
        child=child,
        cpt=cpt,
        kind=SchemaKind.EXISTENTIAL if kind == QuantifierKind.EXISTS else SchemaKind.UNIVERSAL,
        quantifier=quantifier,
    )


def _draw(rng: random.Random, max_schemata: int, max_individuals: int) -> KnowledgeBase:
    individuals = [f"i{k}" for k in range(rng.randint(1, max_individuals))]
    members = [c for c in individuals if rng.random() < 0.6]
    extras = [c for c in individuals if c not in members]

    available: list[tuple[str, int]] = []
    priors = []
    for k in range(rng.randint(1, 3)):
        arity = rng.choice((0, 1))
        available.append((f"r{k}", arity))
        priors.append(Prior(atom=_atom(f"r{k}", arity), p_true=round(rng.uniform(0.05, 0.95), 4)))

    schemata = []
    for k in range(rng.randint(1, max_schemata)):
        name = f"d{k}"
        unary = [p for p, a in available if a == 1]
        if unary and rng.random() < 0.25:
            schemata.append(_quantified_schema(rng, name, unary))
            available.append((name, 0))
        else:
            schema, arity = _plain_schema(rng, name, available)
            schemata.append(schema)
            available.append((name, arity))

    return KnowledgeBase(
        types=(TypeDecl(name=GROUP_TYPE, members=tuple(members)),),
        schemata=tuple(schemata),
        priors=tuple(priors),
        extra_individuals=tuple(extras),
    )


def random_kb(
    rng: random.Random,
    max_schemata: int = 6,
    max_individuals: int = 4,
    max_nodes: int = 20,
) -> KnowledgeBase:
    """A valid random knowledge base whose network has at most `max_nodes` nodes."""
    while True:
        kb = _draw(rng, max_schemata, max_individuals)
        if len(ground(kb)) <= max_nodes:
            return kb


def random_evidence(
    rng: random.Random, net: GroundNetwork, max_observed: int = 3, exclude: Optional[NodeId] = None
) -> dict[NodeId, bool]:
    candidates = [n for n in net.nodes if n != exclude]
    count = rng.randint(0, min(max_observed, len(candidates)))
    return {node: rng.random() < 0.5 for node in rng.sample(candidates, k=count)}


def new_individual(kb: KnowledgeBase) -> str:
    """A constant not yet used as an individual."""
    pool = set(kb.individual_pool())
    k = 0
    while f"n{k}" in pool:
        k += 1
    return f"n{k}"
