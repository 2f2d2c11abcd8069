"""Grounding of knowledge bases into Bayesian networks."""

from .dot import to_dot, write_dot
from .grounder import add_member, enumerate_substitutions, expand_quantifier, ground
from .network import ArcProvenance, GroundNetwork, NodeId, NodeKind, QuantifierNodeId

__all__ = [
    "ArcProvenance",
    "GroundNetwork",
    "NodeId",
    "NodeKind",
    "QuantifierNodeId",
    "add_member",
    "enumerate_substitutions",
    "expand_quantifier",
    "ground",
    "to_dot",
    "write_dot",
]
