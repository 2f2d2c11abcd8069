"""Exact inference on ground networks."""

from .elimination import Evidence, eliminate, elimination_order, posterior, prune_barren
from .factor import Factor
from .oracle import joint_enumerate, oracle_posterior

__all__ = [
    "Evidence",
    "Factor",
    "eliminate",
    "elimination_order",
    "joint_enumerate",
    "oracle_posterior",
    "posterior",
    "prune_barren",
]
