"""Knowledge-base classification, unification and validation."""

from .classify import classify
from .unify import atoms_unify, match_ground, subsumes
from .validator import validate_kb

__all__ = ["classify", "atoms_unify", "match_ground", "subsumes", "validate_kb"]
