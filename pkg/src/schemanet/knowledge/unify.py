"""Unification and matching of parameterized atoms."""

from typing import Optional, Union

from ..models import GroundAtom, SchemaAtom, is_parameter

_Term = Union[str, tuple[str, str]]


def atoms_unify(left: SchemaAtom, right: SchemaAtom) -> bool:
    """True if some substitution makes the two atoms equal (parameters renamed apart)."""
    if left.signature != right.signature:
        return False

    binding: dict[_Term, _Term] = {}

    def resolve(term: _Term) -> _Term:
        while term in binding:
            term = binding[term]
        return term

    for x, y in zip(left.args, right.args):
        tx: _Term = ("L", x) if is_parameter(x) else x
        ty: _Term = ("R", y) if is_parameter(y) else y
        rx, ry = resolve(tx), resolve(ty)
        if rx == ry:
            continue
        if isinstance(rx, tuple):
            binding[rx] = ry
        elif isinstance(ry, tuple):
            binding[ry] = rx
        else:
            return False
    return True


def subsumes(general: SchemaAtom, specific: SchemaAtom) -> bool:
    """
    True if every instance of `specific` is an instance of `general`.

    Parameters of `specific` are treated as opaque constants.
    """
    if general.signature != specific.signature:
        return False
    binding: dict[str, str] = {}
    for g, s in zip(general.args, specific.args):
        if is_parameter(g):
            if binding.setdefault(g, s) != s:
                return False
        elif g != s:
            return False
    return True


def match_ground(pattern: SchemaAtom, atom: GroundAtom) -> Optional[dict[str, str]]:
    """Substitution instantiating `pattern` to `atom`, or None."""
    if pattern.predicate != atom.predicate or pattern.arity != atom.arity:
        return None
    binding: dict[str, str] = {}
    for p, c in zip(pattern.args, atom.args):
        if is_parameter(p):
            if binding.setdefault(p, c) != c:
                return None
        elif p != c:
            return None
    return binding
