"""
Knowledge-base validation.

Collects every structural problem that would stop a knowledge base from
being grounded. An empty result means the knowledge base is ground-ready.
"""

import logging
from collections import defaultdict

from ..models import (
    Classification,
    Diagnostic,
    DiagnosticCode,
    KnowledgeBase,
    Quantifier,
    Schema,
    SchemaAtom,
    SchemaKind,
)
from .classify import classify
from .unify import atoms_unify, subsumes

logger = logging.getLogger(__name__)


def _in_range(p: float) -> bool:
    return 0.0 <= p <= 1.0


def _check_cpt(index: int, schema: Schema) -> list[Diagnostic]:
    diagnostics = []
    cpt = schema.cpt
    if not cpt.is_complete():
        diagnostics.append(Diagnostic(
            code=DiagnosticCode.INCOMPLETE_CPT,
            message=(
                f"schema '{schema}' has {len(cpt.rows)} of {cpt.expected_rows} "
                f"contingency table rows"
            ),
            schema_index=index,
        ))
    bad = sorted(p for p in cpt.rows.values() if not _in_range(p))
    if bad:
        diagnostics.append(Diagnostic(
            code=DiagnosticCode.PROBABILITY_OUT_OF_RANGE,
            message=f"schema '{schema}' has row probabilities outside [0,1]: {bad}",
            schema_index=index,
        ))
    return diagnostics


def _check_shape(index: int, schema: Schema, kb: KnowledgeBase) -> list[Diagnostic]:
    if schema.kind == SchemaKind.PLAIN:
        if classify(schema) == Classification.LEFT_MULTIPLE:
            return [Diagnostic(
                code=DiagnosticCode.LEFT_MULTIPLE_REQUIRES_QUANTIFIER,
                message=(
                    f"schema '{schema}' is left-multiple: a parent parameter does not occur "
                    f"in the child; combine the parent instances with "
                    f"'exists X in type . a(X)' or 'forall X in type . a(X)'"
                ),
                schema_index=index,
            )]
        return []

    quantifier = schema.quantifier
    assert quantifier is not None
    diagnostics = []
    if kb.type_named(quantifier.type_name) is None:
        diagnostics.append(Diagnostic(
            code=DiagnosticCode.UNDECLARED_TYPE,
            message=f"schema '{schema}' quantifies over undeclared type '{quantifier.type_name}'",
            schema_index=index,
        ))
    unbound = sorted(quantifier.params - schema.child.params)
    if unbound:
        diagnostics.append(Diagnostic(
            code=DiagnosticCode.UNBOUND_QUANTIFIER_PARAMETER,
            message=(
                f"schema '{schema}': parameters {', '.join(unbound)} of the quantified "
                f"body do not occur in the child"
            ),
            schema_index=index,
        ))
    return diagnostics


def _parent_atoms(schema: Schema) -> list[SchemaAtom]:
    atoms = []
    for parent in schema.parents:
        atoms.append(parent.body if isinstance(parent, Quantifier) else parent)
    return atoms


def validate_kb(kb: KnowledgeBase) -> list[Diagnostic]:
    """
    Return all violations that make `kb` unfit for grounding.

    Checks contingency tables, ambiguous heads, quantifier types, bare
    left-multiple schemata, priors, and parents that nothing defines.
    """
    diagnostics: list[Diagnostic] = []

    heads: dict[tuple[str, int], list[int]] = defaultdict(list)
    for index, schema in enumerate(kb.schemata):
        diagnostics.extend(_check_cpt(index, schema))
        diagnostics.extend(_check_shape(index, schema, kb))
        heads[schema.child.signature].append(index)

    for (predicate, arity), indices in heads.items():
        for index in indices[1:]:
            diagnostics.append(Diagnostic(
                code=DiagnosticCode.AMBIGUOUS_HEAD,
                message=(
                    f"schema '{kb.schemata[index]}' defines {predicate}/{arity}, which "
                    f"schema '{kb.schemata[indices[0]]}' already defines"
                ),
                schema_index=index,
            ))

    for i, prior in enumerate(kb.priors):
        if not _in_range(prior.p_true):
            diagnostics.append(Diagnostic(
                code=DiagnosticCode.PROBABILITY_OUT_OF_RANGE,
                message=f"prior p({prior.atom}) = {prior.p_true} is outside [0,1]",
            ))
        if prior.atom.signature in heads:
            diagnostics.append(Diagnostic(
                code=DiagnosticCode.PRIOR_ON_SCHEMA_CHILD,
                message=f"p({prior.atom}) is given as a prior but a schema defines it",
                schema_index=heads[prior.atom.signature][0],
            ))
        for other in kb.priors[:i]:
            if atoms_unify(prior.atom, other.atom):
                diagnostics.append(Diagnostic(
                    code=DiagnosticCode.AMBIGUOUS_PRIOR,
                    message=f"priors p({other.atom}) and p({prior.atom}) overlap",
                ))

    for index, schema in enumerate(kb.schemata):
        for atom in _parent_atoms(schema):
            defined = any(
                subsumes(kb.schemata[h].child, atom) for h in heads.get(atom.signature, [])
            )
            if defined or any(subsumes(prior.atom, atom) for prior in kb.priors):
                continue
            diagnostics.append(Diagnostic(
                code=DiagnosticCode.UNDEFINED_PARENT,
                message=f"parent {atom} of schema '{schema}' has neither a defining schema nor a prior",
                schema_index=index,
            ))

    logger.debug("validated knowledge base: %d diagnostics", len(diagnostics))
    return diagnostics
