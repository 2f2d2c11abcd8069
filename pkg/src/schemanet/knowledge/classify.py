"""
Schema classification.

The parent side of `parents -> child` is the left side of the arc and the
child is the right side. A parameter that appears only on the left makes the
schema left-multiple (one child, arbitrarily many parent instances); one that
appears only on the right makes it right-multiple.
"""

from ..models import Classification, Schema, SchemaKind


def classify(schema: Schema) -> Classification:
    """Classify a schema by where its parameters occur."""
    if schema.kind != SchemaKind.PLAIN:
        return Classification.QUANTIFIED

    left: set[str] = set()
    for parent in schema.parents:
        left |= parent.params
    right = set(schema.child.params)

    # Both left- and right-multiple reports the rejecting case.
    if left - right:
        return Classification.LEFT_MULTIPLE
    if right - left:
        return Classification.RIGHT_MULTIPLE
    return Classification.UNIQUE
