"""Pretty printer producing `.skb` text that parses back to an equal knowledge base."""

from itertools import product

from ..models import KnowledgeBase, Schema


def _number(value: float) -> str:
    return repr(float(value))


def _schema_lines(schema: Schema) -> list[str]:
    lines = [f"schema {schema}."]
    rows = schema.cpt.rows
    for assignment in product((True, False), repeat=len(schema.parents)):
        if assignment not in rows:
            continue
        conditions = ", ".join(
            str(parent) if truth else f"~{parent}"
            for parent, truth in zip(schema.parents, assignment)
        )
        lines.append(f"p({schema.child} | {conditions}) = {_number(rows[assignment])}.")
    return lines


def format_kb(kb: KnowledgeBase) -> str:
    """Render a knowledge base in the `.skb` format."""
    lines: list[str] = []
    for decl in kb.types:
        lines.append(f"type {decl.name} = {{ {', '.join(decl.members)} }}.")
    if kb.extra_individuals:
        lines.append(f"individuals {{ {', '.join(kb.extra_individuals)} }}.")
    for schema in kb.schemata:
        if lines:
            lines.append("")
        lines.extend(_schema_lines(schema))
    if kb.priors:
        lines.append("")
    for prior in kb.priors:
        lines.append(f"p({prior.atom}) = {_number(prior.p_true)}.")
    return "\n".join(lines) + "\n" if lines else ""
