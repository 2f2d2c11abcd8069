"""
Exception hierarchy for schemanet.

Every error raised on purpose by the library derives from SchemaNetError, so
front ends can map domain failures to a single exit code / status.
"""

from typing import Any, Sequence


class SchemaNetError(Exception):
    """Base class for all schemanet errors."""


class ParseError(SchemaNetError):
    """Text could not be parsed. Carries the positioned diagnostics."""

    def __init__(self, diagnostics: Sequence[Any]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "parse error")


class InvalidKnowledgeBase(SchemaNetError):
    """The knowledge base has validation diagnostics and cannot be grounded."""

    def __init__(self, diagnostics: Sequence[Any]):
        self.diagnostics = list(diagnostics)
        lines = "\n".join(f"  - {d}" for d in self.diagnostics)
        super().__init__(f"knowledge base is not ground-ready:\n{lines}")


# Grounding


class GroundingError(SchemaNetError):
    """Base class for failures while building the ground network."""


class EmptyIndividualPool(GroundingError):
    def __init__(self, schema: str):
        self.schema = schema
        super().__init__(f"schema '{schema}' has parameters but no individuals are declared")


class UndeclaredType(GroundingError):
    def __init__(self, type_name: str):
        self.type_name = type_name
        super().__init__(f"type '{type_name}' is not declared")


class CycleDetected(GroundingError):
    """Grounding produced a directed cycle. `cycle` lists the nodes in order."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        path = " -> ".join(self.cycle + self.cycle[:1])
        super().__init__(f"grounding produced a cycle: {path}")


class SelfArc(GroundingError):
    def __init__(self, node: str, schema: str):
        self.node = node
        self.schema = schema
        super().__init__(f"schema '{schema}' makes {node} its own parent")


class DuplicateNodeDefinition(GroundingError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"{node} is defined by two schema instances with different parents")


class MissingPrior(GroundingError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"root node {node} has no prior")


# Inference


class InferenceError(SchemaNetError):
    """Base class for query failures."""


class UnknownNode(InferenceError):
    def __init__(self, name: str, suggestions: Sequence[str] = ()):
        self.name = name
        self.suggestions = list(suggestions)
        message = f"unknown node '{name}'"
        if self.suggestions:
            message += f" (did you mean: {', '.join(self.suggestions)}?)"
        super().__init__(message)


class ImpossibleEvidence(InferenceError):
    def __init__(self, probability: float):
        self.probability = probability
        super().__init__(f"evidence has probability {probability:.3g}; it is impossible under the model")


class TooLargeForOracle(InferenceError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"network has {size} nodes; joint enumeration is limited to {limit}")


class VarNotInScope(InferenceError):
    def __init__(self, var: str):
        self.var = var
        super().__init__(f"variable {var} occurs in no factor")
