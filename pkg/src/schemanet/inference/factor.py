"""
Factors over boolean network variables.

A factor's values form a numpy array with one axis of length 2 per scope
variable (index 0 = false, 1 = true), so the flattened table is ordered with
the first scope variable as the most significant bit.
"""

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from ..errors import VarNotInScope
from ..grounding.network import NodeId


class Factor:
    """A nonnegative table over a set of boolean variables."""

    __slots__ = ("scope", "values")

    def __init__(self, scope: Sequence[NodeId], values):
        self.scope: tuple[NodeId, ...] = tuple(scope)
        if len(set(self.scope)) != len(self.scope):
            raise ValueError(f"factor scope has duplicates: {[str(v) for v in self.scope]}")
        array = np.asarray(values, dtype=float)
        shape = (2,) * len(self.scope)
        if array.shape != shape:
            if array.size != 2 ** len(self.scope):
                raise ValueError(f"factor over {len(self.scope)} variables needs {2 ** len(self.scope)} values")
            array = array.reshape(shape)
        if np.any(array < 0):
            raise ValueError("factor values must be nonnegative")
        self.values = array

    @classmethod
    def unit(cls) -> "Factor":
        return cls((), np.array(1.0))

    @classmethod
    def from_cpt(cls, node: NodeId, parents: Sequence[NodeId], table: Sequence[float]) -> "Factor":
        """Factor P(node | parents) with scope (*parents, node)."""
        p_true = np.asarray(table, dtype=float).reshape((2,) * len(parents))
        return cls(tuple(parents) + (node,), np.stack([1.0 - p_true, p_true], axis=-1))

    def __repr__(self) -> str:
        return f"Factor({[str(v) for v in self.scope]})"

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def total(self) -> float:
        return float(self.values.sum())

    def _aligned(self, scope: tuple[NodeId, ...]) -> np.ndarray:
        """Values transposed to `scope` order with singleton axes for absent variables."""
        if not self.scope:
            return self.values.reshape((1,) * len(scope))
        axes = sorted(range(len(self.scope)), key=lambda i: scope.index(self.scope[i]))
        shape = [2 if v in self.scope else 1 for v in scope]
        return np.transpose(self.values, axes).reshape(shape)

    def multiply(self, other: "Factor") -> "Factor":
        scope = self.scope + tuple(v for v in other.scope if v not in self.scope)
        return Factor(scope, self._aligned(scope) * other._aligned(scope))

    __mul__ = multiply

    def sum_out(self, var: NodeId) -> "Factor":
        if var not in self.scope:
            raise VarNotInScope(str(var))
        axis = self.scope.index(var)
        return Factor(self.scope[:axis] + self.scope[axis + 1:], self.values.sum(axis=axis))

    def restrict(self, var: NodeId, value: bool) -> "Factor":
        """Condition on `var = value`, dropping it from the scope."""
        if var not in self.scope:
            raise VarNotInScope(str(var))
        axis = self.scope.index(var)
        return Factor(self.scope[:axis] + self.scope[axis + 1:], np.take(self.values, int(value), axis=axis))

    def reorder(self, scope: Sequence[NodeId]) -> "Factor":
        scope = tuple(scope)
        if set(scope) != set(self.scope) or len(scope) != len(self.scope):
            raise ValueError("reorder needs a permutation of the scope")
        return Factor(scope, self._aligned(scope))

    def value(self, assignment: dict[NodeId, bool]) -> float:
        return float(self.values[tuple(int(assignment[v]) for v in self.scope)])


def product(factors: Iterable[Factor]) -> Factor:
    return reduce(Factor.multiply, factors, Factor.unit())
