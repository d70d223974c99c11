"""Two-valued Tarskian truth in finite structures.

Two evaluators: a vectorized truth-table one for sweeps, and a plain
recursive one that follows the satisfaction clauses literally.  They are
kept separate from the Boolean-valued evaluator on purpose so that each
can check the others.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .structure import UnassignedVariableError
from .syntax import (
    And, Atom, Const, Eq, Exists, FuncEq, Not, bound_vars, free_vars, rename_apart,
)


@dataclass(frozen=True, eq=False)
class ClassicalStructure:
    """Domain ``0..size-1`` with boolean relation tables.

    Function symbols are given by their graphs: ``functions[f][y, s...]``
    is true iff y = f(s...).  Equality is identity unless an explicit
    ``equality`` table is supplied.
    """

    size: int
    relations: Mapping[str, np.ndarray] = field(default_factory=dict)
    functions: Mapping[str, np.ndarray] = field(default_factory=dict)
    labels: tuple = ()

    @property
    def equality(self) -> np.ndarray:
        return np.eye(self.size, dtype=bool)

    def truth_table(self, phi, free: Sequence[str]) -> np.ndarray:
        free = tuple(free)
        if free_vars(phi) - set(free):
            raise UnassignedVariableError(f"unassigned: {sorted(free_vars(phi) - set(free))}")
        phi = rename_apart(phi, avoid=free)
        order = list(free) + bound_vars(phi)
        axis = {v: i for i, v in enumerate(order)}
        nax = len(order)
        n = self.size
        idx = [np.arange(n).reshape([n if k == i else 1 for k in range(nax)]) for i in range(nax)]

        def place(t, vs):
            return t[tuple(idx[axis[v]] for v in vs)]

        def go(f):
            if isinstance(f, Atom):
                t = self.relations[f.pred]
                if not f.args:
                    return np.full((1,) * nax, bool(t[()]))
                return place(t, f.args)
            if isinstance(f, Eq):
                return place(self.equality, (f.left, f.right))
            if isinstance(f, FuncEq):
                return place(self.functions[f.func], (f.target,) + tuple(f.args))
            if isinstance(f, Const):
                return np.full((1,) * nax, f.value)
            if isinstance(f, Not):
                return ~go(f.body)
            if isinstance(f, And):
                return go(f.left) & go(f.right)
            if isinstance(f, Exists):
                return np.any(go(f.body), axis=axis[f.var], keepdims=True)
            raise TypeError(f)

        out = go(phi)
        if nax == 0:
            return np.asarray(out).reshape(())
        out = np.broadcast_to(out, (n,) * len(free) + (1,) * (nax - len(free)))
        return np.array(out.reshape((n,) * len(free)), dtype=bool)

    def satisfies(self, phi, assignment: Mapping[str, int]) -> bool:
        """Literal recursive satisfaction, used as an oracle on small inputs."""
        if isinstance(phi, Atom):
            return bool(self.relations[phi.pred][tuple(assignment[a] for a in phi.args)])
        if isinstance(phi, Eq):
            return assignment[phi.left] == assignment[phi.right]
        if isinstance(phi, FuncEq):
            return bool(self.functions[phi.func][(assignment[phi.target],) + tuple(assignment[a] for a in phi.args)])
        if isinstance(phi, Const):
            return phi.value
        if isinstance(phi, Not):
            return not self.satisfies(phi.body, assignment)
        if isinstance(phi, And):
            return self.satisfies(phi.left, assignment) and self.satisfies(phi.right, assignment)
        if isinstance(phi, Exists):
            return any(self.satisfies(phi.body, {**assignment, phi.var: d}) for d in range(self.size))
        raise TypeError(phi)


def membership_structure(domain: Sequence[Any], member, in_v=None) -> ClassicalStructure:
    """Structure for ∈ (and optionally V̌) over an explicit domain of objects.

    ``member(x, y)`` decides x ∈ y; ``in_v(x)`` decides the V̌ predicate
    and defaults to true everywhere.
    """
    n = len(domain)
    E = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(domain):
        for j, y in enumerate(domain):
            E[i, j] = bool(member(x, y))
    V = np.array([True if in_v is None else bool(in_v(x)) for x in domain], dtype=bool)
    return ClassicalStructure(n, {"in": E, "V": V}, {}, tuple(domain))
