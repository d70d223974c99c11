"""Boolean-valued structures over a finite name sequence.

Tables hold element masks (numpy int64).  A relation of arity k is a
k-dimensional array; a function symbol of arity k is a (k+1)-dimensional
array indexed ``[y, s1, ..., sk]`` holding ⟦y = f(s1..sk)⟧.  Quantifiers
join over the declared names, so every value is relative to that finite
sequence; reports carry its length as ``pool_size``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from ..kernel.algebra import Algebra, Element
from .syntax import (
    And, Atom, Const, Eq, Exists, FuncEq, Not, Signature, bound_vars, free_vars,
    rename_apart,
)

MASK = np.int64


class UnassignedVariableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BValuedStructure:
    algebra: Algebra
    names: tuple
    equality: np.ndarray
    relations: Mapping[str, np.ndarray] = field(default_factory=dict)
    functions: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.names)
        if self.equality.shape != (n, n):
            raise ValueError("equality table must be names x names")
        for r, t in self.relations.items():
            if any(d != n for d in t.shape):
                raise ValueError(f"relation table {r} has the wrong shape")
        for f, t in self.functions.items():
            if t.ndim < 1 or any(d != n for d in t.shape):
                raise ValueError(f"function table {f} has the wrong shape")
        full = self.algebra.full_mask
        for t in [self.equality, *self.relations.values(), *self.functions.values()]:
            if t.size and (t.min() < 0 or t.max() > full):
                raise ValueError("table entry outside the algebra")

    @property
    def size(self) -> int:
        return len(self.names)

    def signature(self) -> Signature:
        rels = tuple((r, t.ndim) for r, t in self.relations.items() if r not in ("in", "V"))
        funs = tuple((f, t.ndim - 1) for f, t in self.functions.items())
        return Signature(rels, funs, membership="in" in self.relations)

    def index(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a name of this structure") from None

    def element(self, mask) -> Element:
        return Element(self.algebra, int(mask))


# ---------------------------------------------------------------- evaluation

def value_table(S: BValuedStructure, phi, free: Sequence[str]) -> np.ndarray:
    """⟦phi⟧ for every assignment of names to ``free``, as an array.

    Axis k of the result ranges over the value of ``free[k]``.
    """
    free = tuple(free)
    missing = free_vars(phi) - set(free)
    if missing:
        raise UnassignedVariableError(f"unassigned free variables: {sorted(missing)}")
    phi = rename_apart(phi, avoid=free)
    order = list(free) + bound_vars(phi)
    axis = {v: i for i, v in enumerate(order)}
    nax = len(order)
    n = S.size
    full = MASK(S.algebra.full_mask)
    idx = [np.arange(n).reshape([n if k == i else 1 for k in range(nax)]) for i in range(nax)]

    def place(table, vars_):
        return table[tuple(idx[axis[v]] for v in vars_)]

    def go(f):
        if isinstance(f, Atom):
            t = S.relations.get(f.pred)
            if t is None:
                raise KeyError(f"structure has no relation {f.pred!r}")
            if t.ndim != len(f.args):
                raise ValueError(f"{f.pred} has arity {t.ndim}")
            if not f.args:
                return np.full((1,) * nax, t[()], dtype=MASK)
            return place(t, f.args)
        if isinstance(f, Eq):
            return place(S.equality, (f.left, f.right))
        if isinstance(f, FuncEq):
            t = S.functions.get(f.func)
            if t is None:
                raise KeyError(f"structure has no function {f.func!r}")
            return place(t, (f.target,) + tuple(f.args))
        if isinstance(f, Const):
            return np.full((1,) * nax, full if f.value else 0, dtype=MASK)
        if isinstance(f, Not):
            return full ^ go(f.body)
        if isinstance(f, And):
            return go(f.left) & go(f.right)
        if isinstance(f, Exists):
            body = go(f.body)
            return np.bitwise_or.reduce(body, axis=axis[f.var], keepdims=True)
        raise TypeError(f)

    if nax == 0:
        out = go(phi)
        return np.asarray(out, dtype=MASK).reshape(())
    out = go(phi)
    out = np.broadcast_to(out, (n,) * len(free) + (1,) * (nax - len(free)))
    return np.array(out.reshape((n,) * len(free)), dtype=MASK)


def boolean_value(S: BValuedStructure, phi, assignment: Mapping[str, Any] | None = None) -> Element:
    """⟦phi⟧ under an assignment of free variables to names of S."""
    assignment = dict(assignment or {})
    fv = sorted(free_vars(phi))
    missing = [v for v in fv if v not in assignment]
    if missing:
        raise UnassignedVariableError(f"unassigned free variables: {missing}")
    table = value_table(S, phi, fv)
    pos = tuple(S.index(assignment[v]) for v in fv)
    return S.element(table[pos])


@dataclass(frozen=True)
class Fullness:
    full: bool
    witness: Any
    join: Element
    pool_size: int


def fullness_witness(S: BValuedStructure, phi, var: str, params: Mapping[str, Any] | None = None) -> Fullness:
    """A name t with ⟦phi(t)⟧ = ⟦∃var phi⟧, or a report that none exists."""
    params = dict(params or {})
    fv = [var] + sorted(free_vars(phi) - {var})
    for v in fv[1:]:
        if v not in params:
            raise UnassignedVariableError(f"unassigned parameter {v}")
    table = value_table(S, phi, fv)
    sl = table[(slice(None),) + tuple(S.index(params[v]) for v in fv[1:])]
    j = int(np.bitwise_or.reduce(sl)) if sl.size else 0
    for k in range(S.size):
        if int(sl[k]) == j:
            return Fullness(True, S.names[k], S.element(j), S.size)
    return Fullness(False, None, S.element(j), S.size)


# ---------------------------------------------------------------- law checks

@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def to_json(self, names) -> dict:
        return {"law": self.law, "witness": [str(names[i]) for i in self.witness]}


@dataclass(frozen=True)
class LawReport:
    violations: tuple
    pool_size: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws_failed(self) -> list[str]:
        return sorted({v.law for v in self.violations})


def _first(bad: np.ndarray):
    hits = np.argwhere(bad)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def check_laws(S: BValuedStructure) -> LawReport:
    """Equality, congruence and function laws over all tuples of names.

    Each violated law is reported once with its first witness tuple.
    """
    E = S.equality
    n = S.size
    full = MASK(S.algebra.full_mask)
    out = []

    def note(law, bad):
        w = _first(bad)
        if w is not None:
            out.append(Violation(law, w))

    note("reflexivity", np.diagonal(E) != full)
    note("symmetry", E != E.T)
    # ⟦s=t⟧ ∧ ⟦t=u⟧ ≤ ⟦s=u⟧ at axes (s, t, u)
    lhs = E[:, :, None] & E[None, :, :]
    note("transitivity", (lhs & ~E[:, None, :]) != 0)

    for r, T in S.relations.items():
        k = T.ndim
        if k == 0:
            continue
        # ⋀⟦s_i=t_i⟧ ∧ ⟦R(s)⟧ ≤ ⟦R(t)⟧ over axes (s_1..s_k, t_1..t_k)
        acc = _broadcast_eqs(E, k) & T.reshape(T.shape + (1,) * k)
        note(f"congruence[{r}]", (acc & ~T.reshape((1,) * k + T.shape)) != 0)

    for f, T in S.functions.items():
        k = T.ndim - 1
        # argument congruence: ⋀⟦s_i=t_i⟧ ∧ ⟦y=f(s)⟧ ≤ ⟦y=f(t)⟧, axes (y, s.., t..)
        if k:
            eqs = _broadcast_eqs(E, k)[None]
            lhs = eqs & T.reshape(T.shape + (1,) * k)
            rhs = T.reshape((n,) + (1,) * k + (n,) * k)
            note(f"function-congruence[{f}]", (lhs & ~rhs) != 0)
        # totality: ⋁_t ⟦t=f(s)⟧ = 1
        tot = np.bitwise_or.reduce(T, axis=0) if n else np.zeros(T.shape[1:], MASK)
        note(f"function-totality[{f}]", np.asarray(tot != full).reshape(T.shape[1:] or (1,)))
        # functionality: ⟦t0=f(s)⟧ ∧ ⟦t1=f(s)⟧ ≤ ⟦t0=t1⟧, axes (t0, t1, s..)
        both = T[:, None] & T[None, :]
        eq01 = E.reshape((n, n) + (1,) * k)
        note(f"function-functionality[{f}]", (both & ~eq01) != 0)

    return LawReport(tuple(out), n)


def _broadcast_eqs(E: np.ndarray, k: int) -> np.ndarray:
    """⋀_i ⟦s_i = t_i⟧ as an array over axes (s_1..s_k, t_1..t_k)."""
    n = E.shape[0]
    acc = None
    for i in range(k):
        side = [n if j == i else 1 for j in range(k)]
        t = E.reshape(side + side)
        acc = t if acc is None else acc & t
    return acc


# ---------------------------------------------------------------- builders

def structure_from_json(doc: Mapping) -> BValuedStructure:
    """Read ``{"atoms", "names", "equality", "relations", "functions"}``.

    Tables are lists of rows ``[arg names..., [atom indices]]``.  Missing
    equality rows default to 1 on the diagonal and 0 elsewhere; missing
    relation rows default to 0.
    """
    alg = Algebra(int(doc["atoms"]))
    names = tuple(doc["names"])
    n = len(names)
    pos = {s: i for i, s in enumerate(names)}

    def mask(atoms):
        return alg.element(atoms).mask

    E = np.zeros((n, n), MASK)
    if "equality" in doc:
        for a, b, atoms in doc["equality"]:
            E[pos[a], pos[b]] = mask(atoms)
    else:
        np.fill_diagonal(E, alg.full_mask)
    rels = {}
    for r, spec in doc.get("relations", {}).items():
        arity = spec["arity"]
        T = np.zeros((n,) * arity, MASK)
        for row in spec["rows"]:
            *args, atoms = row
            T[tuple(pos[a] for a in args)] = mask(atoms)
        rels[r] = T
    funs = {}
    for f, spec in doc.get("functions", {}).items():
        arity = spec["arity"]
        T = np.zeros((n,) * (arity + 1), MASK)
        for row in spec["rows"]:
            *args, atoms = row
            T[tuple(pos[a] for a in args)] = mask(atoms)
        funs[f] = T
    return BValuedStructure(alg, names, E, rels, funs)


@dataclass(frozen=True)
class ClassicalModel:
    """A finite two-valued structure: relations as boolean arrays,
    functions as integer arrays of results."""

    size: int
    relations: Mapping[str, np.ndarray] = field(default_factory=dict)
    functions: Mapping[str, np.ndarray] = field(default_factory=dict)


def ultraproduct_structure(models: Sequence[ClassicalModel], functions_: Sequence[tuple]) -> BValuedStructure:
    """The Boolean-valued structure on tuples f with f(i) in M_i.

    The algebra is the powerset of the index set and
    ⟦R(f⃗)⟧ = {i : M_i ⊨ R(f⃗(i))}; likewise for = and function graphs.
    ``functions_`` lists the names: each is a tuple of one element per
    factor.
    """
    I = len(models)
    alg = Algebra(I)
    names = tuple(tuple(f) for f in functions_)
    n = len(names)
    E = np.zeros((n, n), MASK)
    for a, b in itertools.product(range(n), repeat=2):
        E[a, b] = sum(1 << i for i in range(I) if names[a][i] == names[b][i])
    rels = {}
    for r in models[0].relations:
        k = models[0].relations[r].ndim
        T = np.zeros((n,) * k, MASK)
        for args in itertools.product(range(n), repeat=k):
            T[args] = sum(1 << i for i in range(I)
                          if models[i].relations[r][tuple(names[a][i] for a in args)])
        rels[r] = T
    funs = {}
    for f in models[0].functions:
        k = models[0].functions[f].ndim
        T = np.zeros((n,) * (k + 1), MASK)
        for y in range(n):
            for args in itertools.product(range(n), repeat=k):
                T[(y,) + args] = sum(1 << i for i in range(I)
                                     if models[i].functions[f][tuple(names[a][i] for a in args)] == names[y][i])
        funs[f] = T
    return BValuedStructure(alg, names, E, rels, funs)
