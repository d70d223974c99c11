"""Formula syntax over the primitive basis {∧, ¬, ∃}.

Terms are variables.  Disjunction, implication and universal
quantification are built by the sugar constructors below and never
appear as nodes.  The unary predicate ``V`` is the V̌ predicate; ``in``
is set membership.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Union


class SignatureError(ValueError):
    def __init__(self, msg: str, position: int | None = None):
        super().__init__(msg if position is None else f"{msg} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Signature:
    relations: tuple = ()        # (name, arity) pairs
    functions: tuple = ()        # (name, arity) pairs
    membership: bool = False     # binary ``in`` plus the unary V̌ predicate

    def __post_init__(self):
        names = [n for n, _ in self.relations] + [n for n, _ in self.functions]
        if len(set(names)) != len(names):
            raise SignatureError("symbol names must be unique")
        if any(a < 0 for _, a in self.relations + self.functions):
            raise SignatureError("arities must be nonnegative")
        reserved = {"in", "V", "exists", "forall", "true", "false"}
        if reserved & set(names):
            raise SignatureError(f"reserved symbol used: {sorted(reserved & set(names))}")

    def relation_arity(self, name: str) -> int | None:
        if self.membership and name == "in":
            return 2
        if self.membership and name == "V":
            return 1
        return dict(self.relations).get(name)

    def function_arity(self, name: str) -> int | None:
        return dict(self.functions).get(name)


SET_THEORY = Signature(membership=True)


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class FuncEq:
    """y = f(s1, ..., sn)."""
    target: str
    func: str
    args: tuple


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Eq, FuncEq, Const, Not, And, Exists]


def Member(x: str, y: str) -> Atom:
    return Atom("in", (x, y))


def InV(x: str) -> Atom:
    return Atom("V", (x,))


def Or(a, b):
    return Not(And(Not(a), Not(b)))


def Implies(a, b):
    return Not(And(a, Not(b)))


def Iff(a, b):
    return And(Implies(a, b), Implies(b, a))


def Forall(x, body):
    return Not(Exists(x, Not(body)))


def conj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def free_vars(phi) -> frozenset:
    if isinstance(phi, Atom):
        return frozenset(phi.args)
    if isinstance(phi, Eq):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, FuncEq):
        return frozenset((phi.target,) + tuple(phi.args))
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, And):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def depth(phi) -> int:
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return 0
    if isinstance(phi, Not):
        return 1 + depth(phi.body)
    if isinstance(phi, And):
        return 1 + max(depth(phi.left), depth(phi.right))
    if isinstance(phi, Exists):
        return 1 + depth(phi.body)
    raise TypeError(phi)


def quantifier_depth(phi) -> int:
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return 0
    if isinstance(phi, Not):
        return quantifier_depth(phi.body)
    if isinstance(phi, And):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    if isinstance(phi, Exists):
        return 1 + quantifier_depth(phi.body)
    raise TypeError(phi)


def substitute(phi, mapping: dict):
    """Rename free variables; bound variables shadow the mapping."""
    def t(v):
        return mapping.get(v, v)
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(t(a) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(t(phi.left), t(phi.right))
    if isinstance(phi, FuncEq):
        return FuncEq(t(phi.target), phi.func, tuple(t(a) for a in phi.args))
    if isinstance(phi, Const):
        return phi
    if isinstance(phi, Not):
        return Not(substitute(phi.body, mapping))
    if isinstance(phi, And):
        return And(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, Exists):
        inner = {k: v for k, v in mapping.items() if k != phi.var}
        if phi.var in inner.values():
            raise ValueError(f"substitution would capture {phi.var}")
        return Exists(phi.var, substitute(phi.body, inner))
    raise TypeError(phi)


def rename_apart(phi, avoid=()):
    """Give every quantifier a fresh variable distinct from ``avoid``."""
    counter = itertools.count()
    used = set(avoid) | _all_vars(phi)

    def fresh(v):
        while True:
            c = f"{v}_{next(counter)}"
            if c not in used:
                used.add(c)
                return c

    def go(f, env):
        if isinstance(f, (Atom, Eq, FuncEq, Const)):
            return substitute(f, env)
        if isinstance(f, Not):
            return Not(go(f.body, env))
        if isinstance(f, And):
            return And(go(f.left, env), go(f.right, env))
        if isinstance(f, Exists):
            nv = fresh(f.var)
            return Exists(nv, go(f.body, {**env, f.var: nv}))
        raise TypeError(f)

    return go(phi, {})


def _all_vars(phi) -> set:
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return set(free_vars(phi))
    if isinstance(phi, Not):
        return _all_vars(phi.body)
    if isinstance(phi, And):
        return _all_vars(phi.left) | _all_vars(phi.right)
    if isinstance(phi, Exists):
        return _all_vars(phi.body) | {phi.var}
    raise TypeError(phi)


def bound_vars(phi) -> list:
    """Quantified variables in preorder."""
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return []
    if isinstance(phi, Not):
        return bound_vars(phi.body)
    if isinstance(phi, And):
        return bound_vars(phi.left) + bound_vars(phi.right)
    if isinstance(phi, Exists):
        return [phi.var] + bound_vars(phi.body)
    raise TypeError(phi)


def relativize(phi):
    """Bound every quantifier by the V̌ predicate."""
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return phi
    if isinstance(phi, Not):
        return Not(relativize(phi.body))
    if isinstance(phi, And):
        return And(relativize(phi.left), relativize(phi.right))
    if isinstance(phi, Exists):
        return Exists(phi.var, And(InV(phi.var), relativize(phi.body)))
    raise TypeError(phi)


def is_bounded(phi) -> bool:
    """Every quantifier has the shape ∃x (x ∈ y ∧ ...) with y not x."""
    if isinstance(phi, (Atom, Eq, FuncEq, Const)):
        return True
    if isinstance(phi, Not):
        return is_bounded(phi.body)
    if isinstance(phi, And):
        return is_bounded(phi.left) and is_bounded(phi.right)
    if isinstance(phi, Exists):
        b = phi.body
        return (isinstance(b, And) and isinstance(b.left, Atom) and b.left.pred == "in"
                and b.left.args[0] == phi.var and b.left.args[1] != phi.var
                and is_bounded(b.right))
    raise TypeError(phi)


def symbols(phi) -> set:
    if isinstance(phi, Atom):
        return {("rel", phi.pred, len(phi.args))}
    if isinstance(phi, FuncEq):
        return {("fun", phi.func, len(phi.args))}
    if isinstance(phi, (Eq, Const)):
        return set()
    if isinstance(phi, Not):
        return symbols(phi.body)
    if isinstance(phi, And):
        return symbols(phi.left) | symbols(phi.right)
    if isinstance(phi, Exists):
        return symbols(phi.body)
    raise TypeError(phi)
