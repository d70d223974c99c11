"""Seeded random formulas over the membership signature."""
from __future__ import annotations

import random

from .syntax import And, Atom, Const, Eq, Exists, Not, depth

VARIABLES = ("x", "y", "z")


def random_formula(rng: random.Random, max_depth: int, variables=VARIABLES,
                   with_v: bool = True, with_const: bool = False):
    """A formula in the primitive basis of depth at most ``max_depth``."""
    if max_depth == 0 or rng.random() < 0.25:
        return _atom(rng, variables, with_v, with_const)
    k = rng.random()
    if k < 0.3:
        return Not(random_formula(rng, max_depth - 1, variables, with_v, with_const))
    if k < 0.6:
        return And(random_formula(rng, max_depth - 1, variables, with_v, with_const),
                   random_formula(rng, max_depth - 1, variables, with_v, with_const))
    return Exists(rng.choice(variables), random_formula(rng, max_depth - 1, variables, with_v, with_const))


def _atom(rng, variables, with_v, with_const):
    k = rng.random()
    if with_const and k < 0.05:
        return Const(rng.random() < 0.5)
    if with_v and k < 0.2:
        return Atom("V", (rng.choice(variables),))
    a, b = rng.choice(variables), rng.choice(variables)
    if k < 0.45:
        return Eq(a, b)
    return Atom("in", (a, b))


def formula_sample(count: int, max_depth: int = 3, seed: int = 0, variables=VARIABLES,
                   with_v: bool = True) -> list:
    """``count`` distinct formulas of depth ≤ max_depth, deterministic in ``seed``."""
    rng = random.Random(seed)
    out, seen = [], set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            raise RuntimeError("could not generate enough distinct formulas")
        f = random_formula(rng, max_depth, variables, with_v)
        if f in seen or depth(f) > max_depth:
            continue
        seen.add(f)
        out.append(f)
    return out
