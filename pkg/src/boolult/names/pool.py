"""Finite name pools: the quantifier range standing in for the name universe.

A pool is closed under sub-names and contains the check names of a
declared fragment of HF.  The V̌ predicate joins over the check names in
the pool, and ∃ joins over the whole pool, so every value computed here
is relative to the pool.
"""
from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..fol.structure import BValuedStructure, MASK, UnassignedVariableError, value_table
from ..fol.syntax import free_vars
from ..kernel.algebra import Algebra, Antichain, Element, SizeGuardError
from .hf import HFSet, hf_of_rank_at_most
from .name import Name, as_check, check_name, empty_name, mix
from .values import BVSession

DEFAULT_HF_RANK_CAP = 3


class PoolError(KeyError):
    pass


class NamePool:
    def __init__(self, algebra: Algebra, names: Iterable[Name] = (),
                 fragment: Iterable[HFSet] = (), hf_rank_cap: int = DEFAULT_HF_RANK_CAP):
        fragment = tuple(sorted(set(fragment), key=lambda x: x.key))
        for x in fragment:
            if x.rank > hf_rank_cap:
                raise SizeGuardError(f"HF set of rank {x.rank} exceeds the cap {hf_rank_cap}")
        seeds = set(names) | {check_name(x, algebra) for x in fragment}
        closed = set()
        for n in seeds:
            if n.algebra != algebra:
                raise ValueError("pool names must share the pool's algebra")
            closed.add(n)
            closed |= n.subnames()
        self.algebra = algebra
        self.names: tuple[Name, ...] = tuple(sorted(closed, key=lambda n: (n.rank, n.key)))
        self.index = {n: i for i, n in enumerate(self.names)}
        self.fragment = fragment
        self.hf_rank_cap = hf_rank_cap
        # every check name in the pool counts toward V̌, declared or not
        self.checks: dict[HFSet, int] = {}
        for i, n in enumerate(self.names):
            x = as_check(n)
            if x is not None:
                self.checks[x] = i
        self._structure = None
        self._session = None

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, n):
        return n in self.index

    @property
    def rank(self) -> int:
        return max((n.rank for n in self.names), default=0)

    def position(self, n: Name) -> int:
        try:
            return self.index[n]
        except KeyError:
            raise PoolError(f"name {n!r} is outside the pool") from None

    def extended(self, names: Iterable[Name], fragment: Iterable[HFSet] = ()) -> "NamePool":
        return NamePool(self.algebra, list(self.names) + list(names),
                        list(self.fragment) + list(fragment), self.hf_rank_cap)

    def check(self, x: HFSet) -> Name:
        if x not in self.checks:
            raise PoolError(f"the check name of {x!r} is not in the pool")
        return self.names[self.checks[x]]

    @property
    def session(self) -> BVSession:
        if self._session is None:
            self._session = BVSession(self.algebra)
        return self._session

    def structure(self) -> BValuedStructure:
        """The Boolean-valued structure for ∈, =, V̌ and the constant ∅ on the pool."""
        if self._structure is None:
            s = self.session
            n = len(self.names)
            E = np.zeros((n, n), MASK)
            M = np.zeros((n, n), MASK)
            for i, a in enumerate(self.names):
                for j, b in enumerate(self.names):
                    if j >= i:
                        E[i, j] = E[j, i] = s.equal(a, b)
                    M[i, j] = s.member(a, b)
            check_idx = sorted(self.checks.values())
            V = np.zeros(n, MASK)
            for k in check_idx:
                V |= E[:, k]
            rels = {"in": M, "V": V}
            funs = {}
            e = empty_name(self.algebra)
            if e in self.index:
                funs["empty"] = E[:, self.index[e]].copy()
            self._structure = BValuedStructure(self.algebra, self.names, E, rels, funs)
        return self._structure


def bv_formula(phi, assignment: Mapping[str, Name], pool: NamePool) -> Element:
    """⟦phi⟧ with quantifiers over the pool and V̌ over its check names."""
    fv = sorted(free_vars(phi))
    missing = [v for v in fv if v not in assignment]
    if missing:
        raise UnassignedVariableError(f"unassigned free variables: {missing}")
    pos = tuple(pool.position(assignment[v]) for v in fv)
    table = value_table(pool.structure(), phi, fv)
    return Element(pool.algebra, int(table[pos]))


# ---------------------------------------------------------------- pool builders

def check_pool(B: Algebra, hf_rank: int = 2) -> NamePool:
    return NamePool(B, (), hf_of_rank_at_most(hf_rank))


def random_mixture(B: Algebra, values: Sequence[HFSet], rng: random.Random) -> Name:
    """Mix check names of random values over a random maximal antichain."""
    atoms = list(range(B.n_atoms))
    rng.shuffle(atoms)
    blocks, cur = [], []
    for a in atoms:
        cur.append(a)
        if rng.random() < 0.5:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    A = Antichain(B, tuple(B.element(b) for b in blocks))
    return mix(A, [check_name(rng.choice(values), B) for _ in A.elements])


def random_name(B: Algebra, subnames: Sequence[Name], rng: random.Random, max_entries: int = 3) -> Name:
    k = rng.randint(0, max_entries)
    return Name(B, [(rng.choice(subnames), rng.randrange(B.size)) for _ in range(k)])


def standard_pool(B: Algebra, hf_rank: int = 2, mixes: int = 0, extras: int = 0,
                  seed: int = 0, hf_rank_cap: int = DEFAULT_HF_RANK_CAP) -> NamePool:
    """Check names of HF rank ≤ hf_rank plus seeded mixtures and arbitrary names.

    Mixtures use values of rank ≤ hf_rank, so their rank stays ≤ hf_rank.
    Arbitrary names use check names of lower rank as sub-names.
    """
    if hf_rank > hf_rank_cap:
        raise SizeGuardError(f"pool rank {hf_rank} exceeds the HF rank cap {hf_rank_cap}")
    rng = random.Random(seed)
    frag = hf_of_rank_at_most(hf_rank)
    names = [random_mixture(B, frag, rng) for _ in range(mixes)]
    lower = [check_name(x, B) for x in hf_of_rank_at_most(hf_rank - 1)] if hf_rank >= 1 else []
    if lower:
        names += [random_name(B, lower, rng) for _ in range(extras)]
    return NamePool(B, names, frag, hf_rank_cap)


def two_valued_mixes_pool(B: Algebra) -> NamePool:
    """Check names of rank ≤ 2 plus every {⟨∅̌, b⟩}: the mixes of 0 and 1."""
    e = empty_name(B)
    names = [Name(B, [(e, b)]) for b in range(B.size)]
    return NamePool(B, names, hf_of_rank_at_most(2))
