"""Hereditarily finite sets.

An HFSet wraps a frozenset of HFSets.  The canonical order is Ackermann's:
compare the members in descending order, lexicographically.  Sorting by
``key`` therefore gives a deterministic layout for printing and JSON.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable


class HFSet:
    __slots__ = ("members", "rank", "key", "_hash")

    def __init__(self, members: Iterable["HFSet"] = ()):
        ms = frozenset(members)
        for m in ms:
            if not isinstance(m, HFSet):
                raise TypeError("members of an HFSet must be HFSets")
        self.members = ms
        self.rank = max((m.rank + 1 for m in ms), default=0)
        self.key = tuple(sorted((m.key for m in ms), reverse=True))
        self._hash = hash(self.key)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, HFSet) and self._hash == other._hash and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def sorted(self) -> list["HFSet"]:
        return sorted(self.members, key=lambda m: m.key)

    def to_nested(self) -> list:
        return [m.to_nested() for m in self.sorted()]

    def __repr__(self):
        n = as_natural(self)
        if n is not None:
            return str(n)
        return "{" + ",".join(repr(m) for m in self.sorted()) + "}"


EMPTY = HFSet()


def hf(*members: HFSet) -> HFSet:
    return HFSet(members)


def from_nested(doc) -> HFSet:
    if not isinstance(doc, list):
        raise ValueError("an HF set is written as a nested JSON array")
    return HFSet(from_nested(d) for d in doc)


@lru_cache(maxsize=None)
def von_neumann(n: int) -> HFSet:
    if n < 0:
        raise ValueError("naturals only")
    return HFSet(von_neumann(k) for k in range(n))


def as_natural(x: HFSet) -> int | None:
    n = len(x.members)
    if n <= 16 and x.rank == n and all(von_neumann(k) in x.members for k in range(n)):
        return n
    return None


@lru_cache(maxsize=None)
def hf_universe(rank_bound: int) -> tuple[HFSet, ...]:
    """All HF sets of rank < rank_bound (the stage V_rank_bound), sorted."""
    if rank_bound <= 0:
        return ()
    prev = hf_universe(rank_bound - 1)
    out = []
    for r in range(len(prev) + 1):
        for combo in itertools.combinations(prev, r):
            out.append(HFSet(combo))
    return tuple(sorted(out, key=lambda x: x.key))


def hf_of_rank_at_most(k: int) -> tuple[HFSet, ...]:
    return hf_universe(k + 1)


def encode_atoms(atoms: Iterable[int]) -> HFSet:
    """Fixed coding of an algebra element: its atom indices as von Neumann naturals."""
    return HFSet(von_neumann(i) for i in atoms)
