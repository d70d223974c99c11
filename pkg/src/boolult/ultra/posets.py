"""Filters on posets that weakly decide split antichains.

A 2-split is a maximal antichain A cut into two nonempty pieces A₀, A₁.
A filter F weakly decides it if some p ∈ F is incompatible with every
member of A₀ or with every member of A₁.  The multi-piece variant uses
a labeled partition into finitely many nonempty pieces and asks for
p ∈ F incompatible with everything outside one piece; on finite posets
it is a finite shadow of the countable version.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..kernel.algebra import set_partitions
from ..kernel.poset import Poset, _closure, _interior, ro_oracle


@dataclass(frozen=True)
class SplitAntichain:
    antichain: frozenset
    pieces: tuple  # tuple of frozensets


def two_splits(P: Poset, A: frozenset) -> list[SplitAntichain]:
    items = sorted(A, key=repr)
    out = []
    for r in range(1, len(items)):
        for A0 in itertools.combinations(items, r):
            if items[0] not in A0:
                continue  # count each unordered split once
            A0 = frozenset(A0)
            out.append(SplitAntichain(A, (A0, A - A0)))
    return out


def multi_splits(P: Poset, A: frozenset) -> list[SplitAntichain]:
    items = sorted(A, key=repr)
    return [SplitAntichain(A, tuple(frozenset(b) for b in blocks))
            for blocks in set_partitions(items) if len(blocks) >= 2]


def _incompatible_with_all(P: Poset, p, piece) -> bool:
    return all(not P.compatible(p, a) for a in piece)


def weakly_decides(P: Poset, F, split: SplitAntichain) -> bool:
    pieces = split.pieces
    for p in F:
        if len(pieces) == 2:
            if _incompatible_with_all(P, p, pieces[0]) or _incompatible_with_all(P, p, pieces[1]):
                return True
        else:
            for n in range(len(pieces)):
                rest = [a for k, pc in enumerate(pieces) if k != n for a in pc]
                if _incompatible_with_all(P, p, rest):
                    return True
    return False


def generates_ultrafilter(P: Poset, F, oracle=None) -> bool:
    """Is the upward closure of F in the regular-open algebra an ultrafilter?

    Computed on the brute-force regular-open lattice: R is in the closure
    iff R contains the regularization of some cone of F, and the
    complement of R there is int(P \\ R).
    """
    o = oracle or ro_oracle(P)
    nodes = frozenset(P.nodes)
    gens = [_interior(P, _closure(P, P.cone(p))) for p in F]

    def inside(R):
        return any(g <= R for g in gens)

    if inside(frozenset()):
        return False
    for R in o.regular_opens:
        if inside(R) == inside(_interior(P, nodes - R)):
            return False
    return True


@dataclass
class PosetDiagnostics:
    filter: frozenset
    two_splits: int
    two_split_failures: list
    multi_splits: int
    multi_split_failures: list
    ro_ultra: bool

    @property
    def decides_two(self) -> bool:
        return not self.two_split_failures

    @property
    def decides_multi(self) -> bool:
        return not self.multi_split_failures

    @property
    def consistent(self) -> bool:
        """The weak-decision verdicts both match the completion's verdict."""
        return self.decides_two == self.ro_ultra and self.decides_multi == self.ro_ultra

    def to_json(self) -> dict:
        return {"filter": sorted(map(str, self.filter)), "two_splits": self.two_splits,
                "two_split_failures": len(self.two_split_failures),
                "multi_splits": self.multi_splits,
                "multi_split_failures": len(self.multi_split_failures),
                "ro_ultra": self.ro_ultra, "consistent": self.consistent,
                "multi_split_note": "finite shadow of the countable split"}


def poset_diagnostics(P: Poset, F, oracle=None) -> PosetDiagnostics:
    F = frozenset(F)
    if not P.is_filter(F):
        raise ValueError("F is not a filter on P")
    n2 = nm = 0
    f2, fm = [], []
    for A in P.maximal_antichains():
        for s in two_splits(P, A):
            n2 += 1
            if not weakly_decides(P, F, s):
                f2.append(s)
        for s in multi_splits(P, A):
            nm += 1
            if not weakly_decides(P, F, s):
                fm.append(s)
    return PosetDiagnostics(F, n2, f2, nm, fm, generates_ultrafilter(P, F, oracle))
