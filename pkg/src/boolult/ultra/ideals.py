"""Ideals acting on ultrafilters: induced filters, disjoint representatives,
and paths through trees of antichains modulo an ideal."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..kernel.algebra import Algebra, Element
from ..kernel.ideals import Ideal, quotient
from ..names.filters import Filter


def induced_filter(I: Ideal, F: Filter) -> set:
    """∪F = {b ∈ B : [b]_I ∈ F}, by membership transfer, as a set of masks."""
    B = I.algebra
    Q, proj = quotient(B, I)
    if F.algebra != Q:
        raise ValueError("F must live on B/I")
    return {b.mask for b in B.elements() if proj(b) in F}


def induced_filter_as_filter(I: Ideal, F: Filter) -> Filter:
    B = I.algebra
    return Filter.from_elements(B, [Element(B, m) for m in sorted(induced_filter(I, F))])


def is_antichain_mod(I: Ideal, A: Sequence[Element]) -> bool:
    """Members are I-positive and pairwise disjoint modulo I."""
    return all(I.positive(a) for a in A) and all((a & b) in I for a, b in itertools.combinations(A, 2))


def is_maximal_antichain_mod(I: Ideal, A: Sequence[Element]) -> bool:
    if not is_antichain_mod(I, A):
        return False
    top = I.algebra.zero
    for a in A:
        top = top | a
    return I.equivalent(top, I.algebra.one)


def _below_masks(I: Ideal):
    """a ≤_I b on masks."""
    if I.generator is not None:
        keep = ~I.generator.mask
        return lambda a, b: a & ~b & keep == 0
    return lambda a, b: (a & ~b) in I.members


def _class(I: Ideal, a: Element) -> list[Element]:
    return [b for b in I.algebra.elements() if I.equivalent(a, b)]


def disjointify(I: Ideal, A: Sequence[Element]) -> tuple | None:
    """Pairwise-disjoint b_a =_I a that join to 1, found by backtracking.

    Returns None when no choice exists.
    """
    B = I.algebra
    A = list(A)
    classes = [_class(I, a) for a in A]
    pick: list[Element] = []

    def go(k: int, used: int) -> bool:
        if k == len(A):
            return used == B.full_mask
        for b in classes[k]:
            if b.mask & used == 0:
                pick.append(b)
                if go(k + 1, used | b.mask):
                    return True
                pick.pop()
        return False

    return tuple(pick) if go(0, 0) else None


def disjointify_exhaustive(I: Ideal, A: Sequence[Element]) -> bool:
    """Existence by enumerating every tuple of I-equivalent representatives."""
    B = I.algebra
    for pick in itertools.product(*[_class(I, a) for a in A]):
        masks = [b.mask for b in pick]
        if all(x & y == 0 for x, y in itertools.combinations(masks, 2)):
            if sum(masks) == B.full_mask:
                return True
    return False


@dataclass(frozen=True)
class AntichainTree:
    """Levels A_0, A_1, ... of maximal antichains mod I, each refining the last."""
    ideal: Ideal
    levels: tuple
    validate: bool = True

    def __post_init__(self):
        lv = tuple(tuple(level) for level in self.levels)
        object.__setattr__(self, "levels", lv)
        if not self.validate:
            return
        for level in lv:
            if not is_maximal_antichain_mod(self.ideal, level):
                raise ValueError("each level must be a maximal antichain modulo I")
        for upper, lower in zip(lv, lv[1:]):
            for c in lower:
                if not any(self.ideal.below(c, a) for a in upper):
                    raise ValueError("each level must refine the previous one modulo I")

    @property
    def depth(self) -> int:
        return len(self.levels)


def tree_path(T: AntichainTree, a0: Element) -> tuple | None:
    """⟨a_n⟩ with a_n ∈ A_n, a_{n+1} ≤_I a_n and ⋀ a_n ≠ 0, starting at a0."""
    below = _below_masks(T.ideal)
    if a0 not in T.levels[0]:
        raise ValueError("a0 must lie in the first level")
    path = [a0]

    def go(n: int, meet: int) -> bool:
        if meet == 0:
            return False
        if n == T.depth:
            return True
        for c in T.levels[n]:
            if meet & c.mask and below(c.mask, path[-1].mask):
                path.append(c)
                if go(n + 1, meet & c.mask):
                    return True
                path.pop()
        return False

    return tuple(path) if go(1, a0.mask) else None


def tree_path_exhaustive(T: AntichainTree, a0: Element) -> bool:
    """Oracle: try every sequence through the levels."""
    I = T.ideal
    for rest in itertools.product(*T.levels[1:]):
        seq = (a0,) + rest
        if not all(I.below(y, x) for x, y in zip(seq, seq[1:])):
            continue
        m = I.algebra.full_mask
        for e in seq:
            m &= e.mask
        if m:
            return True
    return False


def antichains_mod(I: Ideal) -> list[tuple]:
    """Every maximal antichain mod I, as tuples of representatives sorted by mask."""
    B = I.algebra
    Q, proj = quotient(B, I)
    out = []
    for blocks in Q.maximal_antichains():
        reps = [_class(I, proj.section(q)) for q in blocks.elements]
        for pick in itertools.product(*reps):
            out.append(tuple(sorted(pick, key=lambda e: e.mask)))
    return out


def iter_trees(I: Ideal, depth: int):
    """Every tree with exactly ``depth`` levels, drawn from antichains_mod(I)."""
    level = antichains_mod(I)
    below = _below_masks(I)
    nxt = [[k for k, lower in enumerate(level)
            if all(any(below(c.mask, a.mask) for a in upper) for c in lower)]
           for upper in level]

    def go(seq):
        if len(seq) == depth:
            yield AntichainTree(I, tuple(level[k] for k in seq), validate=False)
            return
        for k in nxt[seq[-1]]:
            yield from go(seq + [k])

    for k in range(len(level)):
        yield from go([k])


def all_trees(I: Ideal, depth: int) -> list[AntichainTree]:
    return list(iter_trees(I, depth))


@dataclass
class IdealSuiteReport:
    induced_ultra: bool
    induced_filters: int
    disjointify_agree: bool
    antichains: int
    tree_path_agree: bool
    trees: int

    @property
    def ok(self) -> bool:
        return self.induced_ultra and self.disjointify_agree and self.tree_path_agree

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def ideal_suite(I: Ideal, depth: int = 2) -> IdealSuiteReport:
    """Run the three checks for one ideal against their brute-force oracles."""
    B = I.algebra
    Q, _ = quotient(B, I)
    ultra_ok = True
    nf = 0
    for q in range(Q.n_atoms):
        F = Filter(Q, Q.atom(q))
        G = induced_filter_as_filter(I, F)
        nf += 1
        if not G.is_ultra:
            ultra_ok = False
    acs = antichains_mod(I)
    dj = all((disjointify(I, A) is not None) == disjointify_exhaustive(I, A) for A in acs)
    tp, nt = True, 0
    for d in range(1, depth + 1):
        for T in iter_trees(I, d):
            nt += 1
            for a0 in T.levels[0]:
                if (tree_path(T, a0) is not None) != tree_path_exhaustive(T, a0):
                    tp = False
    return IdealSuiteReport(ultra_ok, nf, dj, len(acs), tp, nt)
