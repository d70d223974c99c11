"""Filters on finite algebras, the value map val(τ, F), and rank checks."""
from __future__ import annotations

from dataclasses import dataclass

from ..kernel.algebra import Algebra, Element
from .hf import HFSet
from .name import Name


@dataclass(frozen=True)
class Filter:
    """A proper filter.  In a finite algebra every filter is principal,
    so the generator (the meet of all members) is the whole presentation."""

    algebra: Algebra
    generator: Element

    def __post_init__(self):
        self.generator._same(self.algebra.zero)
        if self.generator.is_zero:
            raise ValueError("a proper filter cannot contain 0")

    @classmethod
    def principal(cls, b: Element) -> "Filter":
        return cls(b.algebra, b)

    @classmethod
    def from_elements(cls, algebra: Algebra, elements) -> "Filter":
        S = {e.mask for e in elements}
        if not S:
            raise ValueError("a filter is nonempty")
        g = algebra.full_mask
        for m in S:
            g &= m
        for m in S:
            for c in range(algebra.size):
                if m & ~c == 0 and c not in S:
                    raise ValueError("not upward closed")
        for a in S:
            for b in S:
                if a & b not in S:
                    raise ValueError("not closed under meets")
        return cls(algebra, Element(algebra, g))

    def __contains__(self, b: Element) -> bool:
        b._same(self.algebra.zero)
        return self.generator <= b

    def contains_mask(self, m: int) -> bool:
        return self.generator.mask & ~m == 0

    @property
    def is_ultra(self) -> bool:
        return len(self.generator.atoms) == 1

    def members(self) -> list[Element]:
        return [b for b in self.algebra.elements() if b in self]


def all_filters(B: Algebra) -> list[Filter]:
    return [Filter(B, b) for b in B.nonzero()]


def val(tau: Name, F, _memo: dict | None = None) -> HFSet:
    """val(τ, F) = {val(σ, F) : ⟨σ, b⟩ ∈ τ, b ∈ F}."""
    memo = {} if _memo is None else _memo
    hit = memo.get(tau)
    if hit is not None:
        return hit
    contains = F.contains_mask if hasattr(F, "contains_mask") else (
        lambda m: Element(tau.algebra, m) in F)
    out = HFSet(val(s, F, memo) for s, m in tau.entries if contains(m))
    memo[tau] = out
    return out


@dataclass(frozen=True)
class RankReport:
    name_rank: int
    value_ranks: tuple    # one per atom (principal ultrafilter)
    ok: bool
    converse_fails: bool  # some value has rank strictly below the name's

    def to_json(self) -> dict:
        return {"name_rank": self.name_rank, "value_ranks": list(self.value_ranks),
                "ok": self.ok, "converse_fails": self.converse_fails}


def rank_check(tau: Name) -> RankReport:
    """rank(val(τ, U)) ≤ rank(τ) for every ultrafilter U on the algebra."""
    B = tau.algebra
    ranks = tuple(val(tau, Filter(B, B.atom(i))).rank for i in range(B.n_atoms))
    return RankReport(tau.rank, ranks, all(r <= tau.rank for r in ranks),
                      any(r < tau.rank for r in ranks))
