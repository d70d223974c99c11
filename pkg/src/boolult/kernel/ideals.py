"""Ideals, quotients, and the small and local ideals of an antichain."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Algebra, Antichain, Element
from .constructions import Projection


class ImproperIdealError(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    """Either principal (``generator``) or an explicit downward-closed set.

    Explicit sets are used for the finite analogues of small and local
    ideals, which need not be closed under joins.  Those are built with
    ``strict=False`` and carry ``degenerate=True``.
    """

    algebra: Algebra
    generator: Element | None = None
    members: frozenset | None = None   # masks
    degenerate: bool = False
    note: str = ""

    def __post_init__(self):
        if (self.generator is None) == (self.members is None):
            raise ValueError("give exactly one of generator or members")
        if self.generator is not None:
            self.generator._same(self.algebra.zero)

    @classmethod
    def principal(cls, algebra: Algebra, generator: Element) -> "Ideal":
        I = cls(algebra, generator=generator)
        I._assert_laws()
        return I

    @classmethod
    def from_members(cls, algebra: Algebra, members, strict: bool = True, note: str = "") -> "Ideal":
        masks = frozenset(m.mask if isinstance(m, Element) else int(m) for m in members)
        I = cls(algebra, members=masks, degenerate=not strict, note=note)
        if strict:
            I._assert_laws()
        return I

    def __contains__(self, b: Element) -> bool:
        b._same(self.algebra.zero)
        if self.generator is not None:
            return b <= self.generator
        return b.mask in self.members

    def elements(self) -> list[Element]:
        return [b for b in self.algebra.elements() if b in self]

    def law_violations(self) -> list[str]:
        B = self.algebra
        out = []
        if B.zero not in self:
            out.append("0 is not a member")
        if B.one in self:
            out.append("1 is a member")
        els = self.elements()
        for b in els:
            for c in B.elements():
                if c <= b and c not in self:
                    out.append(f"not downward closed: {c!r} below {b!r}")
                    break
        for b, c in itertools.combinations(els, 2):
            if (b | c) not in self:
                out.append(f"not closed under joins: {b!r} v {c!r}")
                break
        return out

    def _assert_laws(self):
        bad = self.law_violations()
        if bad:
            raise ValueError("not a proper ideal: " + "; ".join(bad))

    @property
    def is_proper_ideal(self) -> bool:
        return not self.law_violations()

    def as_principal(self) -> "Ideal":
        """In a finite algebra a genuine ideal is generated by its largest member."""
        if self.generator is not None:
            return self
        self._assert_laws()
        g = self.algebra.zero
        for b in self.elements():
            g = g | b
        return Ideal.principal(self.algebra, g)

    def equivalent(self, a: Element, b: Element) -> bool:
        """a =_I b iff the symmetric difference lies in I."""
        return ((a - b) | (b - a)) in self

    def below(self, a: Element, b: Element) -> bool:
        """a ≤_I b iff a - b lies in I."""
        return (a - b) in self

    def positive(self, a: Element) -> bool:
        return a not in self


def quotient(B: Algebra, I: Ideal) -> tuple[Algebra, Projection]:
    """B/I as the powerset of the atoms outside the generator."""
    if I.generator is None:
        I = I.as_principal()
    g = I.generator
    if g.is_one:
        raise ImproperIdealError("the quotient by an improper ideal is trivial")
    kept = tuple(i for i in range(B.n_atoms) if not g.mask >> i & 1)
    Q = Algebra(len(kept), tuple(B.labels[i] for i in kept))
    return Q, Projection(B, Q, kept)


def small_ideal(A: Antichain) -> Ideal:
    """Elements below the join of a proper subfamily of A.

    For |A| ≥ 2 this set is not closed under joins, so it is returned as a
    degenerate explicit presentation.
    """
    B = A.algebra
    members = set()
    els = A.elements
    for r in range(len(els)):
        for sub in itertools.combinations(els, r):
            top = 0
            for e in sub:
                top |= e.mask
            members.update(m for m in range(B.size) if m & ~top == 0)
    I = Ideal.from_members(B, members, strict=False,
                           note="degenerate finite analogue")
    if I.is_proper_ideal:
        return Ideal(B, members=I.members, degenerate=False)
    return I


def local_ideal(A: Antichain, J) -> Ideal:
    """Elements below ∨A₀ for A₀ in J, a family of index sets into A."""
    B = A.algebra
    members = set()
    for idx in J:
        top = 0
        for k in idx:
            top |= A.elements[k].mask
        members.update(m for m in range(B.size) if m & ~top == 0)
    I = Ideal.from_members(B, members, strict=False, note="degenerate finite analogue")
    if I.is_proper_ideal:
        return Ideal(B, members=I.members, degenerate=False)
    return I
