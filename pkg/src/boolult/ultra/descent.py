"""Descents: continuous descending sequences from 1 through U with meet 0.

On a finite algebra every member of an ultrafilter lies above its atom,
so no sequence through U has meet 0 and the descent spectrum is empty.
The ω-world supplies a genuine descent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..kernel.algebra import Element


@dataclass(frozen=True)
class Descent:
    """A finite presentation of ⟨b_n⟩; ``complete`` says the list is the whole sequence."""
    terms: tuple
    complete: bool = True

    def differences(self) -> list:
        """The difference antichain b_n ∧ ¬b_{n+1}, nonzero members only."""
        out = []
        for a, b in zip(self.terms, self.terms[1:]):
            d = a - b
            if not d.is_zero:
                out.append(d)
        return out


@dataclass
class DescentCheck:
    starts_at_one: bool
    descending: bool
    strict: bool
    through_U: bool
    meet_zero: bool

    @property
    def is_descent(self) -> bool:
        return self.starts_at_one and self.descending and self.through_U and self.meet_zero

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["is_descent"] = self.is_descent
        return d


def verify_descent(D: Descent, U) -> DescentCheck:
    """Checks a finite descent.  Continuity at limits is vacuous here."""
    ts = list(D.terms)
    B = ts[0].algebra
    desc = all(b <= a for a, b in zip(ts, ts[1:]))
    strict = desc and all(a != b for a, b in zip(ts, ts[1:]))
    meet = B.one
    for t in ts:
        meet = meet & t
    return DescentCheck(ts[0].is_one, desc, strict, all(t in U for t in ts),
                        D.complete and meet.is_zero)


def descent_spectrum(U) -> dict:
    """The order types of descents through U; empty for every finite U."""
    B = U.algebra
    core = B.one
    for b in U.members():
        core = core & b
    return {"spectrum": [] if not core.is_zero else None,
            "meet_of_U": repr(core),
            "reason": "every member of U lies above a fixed nonzero element"
            if not core.is_zero else "U has meet 0"}


def descents_exhaustive(U, max_len: int | None = None) -> int:
    """Count strict descending chains 1 = b_0 > ... through U ending in 0 (oracle)."""
    B = U.algebra
    members = sorted(U.members(), key=lambda e: -len(e.atoms))
    n = 0

    def go(last: Element, length: int):
        nonlocal n
        if last.is_zero:
            n += 1
            return
        if max_len is not None and length >= max_len:
            return
        for b in members:
            if b <= last and b != last:
                go(b, length + 1)

    go(B.one, 1)
    return n
