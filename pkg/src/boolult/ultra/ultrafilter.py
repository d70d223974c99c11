"""Ultrafilters on finite algebras.

Every ultrafilter on a finite algebra is principal at an atom.  An
explicit element set is accepted and checked, then stored by its atom.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..kernel.algebra import Algebra, Element
from ..names.filters import Filter


@dataclass(frozen=True)
class Ultrafilter(Filter):
    kind: str = "principal"

    def __post_init__(self):
        super().__post_init__()
        if len(self.generator.atoms) != 1:
            raise ValueError("an ultrafilter on a finite algebra is generated by an atom")

    @classmethod
    def principal(cls, algebra: Algebra, atom: int) -> "Ultrafilter":
        return cls(algebra, algebra.atom(atom))

    @classmethod
    def from_elements(cls, algebra: Algebra, elements) -> "Ultrafilter":
        F = Filter.from_elements(algebra, elements)
        for b in algebra.elements():
            if (b in F) == (~b in F):
                raise ValueError("not an ultrafilter: some b has neither b nor its complement")
        return cls(algebra, F.generator, kind="explicit")

    @property
    def atom(self) -> int:
        return self.generator.atoms[0]

    @property
    def mask(self) -> int:
        return self.generator.mask

    def to_json(self) -> dict:
        return {"kind": self.kind, "atom": self.atom}


def enumerate_ultrafilters(B: Algebra) -> list[Ultrafilter]:
    return [Ultrafilter.principal(B, i) for i in range(B.n_atoms)]


def ultrafilter_from_json(B: Algebra, doc: dict) -> Ultrafilter:
    kind = doc.get("kind", "principal")
    if kind == "principal":
        return Ultrafilter.principal(B, int(doc["atom"]))
    if kind == "explicit":
        return Ultrafilter.from_elements(B, [B.element(e) for e in doc["elements"]])
    raise ValueError(f"unknown ultrafilter kind {kind!r}")
