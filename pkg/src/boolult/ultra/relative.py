"""Relative genericity and its characterization by factor maps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..kernel.algebra import Algebra, Antichain, Element
from .dirlim import FactorUltrapower, induced_ultrafilter


def relative_genericity(U, A: Antichain, C: Antichain) -> tuple[bool, dict | None]:
    """Does U meet C relative to A?

    Needs c_a ∈ C with c_a ≤ a for each a ∈ A and ⋁ c_a ∈ U.  Returns the
    verdict and a witness selection.
    """
    B = A.algebra
    choices = [[c for c in C.elements if c <= a] for a in A.elements]
    if any(not ch for ch in choices):
        return False, None
    for pick in itertools.product(*choices):
        m = 0
        for c in pick:
            m |= c.mask
        if Element(B, m) in U:
            return True, dict(zip(A.elements, pick))
    return False, None


def projection_surjective(U, A: Antichain, C: Antichain, values: Sequence) -> bool:
    """Is π_{A,C}: V^A/U_A → V^C/U_C onto (over the value universe)?"""
    FA = FactorUltrapower(induced_ultrafilter(U, A), values)
    FC = FactorUltrapower(induced_ultrafilter(U, C), values)
    image = {FC.cls(FA.reduce(r, C)) for r in FA.reps}
    return image == set(range(len(FC.reps)))


@dataclass(frozen=True)
class ClassicalIffReport:
    antichain: Antichain
    refinements: int
    generic_relative: bool
    all_projections_onto: bool

    @property
    def agree(self) -> bool:
        return self.generic_relative == self.all_projections_onto

    def to_json(self) -> dict:
        return {"antichain_size": len(self.antichain), "refinements": self.refinements,
                "generic_relative": self.generic_relative,
                "all_projections_onto": self.all_projections_onto, "agree": self.agree}


def classical_iff_check(B: Algebra, U, A: Antichain, values: Sequence,
                        family: Sequence[Antichain] | None = None) -> ClassicalIffReport:
    """U is generic relative to A for every refinement in the family
    iff every π_{A,C} is onto."""
    fam = list(family) if family is not None else list(B.maximal_antichains())
    refs = [C for C in fam if C.refines(A)]
    gen = all(relative_genericity(U, A, C)[0] for C in refs)
    onto = all(projection_surjective(U, A, C, values) for C in refs)
    return ClassicalIffReport(A, len(refs), gen, onto)
