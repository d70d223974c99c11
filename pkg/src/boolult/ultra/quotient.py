"""The quotient of a name pool by an ultrafilter, and Łoś checks.

Classes are taken under ⟦τ = σ⟧ ∈ U.  The representative of a class is
its pool-minimal name by (rank, canonical key); this is the finite,
pool-relative version of restricting each class to names of least rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..fol.classical import ClassicalStructure, membership_structure
from ..fol.parser import to_text
from ..fol.structure import value_table
from ..fol.syntax import free_vars, relativize
from ..names.filters import val
from ..names.hf import HFSet
from ..names.name import Name, check_name
from ..names.pool import NamePool
from .ultrafilter import Ultrafilter

TRIVIAL_DEGREE = "none: trivial ultrapower"


@dataclass(eq=False)
class QuotientModel:
    pool: NamePool
    ultrafilter: Ultrafilter
    class_of: np.ndarray        # pool index -> class index
    reps: tuple                 # class index -> representative Name
    member: np.ndarray          # bool, class x class
    vcheck: np.ndarray          # bool, class
    congruent: bool             # ∈ and V̌ respect =_U

    @property
    def size(self) -> int:
        return len(self.reps)

    def cls(self, tau: Name) -> int:
        return int(self.class_of[self.pool.position(tau)])

    def j(self, x: HFSet) -> int:
        """j_U(x) = [x̌]_U."""
        return self.cls(self.pool.check(x))

    def structure(self) -> ClassicalStructure:
        return ClassicalStructure(self.size, {"in": self.member, "V": self.vcheck},
                                  {}, tuple(map(repr, self.reps)))

    def vcheck_part(self) -> tuple[ClassicalStructure, np.ndarray]:
        """The submodel on classes satisfying V̌, with its class indices."""
        keep = np.flatnonzero(self.vcheck)
        sub = self.member[np.ix_(keep, keep)]
        return ClassicalStructure(len(keep), {"in": sub, "V": np.ones(len(keep), bool)}), keep


def quotient_model(pool: NamePool, U: Ultrafilter) -> QuotientModel:
    S = pool.structure()
    u = U.mask
    eqU = (S.equality & u) != 0
    n = len(pool)
    class_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for i in range(n):   # pool order is (rank, key), so the first member is minimal
        if class_of[i] >= 0:
            continue
        k = len(reps)
        reps.append(pool.names[i])
        class_of[eqU[i]] = k
    # =_U must be an equivalence relation; transitivity failing would show
    # up as a class containing names not equivalent to its representative
    ok = True
    for i in range(n):
        r = pool.index[reps[class_of[i]]]
        if not eqU[i, r]:
            ok = False
    memU = (S.relations["in"] & u) != 0
    vU = (S.relations["V"] & u) != 0
    C = len(reps)
    rep_idx = np.array([pool.index[r] for r in reps])
    member = memU[np.ix_(rep_idx, rep_idx)]
    vcheck = vU[rep_idx]
    congruent = ok and bool(np.array_equal(member[np.ix_(class_of, class_of)], memU)) \
        and bool(np.array_equal(vcheck[class_of], vU))
    return QuotientModel(pool, U, class_of, tuple(reps), member, vcheck, congruent)


# ---------------------------------------------------------------- Łoś

@dataclass
class LosReport:
    formulas: int = 0
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "LosReport") -> "LosReport":
        return LosReport(self.formulas + other.formulas, self.instances + other.instances,
                         self.failures + other.failures)

    def to_json(self) -> dict:
        return {"formulas": self.formulas, "instances": self.instances,
                "failures": self.failures[:10], "ok": self.ok}


def los_check(model: QuotientModel, formulas: Iterable, relativized: bool = False) -> LosReport:
    """Quotient truth of φ([τ⃗]) against ⟦φ(τ⃗)⟧ ∈ U for every assignment.

    With ``relativized`` the left side is truth in the V̌-part and the right
    side uses φ^V̌, over assignments into names whose class lies in V̌_U.
    """
    S = model.pool.structure()
    u = model.ultrafilter.mask
    rep = LosReport()
    if relativized:
        Q, keep = model.vcheck_part()
        pos_in_keep = {int(c): k for k, c in enumerate(keep)}
        names_in = np.array([i for i in range(len(model.pool))
                             if int(model.class_of[i]) in pos_in_keep], dtype=np.int64)
        lift = np.array([pos_in_keep[int(model.class_of[i])] for i in names_in], dtype=np.int64)
    else:
        Q = model.structure()
        names_in = np.arange(len(model.pool))
        lift = model.class_of
    for phi in formulas:
        fv = sorted(free_vars(phi))
        target = relativize(phi) if relativized else phi
        bv = value_table(S, target, fv)
        truth = Q.truth_table(phi, fv)
        if fv:
            bv = bv[np.ix_(*([names_in] * len(fv)))]
            lifted = truth[np.ix_(*([lift] * len(fv)))]
        else:
            lifted = truth
        ok = (bv & u) != 0
        rep.formulas += 1
        rep.instances += int(ok.size)
        bad = np.argwhere(ok != lifted)
        if len(bad):
            w = tuple(int(names_in[k]) for k in bad[0])
            rep.failures.append({"formula": to_text(phi), "assignment": list(w),
                                 "relativized": relativized})
    return rep


def fiber_check(model: QuotientModel, formulas: Iterable) -> LosReport:
    """For principal U, quotient truth equals HF truth after collapsing by val.

    The HF side is built from actual membership between the values
    val(τ, U), with V̌ read as membership in the pool's check fragment.
    """
    U = model.ultrafilter
    pool = model.pool
    memo = {}
    vals = [val(t, U, memo) for t in pool.names]
    domain = sorted(set(vals), key=lambda x: x.key)
    where = {x: k for k, x in enumerate(domain)}
    frag = set(pool.checks)
    H = membership_structure(domain, lambda x, y: x in y, lambda x: x in frag)
    to_dom = np.array([where[v] for v in vals], dtype=np.int64)
    Q = model.structure()
    rep = LosReport()
    for phi in formulas:
        fv = sorted(free_vars(phi))
        h = H.truth_table(phi, fv)
        q = Q.truth_table(phi, fv)
        if fv:
            h = h[np.ix_(*([to_dom] * len(fv)))]
            q = q[np.ix_(*([model.class_of] * len(fv)))]
        rep.formulas += 1
        rep.instances += int(np.size(h))
        bad = np.argwhere(h != q)
        if len(bad):
            rep.failures.append({"formula": to_text(phi), "assignment": [int(k) for k in bad[0]]})
    return rep


# ---------------------------------------------------------------- triviality

@dataclass
class TrivialityReport:
    isomorphism: bool
    injective: bool
    onto_vcheck: bool
    preserves_membership: bool
    degree_of_genericity: str
    fragment_size: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def generic_triviality_check(model: QuotientModel) -> TrivialityReport:
    """For principal U: j_U maps the pool's check fragment onto V̌_U, ∈-isomorphically."""
    frag = sorted(model.pool.checks, key=lambda x: x.key)
    image = [model.j(x) for x in frag]
    injective = len(set(image)) == len(image)
    vclasses = {int(c) for c in np.flatnonzero(model.vcheck)}
    onto = set(image) == vclasses
    pres = all((x in y) == bool(model.member[image[a], image[b]])
               for a, x in enumerate(frag) for b, y in enumerate(frag))
    iso = injective and onto and pres
    return TrivialityReport(iso, injective, onto, pres,
                            TRIVIAL_DEGREE if iso else "undetermined", len(frag))


def degree_of_genericity(U: Ultrafilter) -> dict:
    """The least size of a maximal antichain that U fails to meet.

    Every maximal antichain of a finite algebra contains the atom's unique
    superelement, so U meets all of them and there is no such size.
    """
    B = U.algebra
    missed = [A for A in B.maximal_antichains() if not any(a in U for a in A.elements)]
    return {"antichains_checked": sum(1 for _ in B.maximal_antichains()),
            "missed": len(missed),
            "degree": TRIVIAL_DEGREE if not missed else min(len(A) for A in missed)}


def symbolic_triviality_check(bound: int = 50) -> dict:
    """The multiples ultrafilter on ultimately periodic sets: not generic.

    Its ultrapower has [id] outside the range of j, and it misses the
    countable antichain of singletons while meeting finite partitions.
    """
    from ..omega import meets_finite_partitions, nontriviality_witness, witness_suite
    w = nontriviality_witness(bound=bound)
    parts = meets_finite_partitions()
    missed = witness_suite(bound=bound)["missed_antichain"]
    return {"isomorphism": False, "witness": w, "finite_partitions_met": parts,
            "missed_antichain": "singletons" if missed["ok"] else None,
            "degree_of_genericity": "aleph_0",
            "ok": w["ok"] and parts["ok"] and missed["ok"]}
