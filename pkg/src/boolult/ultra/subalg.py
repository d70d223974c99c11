"""Ultrafilters restricted to complete subalgebras, iteration ultrafilters,
and rectangle and product filters on products."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..fol.parser import parse
from ..fol.syntax import free_vars, relativize
from ..fol.structure import value_table
from ..kernel.algebra import Algebra, Element
from ..kernel.constructions import Embedding, IterationAlgebra, Partition, product_pair
from ..names.hf import HFSet, encode_atoms
from ..names.name import Name, check_name, element_check, generic_name, map_name
from ..names.pool import NamePool
from ..names.constructions import separation_name
from ..names.values import BVSession
from .quotient import quotient_model
from .ultrafilter import Ultrafilter


@dataclass(frozen=True)
class Restriction:
    sub: Algebra             # B, presented with one atom per block
    embedding: Embedding     # B → C
    U0: Ultrafilter          # U ∩ B, on B
    U: Ultrafilter


def restrict_to_subalgebra(U: Ultrafilter, partition: Partition) -> Restriction:
    """U₀ = U ∩ B for the block subalgebra B ⊆ C."""
    B, emb = partition.as_algebra()
    members = [b for b in B.elements() if emb(b) in U]
    U0 = Ultrafilter.from_elements(B, members)
    return Restriction(B, emb, Ultrafilter.principal(B, U0.atom), U)


def translate_pool(pool: NamePool, emb: Embedding) -> dict:
    return {t: map_name(t, emb, emb.target) for t in pool.names}


@dataclass
class FactorMapReport:
    well_defined: bool
    injective: bool
    preserves_membership: bool
    elementary: bool
    atomic_values_agree: bool
    generic_restricts: bool
    formulas: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all([self.well_defined, self.injective, self.preserves_membership,
                    self.elementary, self.atomic_values_agree, self.generic_restricts])

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def generic_restriction_check(R: Restriction) -> bool:
    """⟦k(Ġ_B) = Ġ_C ∩ B̌⟧ = 1 in C.

    B's elements are coded by their images in C so that B ⊆ C holds
    literally on the HF side.  Ġ_C ∩ B̌ is formed by separation.
    """
    C = R.U.algebra
    emb = R.embedding
    s = BVSession(C)
    GB = Name(C, [(element_check(emb(b)), emb(b).mask) for b in R.sub.elements()])
    GC = generic_name(C)
    Bcheck = check_name(HFSet(encode_atoms(emb(b).atoms) for b in R.sub.elements()), C)
    pool = NamePool(C, [GC, Bcheck])
    sep = separation_name(GC, parse("x in b"), "x", pool, {"b": Bcheck})
    return s.equal(GB, sep) == C.full_mask


def factor_map_check(R: Restriction, poolB: NamePool, formulas: Iterable,
                     extra_C: Sequence[Name] = ()) -> FactorMapReport:
    """k[τ]_{U₀} = [τ]_U on B-names, checked against both quotient models.

    Elementarity is tested on the V̌ parts: V̌_{U₀} ⊨ φ[[τ⃗]] iff
    V̌_U ⊨ φ[k[τ⃗]].
    """
    C = R.U.algebra
    tr = translate_pool(poolB, R.embedding)
    poolC = NamePool(C, list(tr.values()) + list(extra_C))
    m0 = quotient_model(poolB, R.U0)
    m1 = quotient_model(poolC, R.U)
    fails = []
    k = {}
    well = True
    for t in poolB.names:
        c0, c1 = m0.cls(t), m1.cls(tr[t])
        if k.setdefault(c0, c1) != c1:
            well = False
    inj = len(set(k.values())) == len(k)
    pres = all(bool(m0.member[a, b]) == bool(m1.member[k[a], k[b]]) for a in k for b in k)
    # atomic values agree after pushing forward
    sB, sC = poolB.session, poolC.session
    agree = True
    for a in poolB.names:
        for b in poolB.names:
            if R.embedding(Element(R.sub, sB.member(a, b))).mask != sC.member(tr[a], tr[b]):
                agree = False
            if R.embedding(Element(R.sub, sB.equal(a, b))).mask != sC.equal(tr[a], tr[b]):
                agree = False
    if not agree:
        fails.append("atomic values differ between B and C")
    Q0, keep0 = m0.vcheck_part()
    Q1, keep1 = m1.vcheck_part()
    pos1 = {int(c): i for i, c in enumerate(keep1)}
    lift = np.array([pos1.get(k[int(c)], -1) for c in keep0], dtype=np.int64)
    elem = bool((lift >= 0).all())
    nform = 0
    for phi in formulas:
        nform += 1
        if not elem:
            break
        fv = sorted(free_vars(phi))
        t0 = Q0.truth_table(phi, fv)
        t1 = Q1.truth_table(phi, fv)
        if fv:
            t1 = t1[np.ix_(*([lift] * len(fv)))]
        if not np.array_equal(t0, t1):
            elem = False
            fails.append(f"elementarity fails for a formula with {len(fv)} free variables")
    gen = generic_restriction_check(R)
    return FactorMapReport(well, inj, pres, elem, agree, gen, nform, fails)


def relativized_values_agree(R: Restriction, poolB: NamePool, formulas: Iterable,
                             extra_C: Sequence[Name] = ()) -> dict:
    """⟦φ^V̌(τ⃗)⟧ in B, pushed into C, equals the value computed in C.

    Free variables range over B-names with ⟦τ ∈ V̌⟧ = 1; C's pool holds
    the translated B-pool plus ``extra_C``.
    """
    C = R.U.algebra
    tr = translate_pool(poolB, R.embedding)
    poolC = NamePool(C, list(tr.values()) + list(extra_C))
    SB, SC = poolB.structure(), poolC.structure()
    vnames = [t for t in poolB.names if int(SB.relations["V"][poolB.index[t]]) == R.sub.full_mask]
    iB = np.array([poolB.index[t] for t in vnames], dtype=np.int64)
    iC = np.array([poolC.index[tr[t]] for t in vnames], dtype=np.int64)
    img = np.array([R.embedding(Element(R.sub, m)).mask for m in range(R.sub.size)], dtype=np.int64)
    checked, bad = 0, []
    for phi in formulas:
        fv = sorted(free_vars(phi))
        rel = relativize(phi)
        vb = value_table(SB, rel, fv)
        vc = value_table(SC, rel, fv)
        if fv:
            vb = vb[np.ix_(*([iB] * len(fv)))]
            vc = vc[np.ix_(*([iC] * len(fv)))]
        pushed = img[vb]
        checked += int(np.size(vb))
        if not np.array_equal(pushed, vc):
            bad.append(phi)
    return {"instances": checked, "mismatches": len(bad), "ok": not bad, "names_in_vcheck": len(vnames)}


# ---------------------------------------------------------------- iterations

def iteration_ultrafilter(it: IterationAlgebra, U0: Ultrafilter, U1: Ultrafilter) -> Ultrafilter:
    """U₀ * U₁: U₁ lives on the fiber over U₀'s atom."""
    if U0.algebra != it.base:
        raise ValueError("U0 must live on the base algebra")
    if U1.algebra != it.fibers[U0.atom]:
        raise ValueError("U1 must live on the fiber selected by U0")
    return Ultrafilter.principal(it.algebra, it.index(U0.atom, U1.atom))


def decompose_iteration(it: IterationAlgebra, U: Ultrafilter) -> tuple[Ultrafilter, Ultrafilter]:
    """U₀ = {b : (b, 1) ∈ U}; U₁ = {c : {(a₀, e) : e ∈ c} ∈ U} on the fiber over a₀."""
    U0 = Ultrafilter.from_elements(it.base, [b for b in it.base.elements() if it.embedding(b) in U])
    a0 = U0.atom
    F = it.fibers[a0]
    into = it.fiber_embedding(a0)
    U1 = Ultrafilter.from_elements(F, [c for c in F.elements() if into(c) in U])
    return Ultrafilter.principal(it.base, a0), Ultrafilter.principal(F, U1.atom)


# ---------------------------------------------------------------- products

def rectangle_filter_contains(X: Element, P: Algebra, U0: Ultrafilter, U1: Ultrafilter) -> bool:
    """X ∈ U₀ ⊠ U₁ iff some rectangle b × c with b ∈ U₀, c ∈ U₁ lies below X."""
    B0, B1 = U0.algebra, U1.algebra
    for b in U0.members():
        for c in U1.members():
            if product_pair(P, B0, B1, b, c) <= X:
                return True
    return False


def _section(X: Element, n1: int, a: int) -> int:
    return (X.mask >> (a * n1)) & ((1 << n1) - 1)


def product_filter_contains(X: Element, U0: Ultrafilter, U1: Ultrafilter) -> bool:
    """X ∈ U₀ × U₁ iff {a : {e : (a,e) ∈ X} ∈ U₁} ∈ U₀."""
    B0, B1 = U0.algebra, U1.algebra
    good = [a for a in range(B0.n_atoms) if Element(B1, _section(X, B1.n_atoms, a)) in U1]
    return B0.element(good) in U0


def dual_product_filter_contains(X: Element, U0: Ultrafilter, U1: Ultrafilter) -> bool:
    """X ∈ U₀ ⋊ U₁ iff {e : {a : (a,e) ∈ X} ∈ U₀} ∈ U₁."""
    B0, B1 = U0.algebra, U1.algebra
    n1 = B1.n_atoms
    good = []
    for e in range(n1):
        col = B0.element(a for a in range(B0.n_atoms) if X.mask >> (a * n1 + e) & 1)
        if col in U0:
            good.append(e)
    return B1.element(good) in U1


def swap(X: Element, B0: Algebra, B1: Algebra, P_swapped: Algebra) -> Element:
    """The image of X ⊆ B0 × B1 in B1 × B0."""
    n0, n1 = B0.n_atoms, B1.n_atoms
    return P_swapped.element(e * n0 + a for a in range(n0) for e in range(n1)
                             if X.mask >> (a * n1 + e) & 1)
