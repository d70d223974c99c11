"""Spanning functions: the functional presentation of the ultrapower.

A spanning function is a map on a maximal antichain.  Two of them are
compared on a common refinement, and a relation holds in the ultrapower
when the join of the places where it holds lies in U.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce as _reduce
from typing import Any, Mapping, Sequence

import numpy as np

from ..fol.classical import ClassicalStructure
from ..kernel.algebra import Algebra, Antichain, Element, common_refinement
from ..names.hf import HFSet
from ..names.name import Name, check_name, mix
from ..names.pool import NamePool
from .quotient import quotient_model


@dataclass(frozen=True)
class SpanningFunction:
    domain: Antichain
    values: tuple

    def __post_init__(self):
        if not self.domain.is_maximal:
            raise ValueError("a spanning function lives on a maximal antichain")
        if len(self.values) != len(self.domain):
            raise ValueError("one value per antichain member")

    @classmethod
    def from_mapping(cls, A: Antichain, f: Mapping[Element, Any]) -> "SpanningFunction":
        return cls(A, tuple(f[a] for a in A.elements))

    @classmethod
    def constant(cls, B: Algebra, x) -> "SpanningFunction":
        return cls(Antichain(B, (B.one,)), (x,))

    def __call__(self, a: Element):
        return self.values[self.domain.index(a)]

    def items(self):
        return zip(self.domain.elements, self.values)


def sf_reduce(f: SpanningFunction, C: Antichain) -> SpanningFunction:
    """f↓C: copy each value down to the members of C below it."""
    if not C.refines(f.domain):
        raise ValueError("reduction needs a refinement")
    return SpanningFunction(C, tuple(f(f.domain.above(c)) for c in C.elements))


def _common(fs: Sequence[SpanningFunction]) -> Antichain:
    C = fs[0].domain
    for f in fs[1:]:
        C, _, _ = common_refinement(C, f.domain)
    return C


def _join_in(U, B: Algebra, cs) -> bool:
    m = 0
    for c in cs:
        m |= c.mask
    return Element(B, m) in U


def sf_equiv(f: SpanningFunction, g: SpanningFunction, U) -> bool:
    C = _common([f, g])
    fr, gr = sf_reduce(f, C), sf_reduce(g, C)
    return _join_in(U, C.algebra, [c for c, x, y in zip(C.elements, fr.values, gr.values) if x == y])


def sf_member(f: SpanningFunction, g: SpanningFunction, U) -> bool:
    C = _common([f, g])
    fr, gr = sf_reduce(f, C), sf_reduce(g, C)
    return _join_in(U, C.algebra, [c for c, x, y in zip(C.elements, fr.values, gr.values) if x in y])


def sf_los(fs: Mapping[str, SpanningFunction], phi, U, M: ClassicalStructure, domain: Sequence) -> bool:
    """Truth of φ[[f⃗]] judged by the join of {c : M ⊨ φ[(f↓C)(c)]} being in U.

    ``domain`` lists M's elements in index order; values of the functions
    must be among them.
    """
    where = {x: k for k, x in enumerate(domain)}
    vars_ = sorted(fs)
    C = _common([fs[v] for v in vars_])
    red = {v: sf_reduce(fs[v], C) for v in vars_}
    good = []
    for k, c in enumerate(C.elements):
        asg = {v: where[red[v].values[k]] for v in vars_}
        if M.satisfies(phi, asg):
            good.append(c)
    return _join_in(U, C.algebra, good)


# ---------------------------------------------------------------- open dense

def open_dense_extension(f: SpanningFunction) -> dict:
    """Extend f to every nonzero element below a member of its domain."""
    B = f.domain.algebra
    out = {}
    for b in B.nonzero():
        for a, x in f.items():
            if b <= a:
                out[b] = x
                break
    return out


def od_equiv(ft: Mapping[Element, Any], gt: Mapping[Element, Any], U) -> bool:
    """⋁{b ∈ dom ∩ dom' : f̃(b) = g̃(b)} ∈ U."""
    common = [b for b in ft if b in gt and ft[b] == gt[b]]
    if not common:
        return False
    B = next(iter(ft)).algebra
    return _join_in(U, B, common)


# ---------------------------------------------------------------- presentations

def all_spanning_functions(B: Algebra, values: Sequence) -> list[SpanningFunction]:
    out = []
    for A in B.maximal_antichains():
        for vs in itertools.product(values, repeat=len(A)):
            out.append(SpanningFunction(A, tuple(vs)))
    return out


def sf_name(f: SpanningFunction) -> Name:
    """τ_f: the mixture of the check names of f's values over its domain."""
    B = f.domain.algebra
    return mix(f.domain, [check_name(x, B) for x in f.values])


def sf_from_name(tau: Name, pool: NamePool, session=None) -> SpanningFunction | None:
    """A spanning function whose mixture is equal to τ, when τ is in V̌.

    The domain is the set of nonzero values ⟦τ = x̌⟧ over the pool's check
    fragment; if their join falls short of 1 the remainder is sent to ∅.
    Returns None when τ has no V̌ part at all.
    """
    B = tau.algebra
    s = session or pool.session
    parts = {}
    for x in sorted(pool.checks, key=lambda x: x.key):
        m = s.equal(tau, pool.names[pool.checks[x]])
        if m:
            parts[x] = m
    if not parts:
        return None
    cover = 0
    for m in parts.values():
        cover |= m
    els, vals = [], []
    for x, m in parts.items():
        els.append(Element(B, m))
        vals.append(x)
    if cover != B.full_mask:
        els.append(Element(B, B.full_mask ^ cover))
        vals.append(HFSet())
    A = Antichain(B, tuple(els))
    order = {e: v for e, v in zip(els, vals)}
    return SpanningFunction(A, tuple(order[e] for e in A.elements))


@dataclass
class PresentationReport:
    spanning_functions: int
    functional_classes: int
    model_classes_in_vcheck: int
    well_defined: bool
    injective: bool
    surjective: bool
    preserves_membership: bool
    commutes_with_j: bool
    open_dense_agrees: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.well_defined and self.injective and self.surjective
                and self.preserves_membership and self.commutes_with_j and self.open_dense_agrees)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        d["failures"] = self.failures[:10]
        return d


def presentations_iso(B: Algebra, U, values: Sequence[HFSet], pool: NamePool | None = None) -> PresentationReport:
    """Check that [f]_U ↦ [τ_f]_U is an ∈-isomorphism commuting with j.

    The pool is extended with every τ_f so that both sides live in one
    quotient model.
    """
    fs = all_spanning_functions(B, values)
    # functional classes by the definition of ≡_U
    reps: list[int] = []
    cls_of = []
    for k, f in enumerate(fs):
        for r_i, r in enumerate(reps):
            if sf_equiv(f, fs[r], U):
                cls_of.append(r_i)
                break
        else:
            cls_of.append(len(reps))
            reps.append(k)
    taus = [sf_name(f) for f in fs]
    base = pool if pool is not None else NamePool(B, (), values)
    P = base.extended(taus, values)
    model = quotient_model(P, U)
    image = [model.cls(t) for t in taus]
    failures = []
    well = all(image[k] == image[reps[cls_of[k]]] for k in range(len(fs)))
    if not well:
        failures.append("π depends on the representative")
    rep_img = [image[r] for r in reps]
    inj = len(set(rep_img)) == len(rep_img)
    if not inj:
        failures.append("π identifies distinct classes")
    vclasses = {int(c) for c in np.flatnonzero(model.vcheck)}
    onto = set(rep_img) >= vclasses and set(rep_img) <= vclasses
    # constructive surjectivity: every V̌ name comes from a spanning function
    vnames = [t for t in P.names if int(model.class_of[P.index[t]]) in vclasses]
    back = [sf_from_name(t, P) for t in vnames]
    if any(g is None for g in back):
        onto = False
        failures.append("a V̌ name has no spanning function")
    else:
        P2 = P.extended([sf_name(g) for g in back])
        m2 = quotient_model(P2, U)
        for t, g in zip(vnames, back):
            if m2.cls(sf_name(g)) != m2.cls(t):
                onto = False
                failures.append(f"no spanning function for {t!r}")
                break
    pres = True
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            if sf_member(fs[ra], fs[rb], U) != bool(model.member[rep_img[a], rep_img[b]]):
                pres = False
                failures.append(f"membership differs for classes {a}, {b}")
                break
        if not pres:
            break
    comm = all(model.cls(sf_name(SpanningFunction.constant(B, x))) == model.j(x) for x in values)
    od = True
    for a, ra in enumerate(reps):
        fa = open_dense_extension(fs[ra])
        for b, rb in enumerate(reps):
            if od_equiv(fa, open_dense_extension(fs[rb]), U) != (a == b):
                od = False
                break
        if not od:
            failures.append("open-dense equivalence disagrees")
            break
    return PresentationReport(len(fs), len(reps), len(vclasses), well, inj, onto, pres, comm, od, failures)
