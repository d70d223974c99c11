"""Induced ultrafilters, factor ultrapowers and their direct limit.

For a maximal antichain A, U_A = {X ⊆ A : ∨X ∈ U} is an ultrafilter on
the power set of A.  Each factor ultrapower V^A/U_A is modeled with a
finite value universe W, its elements being classes of maps A → W.
Refinement C of A gives π_{A,C}[f] = [f↓C], and the limit identifies
nodes along these maps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from ..kernel.algebra import Algebra, Antichain, Element, common_refinement
from ..names.hf import HFSet, encode_atoms
from ..names.name import Name, check_name, element_check, generic_name, mix
from ..names.pool import NamePool
from ..names.values import BVSession
from .quotient import quotient_model
from .spanning import SpanningFunction, sf_equiv, sf_name


@dataclass(frozen=True)
class InducedUltrafilter:
    antichain: Antichain
    ultrafilter: Any

    def __contains__(self, X) -> bool:
        """X is a set of indices into the antichain."""
        m = 0
        for k in X:
            m |= self.antichain.elements[k].mask
        return Element(self.antichain.algebra, m) in self.ultrafilter

    def is_ultrafilter(self) -> bool:
        n = len(self.antichain)
        full = frozenset(range(n))
        subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
        if frozenset() in self or full not in self:
            return False
        for X in subsets:
            if (X in self) == ((full - X) in self):
                return False
            for Y in subsets:
                if X in self and Y in self and (X & Y) not in self:
                    return False
        return True

    def selected(self) -> int:
        """The index k with {k} ∈ U_A."""
        for k in range(len(self.antichain)):
            if frozenset({k}) in self:
                return k
        raise ValueError("no singleton in the induced ultrafilter")


def induced_ultrafilter(U, A: Antichain) -> InducedUltrafilter:
    return InducedUltrafilter(A, U)


class FactorUltrapower:
    """V^A/U_A over a finite value universe, classes by agreement sets."""

    def __init__(self, UA: InducedUltrafilter, values: Sequence):
        self.UA = UA
        self.A = UA.antichain
        self.values = tuple(values)
        n = len(self.A)
        self.reps: list[tuple] = []
        self.index: dict[tuple, int] = {}
        for f in itertools.product(self.values, repeat=n):
            self.index[f] = self._classify(f)

    def equiv(self, f: tuple, g: tuple) -> bool:
        return frozenset(k for k in range(len(f)) if f[k] == g[k]) in self.UA

    def member(self, f: tuple, g: tuple) -> bool:
        return frozenset(k for k in range(len(f)) if f[k] in g[k]) in self.UA

    def _classify(self, f: tuple) -> int:
        for k, r in enumerate(self.reps):
            if self.equiv(f, r):
                return k
        self.reps.append(f)
        return len(self.reps) - 1

    def cls(self, f: tuple) -> int:
        """Class of any map, including maps into objects outside W."""
        hit = self.index.get(f)
        if hit is not None:
            return hit
        for k, r in enumerate(self.reps):
            if self.equiv(f, r):
                return k
        return -1

    def j(self, x) -> int:
        return self.index[(x,) * len(self.A)]

    def reduce(self, f: tuple, C: Antichain) -> tuple:
        return tuple(f[self.A.index(self.A.above(c))] for c in C.elements)


def closure_under_refinement(family: Sequence[Antichain]) -> list[Antichain]:
    out = list(dict.fromkeys(family))
    changed = True
    while changed:
        changed = False
        for A, B in itertools.combinations(list(out), 2):
            C, _, _ = common_refinement(A, B)
            if C not in out:
                out.append(C)
                changed = True
    return sorted(out, key=lambda A: (len(A), [e.mask for e in A.elements]))


@dataclass
class LimitReport:
    nodes: int
    limit_size: int
    well_defined: bool
    triangles_commute: bool       # π_{C,D}∘π_{A,C} = π_{A,D}
    limit_commutes: bool          # π_{A,∞} = π_{C,∞}∘π_{A,C}
    j_factors: bool               # π_{A,∞}∘j_{U_A} does not depend on A
    matches_functional: bool      # π_A[f]_{U_A} = [f]_U
    iso_to_quotient: bool         # limit ≅ V̌_U, ∈-preserving
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all([self.well_defined, self.triangles_commute, self.limit_commutes,
                    self.j_factors, self.matches_functional, self.iso_to_quotient])

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        d["failures"] = self.failures[:10]
        return d


class DirectLimitSystem:
    def __init__(self, B: Algebra, U, family: Sequence[Antichain], values: Sequence[HFSet]):
        self.B = B
        self.U = U
        self.family = closure_under_refinement(family)
        self.values = tuple(values)
        self.factors = [FactorUltrapower(induced_ultrafilter(U, A), self.values) for A in self.family]
        self.refines = {(i, k) for i, A in enumerate(self.family) for k, C in enumerate(self.family)
                        if C.refines(A)}
        # union-find over nodes (factor, class)
        self.parent: dict = {}
        for i, F in enumerate(self.factors):
            for c in range(len(F.reps)):
                self.parent[(i, c)] = (i, c)
        for i, k in self.refines:
            for c in range(len(self.factors[i].reps)):
                self._union((i, c), (k, self.pi(i, k, c)))
        roots = sorted({self._find(n) for n in self.parent})
        self.limit_index = {r: t for t, r in enumerate(roots)}

    def _find(self, n):
        while self.parent[n] != n:
            self.parent[n] = self.parent[self.parent[n]]
            n = self.parent[n]
        return n

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def pi(self, i: int, k: int, c: int) -> int:
        """π_{A_i, A_k} on class c of factor i."""
        F, G = self.factors[i], self.factors[k]
        return G.cls(F.reduce(F.reps[c], G.A))

    def to_limit(self, i: int, c: int) -> int:
        return self.limit_index[self._find((i, c))]

    @property
    def limit_size(self) -> int:
        return len(self.limit_index)

    def limit_member(self, x: int, y: int) -> bool:
        """x ∈ y in the limit, read at a common node."""
        for i, F in enumerate(self.factors):
            cx = [c for c in range(len(F.reps)) if self.to_limit(i, c) == x]
            cy = [c for c in range(len(F.reps)) if self.to_limit(i, c) == y]
            if cx and cy:
                return F.member(F.reps[cx[0]], F.reps[cy[0]])
        raise ValueError("no common node")

    def verify(self, pool: NamePool | None = None) -> LimitReport:
        fails = []
        well = True
        for i, k in self.refines:
            F, G = self.factors[i], self.factors[k]
            for f, c in F.index.items():
                if G.cls(F.reduce(f, G.A)) != self.pi(i, k, c):
                    well = False
                    fails.append(f"π between nodes {i},{k} depends on the representative")
                    break
        tri = True
        for i, k in self.refines:
            for k2, d in self.refines:
                if k2 != k or (i, d) not in self.refines:
                    continue
                for c in range(len(self.factors[i].reps)):
                    if self.pi(k, d, self.pi(i, k, c)) != self.pi(i, d, c):
                        tri = False
        lim = all(self.to_limit(i, c) == self.to_limit(k, self.pi(i, k, c))
                  for i, k in self.refines for c in range(len(self.factors[i].reps)))
        jf = all(len({self.to_limit(i, F.j(x)) for i, F in enumerate(self.factors)}) == 1
                 for x in self.values)
        # functional presentation: [f]_{U_A} ↦ [f]_U
        matches = True
        for i, F in enumerate(self.factors):
            for c, r in enumerate(F.reps):
                f = SpanningFunction(F.A, r)
                for k, G in enumerate(self.factors):
                    for d, s in enumerate(G.reps):
                        same = self.to_limit(i, c) == self.to_limit(k, d)
                        if same != sf_equiv(f, SpanningFunction(G.A, s), self.U):
                            matches = False
        # iso to the V̌ part of the quotient model
        taus = {}
        for i, F in enumerate(self.factors):
            for c, r in enumerate(F.reps):
                taus[(i, c)] = sf_name(SpanningFunction(F.A, r))
        base = pool if pool is not None else NamePool(self.B, (), self.values)
        P = base.extended(taus.values(), self.values)
        model = quotient_model(P, self.U)
        img = {}
        iso = True
        for node, t in taus.items():
            x = self.to_limit(*node)
            q = model.cls(t)
            if img.setdefault(x, q) != q:
                iso = False
        vclasses = {int(c) for c in np.flatnonzero(model.vcheck)}
        if len(set(img.values())) != len(img) or set(img.values()) != vclasses:
            iso = False
        for x in range(self.limit_size):
            for y in range(self.limit_size):
                if self.limit_member(x, y) != bool(model.member[img[x], img[y]]):
                    iso = False
        if not iso:
            fails.append("limit is not isomorphic to the V̌ part of the quotient")
        return LimitReport(len(self.parent), self.limit_size, well, tri, lim, jf, matches, iso, fails)


# ---------------------------------------------------------------- extenders

@dataclass(frozen=True)
class ExtenderRep:
    antichain: Antichain
    function: tuple          # values aligned with the antichain
    selector: Element        # b_A: the member of A picked by U
    round_trip: bool


def extender_rep(system: DirectLimitSystem, x: int) -> ExtenderRep:
    """Write a limit element as j(f)(b_A) with b_A = [id_A].

    j(f) is the class of the constant map with value f, and applying it
    to [id_A] inside V^A/U_A gives the class of a ↦ f(a), which is [f].
    """
    for i, F in enumerate(system.factors):
        for c, r in enumerate(F.reps):
            if system.to_limit(i, c) == x:
                A = F.A
                ident = tuple(A.elements)
                fmap = dict(zip(A.elements, r))
                applied = tuple(fmap[ident[k]] for k in range(len(A)))  # j(f)(id) pointwise
                back = system.to_limit(i, F.cls(applied))
                sel = A.elements[F.UA.selected()]
                # [id_A] is the class of the constant map at the selected member
                id_ok = F.equiv(ident, (sel,) * len(A))
                return ExtenderRep(A, r, sel, back == x and id_ok)
    raise ValueError(f"{x} is not a limit element")


def selector_check(B: Algebra, U, A: Antichain) -> dict:
    """Name-level facts about τ_A, the mixture of ǎ over a ∈ A.

    ⟦τ_A ∈ Ǎ⟧ = 1, ⟦τ_A ∈ Ġ⟧ = 1, ⟦ǎ ∈ Ġ⟧ = a for a ∈ A, so exactly one
    member of A has its check name in the generic class, and it is
    U-equal to τ_A.
    """
    s = BVSession(B)
    G = generic_name(B)
    checks = [element_check(a) for a in A.elements]
    tau = mix(A, checks)
    A_check = check_name(HFSet(encode_atoms(a.atoms) for a in A.elements), B)
    in_A = s.member(tau, A_check) == B.full_mask
    in_G = s.member(tau, G) == B.full_mask
    values = [s.member(c, G) == a.mask for c, a in zip(checks, A.elements)]
    chosen = [a for a, c in zip(A.elements, checks) if Element(B, s.member(c, G)) in U]
    equal_u = len(chosen) == 1 and Element(B, s.equal(tau, element_check(chosen[0]))) in U
    mix_exact = all(s.equal(tau, c) == a.mask for c, a in zip(checks, A.elements))
    return {"in_A": in_A, "in_G": in_G, "g_values": all(values), "unique": len(chosen) == 1,
            "equal_mod_U": equal_u, "mixing_exact": mix_exact,
            "ok": in_A and in_G and all(values) and len(chosen) == 1 and equal_u and mix_exact}
