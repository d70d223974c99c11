"""Atomic Boolean values of names by the double recursion.

    ⟦τ ∈ σ⟧ = ⋁_{⟨η,b⟩ ∈ σ} ⟦τ = η⟧ ∧ b
    ⟦τ ⊆ σ⟧ = ⋀_{η ∈ dom τ} (⟦η ∈ τ⟧ → ⟦η ∈ σ⟧)
    ⟦τ = σ⟧ = ⟦τ ⊆ σ⟧ ∧ ⟦σ ⊆ τ⟧

``BVSession`` memoizes on name pairs; ``reference_value`` is the same
recursion with no sharing, for differential tests.
"""
from __future__ import annotations

from ..kernel.algebra import AlgebraMismatchError, Element
from .name import Name

RELATIONS = ("in", "eq", "sub")


class BVSession:
    """Memo tables for one logical evaluation.  Not shared across threads."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.full = algebra.full_mask
        self._in: dict = {}
        self._eq: dict = {}
        self._sub: dict = {}

    def _check(self, *names):
        for n in names:
            if n.algebra != self.algebra:
                raise AlgebraMismatchError("name over a different algebra")

    def member(self, tau: Name, sigma: Name) -> int:
        k = (tau, sigma)
        v = self._in.get(k)
        if v is None:
            v = 0
            for eta, b in sigma.entries:
                if b:
                    v |= self.equal(tau, eta) & b
                    if v == self.full:
                        break
            self._in[k] = v
        return v

    def subset(self, tau: Name, sigma: Name) -> int:
        k = (tau, sigma)
        v = self._sub.get(k)
        if v is None:
            v = self.full
            for eta in tau.domain():
                v &= (self.full ^ self.member(eta, tau)) | self.member(eta, sigma)
                if not v:
                    break
            self._sub[k] = v
        return v

    def equal(self, tau: Name, sigma: Name) -> int:
        if tau is sigma or tau == sigma:
            return self.full
        k = (tau, sigma) if tau.key <= sigma.key else (sigma, tau)
        v = self._eq.get(k)
        if v is None:
            v = self.subset(tau, sigma)
            if v:
                v &= self.subset(sigma, tau)
            self._eq[k] = v
        return v

    def value(self, tau: Name, sigma: Name, rel: str) -> Element:
        self._check(tau, sigma)
        if rel == "in":
            m = self.member(tau, sigma)
        elif rel == "eq":
            m = self.equal(tau, sigma)
        elif rel == "sub":
            m = self.subset(tau, sigma)
        else:
            raise ValueError(f"relation must be one of {RELATIONS}")
        return Element(self.algebra, m)


def bv_atomic(tau: Name, sigma: Name, rel: str, session: BVSession | None = None) -> Element:
    if tau.algebra != sigma.algebra:
        raise AlgebraMismatchError("names over different algebras")
    s = session or BVSession(tau.algebra)
    return s.value(tau, sigma, rel)


def reference_value(tau: Name, sigma: Name, rel: str) -> int:
    """The same recursion, unmemoized and without the τ = τ shortcut."""
    full = tau.algebra.full_mask
    if rel == "in":
        v = 0
        for eta, b in sigma.entries:
            v |= reference_value(tau, eta, "eq") & b
        return v
    if rel == "sub":
        v = full
        for eta in tau.domain():
            v &= (full ^ reference_value(eta, tau, "in")) | reference_value(eta, sigma, "in")
        return v
    if rel == "eq":
        return reference_value(tau, sigma, "sub") & reference_value(sigma, tau, "sub")
    raise ValueError(rel)
