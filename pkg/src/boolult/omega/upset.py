"""Ultimately periodic subsets of ℕ and the multiples ultrafilter.

A UPSet is described by a threshold N, a period p, a set of residues mod
p used for n ≥ N, and an explicit prefix below N.  The canonical form
has the least period and then the least threshold, so equal sets have
equal descriptions.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class UPSet:
    threshold: int
    period: int
    pattern: frozenset
    prefix: frozenset

    def __post_init__(self):
        if self.threshold < 0 or self.period < 1:
            raise ValueError("threshold must be ≥ 0 and period ≥ 1")
        pat = frozenset(int(r) for r in self.pattern)
        pre = frozenset(int(n) for n in self.prefix)
        if any(not 0 <= r < self.period for r in pat):
            raise ValueError("pattern residues must lie in [0, period)")
        if any(not 0 <= n < self.threshold for n in pre):
            raise ValueError("prefix entries must lie below the threshold")
        object.__setattr__(self, "pattern", pat)
        object.__setattr__(self, "prefix", pre)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.threshold:
            return n in self.prefix
        return n % self.period in self.pattern

    # ------------------------------------------------------------ building
    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], threshold: int, period: int) -> "UPSet":
        """The set agreeing with pred below threshold and, from there on,
        with pred's values on one full period."""
        pre = {n for n in range(threshold) if pred(n)}
        pat = {r for r in range(period) if pred(threshold + (r - threshold) % period)}
        return cls(threshold, period, frozenset(pat), frozenset(pre)).normalize()

    @classmethod
    def empty(cls) -> "UPSet":
        return cls(0, 1, frozenset(), frozenset())

    @classmethod
    def full(cls) -> "UPSet":
        return cls(0, 1, frozenset({0}), frozenset())

    @classmethod
    def finite(cls, members) -> "UPSet":
        ms = frozenset(int(m) for m in members)
        top = max(ms) + 1 if ms else 0
        return cls(top, 1, frozenset(), ms).normalize()

    @classmethod
    def tail(cls, n: int) -> "UPSet":
        """{k : k ≥ n}."""
        return cls(n, 1, frozenset({0}), frozenset()).normalize()

    @classmethod
    def residues(cls, period: int, rs, threshold: int = 0) -> "UPSet":
        return cls(threshold, period, frozenset(r % period for r in rs), frozenset()).normalize()

    def normalize(self) -> "UPSet":
        p, N = self.period, self.threshold
        for d in sorted(k for k in range(1, p + 1) if p % k == 0):
            if all((r in self.pattern) == ((r + d) % p in self.pattern) for r in range(p)):
                p = d
                break
        pat = frozenset(r % p for r in self.pattern)
        while N > 0 and ((N - 1) in self.prefix) == ((N - 1) % p in pat):
            N -= 1
        pre = frozenset(n for n in self.prefix if n < N)
        return UPSet(N, p, pat, pre)

    # ------------------------------------------------------------ algebra
    def _combine(self, other: "UPSet", op) -> "UPSet":
        L = math.lcm(self.period, other.period)
        M = max(self.threshold, other.threshold)
        return UPSet.from_predicate(lambda n: op(n in self, n in other), M, L)

    def __and__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a or b)

    def __sub__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a and not b)

    def __invert__(self) -> "UPSet":
        return UPSet(self.threshold, self.period,
                     frozenset(range(self.period)) - self.pattern,
                     frozenset(range(self.threshold)) - self.prefix).normalize()

    def __le__(self, other: "UPSet") -> bool:
        return (self - other).is_empty

    def equals(self, other: "UPSet") -> bool:
        return self.normalize() == other.normalize()

    @property
    def is_empty(self) -> bool:
        c = self.normalize()
        return not c.pattern and not c.prefix

    @property
    def is_finite(self) -> bool:
        return not self.pattern

    def first_at_least(self, n: int) -> int | None:
        """The least member ≥ n, or None."""
        stop = max(n, self.threshold) + self.period
        for m in range(max(n, 0), stop):
            if m in self:
                return m
        return None

    def window(self) -> int:
        return self.threshold + self.period

    def to_json(self) -> dict:
        c = self.normalize()
        return {"threshold": c.threshold, "period": c.period,
                "pattern": sorted(c.pattern), "prefix": sorted(c.prefix)}

    def __repr__(self) -> str:
        c = self.normalize()
        return f"UPSet(N={c.threshold}, p={c.period}, pattern={sorted(c.pattern)}, prefix={sorted(c.prefix)})"


def upset_from_json(doc: dict) -> UPSet:
    return UPSet(int(doc.get("threshold", 0)), int(doc.get("period", 1)),
                 frozenset(doc.get("pattern", ())), frozenset(doc.get("prefix", ()))).normalize()


def check_window(*sets: UPSet) -> int:
    """Pointwise agreement bound 2·lcm(periods) + max(thresholds) + 4."""
    L = 1
    for s in sets:
        L = math.lcm(L, s.period)
    return 2 * L + max((s.threshold for s in sets), default=0) + 4


def random_upset(rng: random.Random, max_threshold: int = 8, max_period: int = 6) -> UPSet:
    N = rng.randint(0, max_threshold)
    p = rng.randint(1, max_period)
    pat = frozenset(r for r in range(p) if rng.random() < 0.5)
    pre = frozenset(n for n in range(N) if rng.random() < 0.5)
    return UPSet(N, p, pat, pre).normalize()


# ---------------------------------------------------------------- ultrafilter

class MultiplesUltrafilter:
    """S ∈ U iff residue 0 lies in S's eventual pattern.

    Equivalently S eventually contains every multiple of its period.  The
    test does not depend on which period describes S, since n ≡ 0 mod a
    multiple of p implies n ≡ 0 mod p.
    """

    def __contains__(self, S: UPSet) -> bool:
        return 0 in S.normalize().pattern

    def members_oracle(self, S: UPSet, max_modulus: int = 64, span: int = 400) -> bool:
        """Pointwise reading: some m has all its multiples in [T, T+span] inside S,
        where T lies past S's threshold."""
        T = S.threshold + 1
        for m in range(1, max_modulus + 1):
            start = -(-T // m) * m
            stop = start + max(span, 2 * m * S.period)
            if all(k in S for k in range(start, stop, m)):
                return True
        return False

    def to_json(self) -> dict:
        return {"kind": "multiples", "rule": "0 in eventual pattern"}


U_MULTIPLES = MultiplesUltrafilter()


def random_member(rng: random.Random, U: MultiplesUltrafilter = U_MULTIPLES, **kw) -> UPSet:
    S = random_upset(rng, **kw)
    return S if S in U else ~S
