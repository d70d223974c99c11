"""Eventually affine functions ℕ → ℕ and the symbolic ultrapower they span.

The functions live on the antichain of singletons, so classes and order
are read off comparison sets, which are finite or cofinite and hence
UPSets decided by the multiples ultrafilter.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .upset import U_MULTIPLES, MultiplesUltrafilter, UPSet


@dataclass(frozen=True)
class EAFunction:
    """n ↦ exceptions[n] for n < threshold, a·n + b from there on."""
    threshold: int
    slope: int
    intercept: int
    exceptions: tuple = ()

    def __post_init__(self):
        ex = tuple(int(v) for v in self.exceptions)
        if len(ex) != self.threshold:
            raise ValueError("one exception value per n below the threshold")
        if self.slope < 0:
            raise ValueError("slope must be ≥ 0")
        if any(v < 0 for v in ex) or self.slope * self.threshold + self.intercept < 0:
            raise ValueError("values must be natural numbers")
        object.__setattr__(self, "exceptions", ex)

    def __call__(self, n: int) -> int:
        if n < self.threshold:
            return self.exceptions[n]
        return self.slope * n + self.intercept

    @classmethod
    def constant(cls, k: int) -> "EAFunction":
        return cls(0, 0, k)

    @classmethod
    def identity(cls) -> "EAFunction":
        return cls(0, 1, 0)

    @classmethod
    def affine(cls, a: int, b: int) -> "EAFunction":
        """a·n + b, clipped to 0 where that would be negative."""
        N = 0
        while a * N + b < 0:
            N += 1
        return cls(N, a, b, tuple(max(0, a * n + b) for n in range(N)))

    def succ(self) -> "EAFunction":
        return EAFunction(self.threshold, self.slope, self.intercept + 1,
                          tuple(v + 1 for v in self.exceptions))

    def to_json(self) -> dict:
        return {"threshold": self.threshold, "slope": self.slope,
                "intercept": self.intercept, "exceptions": list(self.exceptions)}


def eafunction_from_json(doc: dict) -> EAFunction:
    return EAFunction(int(doc.get("threshold", 0)), int(doc["slope"]), int(doc["intercept"]),
                      tuple(doc.get("exceptions", ())))


def _tail_set(f: EAFunction, g: EAFunction, rel) -> UPSet:
    """{n : rel(f(n), g(n))}.

    Past both thresholds the difference f - g is d·n + e, whose sign
    changes at most once, so past the crossing the relation is constant.
    """
    M = max(f.threshold, g.threshold)
    d = f.slope - g.slope
    e = f.intercept - g.intercept
    cross = M
    if d != 0:
        root = -e // d if d > 0 else e // (-d)
        cross = max(M, abs(root) + 2)
    return UPSet.from_predicate(lambda n: rel(f(n), g(n)), cross, 1)


def lt_set(f: EAFunction, g: EAFunction) -> UPSet:
    return _tail_set(f, g, lambda x, y: x < y)


def eq_set(f: EAFunction, g: EAFunction) -> UPSet:
    return _tail_set(f, g, lambda x, y: x == y)


def random_eafunction(rng: random.Random, max_threshold: int = 6, max_slope: int = 3,
                      max_intercept: int = 20) -> EAFunction:
    N = rng.randint(0, max_threshold)
    a = rng.randint(0, max_slope)
    b = rng.randint(-a * N if a else 0, max_intercept)
    return EAFunction(N, a, b, tuple(rng.randint(0, max_intercept) for _ in range(N)))


class SymbolicUltrapower:
    """ℕ^ℕ/U restricted to finitely many eventually affine functions."""

    def __init__(self, functions, U: MultiplesUltrafilter = U_MULTIPLES):
        self.U = U
        self.functions: list[EAFunction] = []
        self.class_of: list[int] = []
        self.reps: list[EAFunction] = []
        for f in functions:
            self.add(f)

    def add(self, f: EAFunction) -> int:
        for k, r in enumerate(self.reps):
            if self.equiv(f, r):
                self.functions.append(f)
                self.class_of.append(k)
                return k
        self.reps.append(f)
        self.functions.append(f)
        self.class_of.append(len(self.reps) - 1)
        return len(self.reps) - 1

    def equiv(self, f: EAFunction, g: EAFunction) -> bool:
        return eq_set(f, g) in self.U

    def less(self, f: EAFunction, g: EAFunction) -> bool:
        return lt_set(f, g) in self.U

    def j(self, k: int) -> EAFunction:
        return EAFunction.constant(k)

    def order_check(self) -> dict:
        """Trichotomy and transitivity over the stored classes."""
        R = self.reps
        tri = all(sum([self.less(f, g), self.equiv(f, g), self.less(g, f)]) == 1 for f in R for g in R)
        trans = all(not (self.less(f, g) and self.less(g, h)) or self.less(f, h)
                    for f in R for g in R for h in R)
        succ = all(self.less(f, f.succ()) for f in R)
        return {"classes": len(R), "trichotomy": tri, "transitive": trans,
                "successor_increases": succ, "ok": tri and trans and succ}

    def sorted_classes(self) -> list[EAFunction]:
        import functools
        return sorted(self.reps, key=functools.cmp_to_key(
            lambda f, g: -1 if self.less(f, g) else (1 if self.less(g, f) else 0)))


def nontriviality_witness(U: MultiplesUltrafilter = U_MULTIPLES, bound: int = 50) -> dict:
    """[id] differs from every j(m): {n : n = m} is finite, so not in U.

    Checked symbolically for m ≤ bound; the schema covers every m since
    each comparison set is a singleton.
    """
    M = SymbolicUltrapower([EAFunction.identity()], U)
    ident = EAFunction.identity()
    not_const = all(not M.equiv(ident, M.j(m)) for m in range(bound + 1))
    singletons = all(eq_set(ident, M.j(m)).equals(UPSet.finite([m])) for m in range(bound + 1))
    above = all(M.less(M.j(m), ident) for m in range(bound + 1))
    return {"witness": "identity", "not_a_constant": not_const, "comparison_sets_singletons": singletons,
            "above_every_constant": above, "checked_up_to": bound,
            "ok": not_const and singletons and above}


def meets_finite_partitions(U: MultiplesUltrafilter = U_MULTIPLES, samples: int = 200,
                            seed: int = 0) -> dict:
    """U picks exactly one block of every sampled finite UP partition of ℕ."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        p = rng.randint(1, 8)
        k = rng.randint(1, p)
        label = [rng.randrange(k) for _ in range(p)]
        blocks = [UPSet.residues(p, [r for r in range(p) if label[r] == i]) for i in range(k)]
        blocks = [b for b in blocks if not b.is_empty]
        if sum(b in U for b in blocks) != 1:
            bad += 1
    return {"samples": samples, "failures": bad, "ok": bad == 0}
