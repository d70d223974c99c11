"""Machine-checked witnesses for the nonprincipal ultrafilter on UPSets.

Infinite objects (the antichain of singletons, the meet of all tails)
appear as schemas: a rule producing each member plus a proof obligation
checked symbolically, with a sampled pointwise check alongside.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .functions import EAFunction, SymbolicUltrapower, lt_set
from .upset import U_MULTIPLES, MultiplesUltrafilter, UPSet, random_member


@dataclass(frozen=True)
class SingletonSchema:
    """The maximal antichain {{n} : n ∈ ℕ}, never materialized."""

    def member(self, n: int) -> UPSet:
        return UPSet.finite([n])

    def check(self, U: MultiplesUltrafilter, bound: int) -> dict:
        # schema: {n} is finite, so its eventual pattern is empty and 0 is not in it
        schema_missed = UPSet.finite([0]).is_finite and not UPSet.finite([0]).pattern
        sampled_missed = all(self.member(n) not in U for n in range(bound))
        disjoint = all((self.member(a) & self.member(b)).is_empty
                       for a in range(bound) for b in range(a + 1, min(bound, a + 6)))
        covers = all(n in self.member(n) for n in range(bound))
        return {"missed_by_U": schema_missed and sampled_missed, "pairwise_disjoint": disjoint,
                "covers_every_n": covers, "sampled": bound,
                "ok": schema_missed and sampled_missed and disjoint and covers}


def tails(n: int) -> UPSet:
    return UPSet.tail(n)


def tail_chain_check(U: MultiplesUltrafilter, k: int) -> dict:
    """a_n = {m ≥ n}: each in U, nested, finite meets nonzero, total meet 0."""
    a = [tails(n) for n in range(k + 1)]
    in_u = all(s in U for s in a)
    nested = all(a[n + 1] <= a[n] for n in range(k))
    meet = UPSet.full()
    for s in a:
        meet = meet & s
    finite_meet_ok = meet.equals(a[k]) and not meet.is_empty
    # schema: m ∉ a_{m+1}, so no m survives every a_n
    meet_zero = all(m not in tails(m + 1) for m in range(k + 1))
    return {"length": k + 1, "all_in_U": in_u, "nested": nested,
            "finite_meets_nonzero": finite_meet_ok, "total_meet_zero": meet_zero,
            "countably_complete": False,
            "ok": in_u and nested and finite_meet_ok and meet_zero}


def descent_check(U: MultiplesUltrafilter, k: int) -> dict:
    """b_n = a_n is a descent: b_0 = ℕ, through U, meet 0; differences are singletons."""
    b = [tails(n) for n in range(k + 1)]
    starts = b[0].equals(UPSet.full())
    diffs = all((b[n] - b[n + 1]).equals(UPSet.finite([n])) for n in range(k))
    chain = tail_chain_check(U, k)
    ok = starts and diffs and chain["ok"]
    return {"starts_at_one": starts, "differences_are_singletons": diffs,
            "through_U": chain["all_in_U"], "meet_zero": chain["total_meet_zero"],
            "order_type": "omega", "ok": ok}


def witness_suite(U: MultiplesUltrafilter = U_MULTIPLES, bound: int = 50) -> dict:
    a5, a7 = tails(5), tails(7)
    small = a5 - a7
    examples = {
        "a5_in_U": a5 in U,
        "a5_minus_a7": sorted(small.prefix) if small.is_finite else None,
        "a5_minus_a7_in_U": small in U,
    }
    singles = SingletonSchema().check(U, bound)
    chain = tail_chain_check(U, 9)
    desc = descent_check(U, bound)
    spectrum = ["omega"] if desc["ok"] else []
    ok = (singles["ok"] and chain["ok"] and desc["ok"] and examples["a5_in_U"]
          and examples["a5_minus_a7"] == [5, 6] and not examples["a5_minus_a7_in_U"])
    return {"missed_antichain": singles, "zero_meet_chain": chain, "descent": desc,
            "descent_spectrum": spectrum, "examples": examples, "ok": ok}


def illfoundedness_witness(k: int, bound: int = 50, U: MultiplesUltrafilter = U_MULTIPLES) -> dict:
    """[id] > [id-1] > ... > [id-k], each above every j(m) for m ≤ bound."""
    if k < 1:
        raise ValueError("depth must be at least 1")
    chain = [EAFunction.affine(1, -i) for i in range(k + 1)]
    M = SymbolicUltrapower(chain, U)
    descending = all(M.less(chain[i + 1], chain[i]) for i in range(k))
    above = all(M.less(M.j(m), chain[-1]) for m in range(bound + 1))
    j_monotone = all(M.less(M.j(m), M.j(m + 1)) for m in range(bound))
    comparison_sets = [lt_set(chain[i + 1], chain[i]).to_json() for i in range(min(k, 3))]
    return {"depth": k, "chain": [f.to_json() for f in chain], "descending": descending,
            "above_standard": above, "standard_bound": bound, "j_order_preserving": j_monotone,
            "sample_comparison_sets": comparison_sets,
            "ok": descending and above and j_monotone}


# ---------------------------------------------------------------- rectangles

@dataclass(frozen=True)
class Triangle:
    """x = {(i, j) : i < j} ⊆ ℕ × ℕ, or its complement when ``upper`` is False."""
    upper: bool = True

    def __contains__(self, pt) -> bool:
        i, j = pt
        return (i < j) == self.upper

    def complement(self) -> "Triangle":
        return Triangle(not self.upper)

    def meets_rectangle(self, b: UPSet, c: UPSet):
        """A point of (b × c) ∩ self, or None.  Sides must be infinite."""
        if b.is_finite or c.is_finite:
            raise ValueError("rectangle sides are U-members and must be infinite")
        if self.upper:
            i = b.first_at_least(0)
            j = c.first_at_least(i + 1)
        else:
            j = c.first_at_least(0)
            i = b.first_at_least(j)
        if i is None or j is None:
            return None
        return (i, j)

    def section(self, i: int) -> UPSet:
        """{j : (i, j) ∈ self}."""
        return UPSet.tail(i + 1) if self.upper else UPSet.finite(range(i + 1))

    def cosection(self, j: int) -> UPSet:
        """{i : (i, j) ∈ self}."""
        return UPSet.finite(range(j)) if self.upper else UPSet.tail(j)


def rectangle_failure_demo(samples: int = 1000, seed: int = 0,
                           U: MultiplesUltrafilter = U_MULTIPLES, bound: int = 50) -> dict:
    if samples <= 0:
        return {"skipped": True, "notice": "rectangle demo skipped: samples=0", "ok": True}
    rng = random.Random(seed)
    x = Triangle()
    nx = x.complement()
    evens = UPSet.residues(2, [0])
    hits = {"evens_x_evens_meets_x": x.meets_rectangle(evens, evens),
            "evens_x_evens_meets_not_x": nx.meets_rectangle(evens, evens)}
    both = 0
    for _ in range(samples):
        b, c = random_member(rng, U), random_member(rng, U)
        p, q = x.meets_rectangle(b, c), nx.meets_rectangle(b, c)
        if p is not None and q is not None and p in x and q in nx \
                and p[0] in b and p[1] in c and q[0] in b and q[1] in c:
            both += 1
    # iterated product filter: {i : {j : (i,j) ∈ x} ∈ U} ∈ U
    rows = all(x.section(i) in U for i in range(bound))
    cols = any(x.cosection(j) in U for j in range(bound))
    # schema: every row is cofinite, every column finite
    x_in_product = rows
    x_in_dual = cols
    ok = (both == samples and hits["evens_x_evens_meets_x"] is not None
          and hits["evens_x_evens_meets_not_x"] is not None and x_in_product and not x_in_dual)
    return {"skipped": False, "samples": samples, "both_met": both,
            "examples": {k: list(v) if v else None for k, v in hits.items()},
            "x_in_U_times_U": x_in_product, "x_in_dual_product": x_in_dual,
            "x_in_rectangle_filter": False if both == samples else None,
            "ok": ok}
