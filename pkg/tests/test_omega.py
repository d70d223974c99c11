import random

import pytest
from hypothesis import given, strategies as st

from boolult.omega import (
    U_MULTIPLES, EAFunction, SymbolicUltrapower, Triangle, UPSet, check_window,
    descent_check, eafunction_from_json, eq_set, illfoundedness_witness, lt_set,
    meets_finite_partitions, nontriviality_witness, random_eafunction, random_member,
    random_upset, rectangle_failure_demo, tail_chain_check, upset_from_json, witness_suite,
)

seeds = st.integers(0, 2**32 - 1)


def members(S, window):
    return {n for n in range(window) if n in S}


# ---------------------------------------------------------------- UPSets

@given(seeds)
def test_boolean_operations_pointwise(seed):
    rng = random.Random(seed)
    a, b = random_upset(rng), random_upset(rng)
    w = check_window(a, b)
    A, Bm = members(a, w), members(b, w)
    assert members(a & b, w) == A & Bm
    assert members(a | b, w) == A | Bm
    assert members(a - b, w) == A - Bm
    assert members(~a, w) == set(range(w)) - A
    assert (a <= b) == all(n in b for n in range(w) if n in a)


@given(seeds)
def test_canonical_form(seed):
    rng = random.Random(seed)
    a = random_upset(rng)
    # rewrite with a doubled period and a longer threshold: same set, same canonical form
    N, p = a.threshold + 3, a.period * 2
    b = UPSet(N, p, frozenset(r for r in range(p) if (N + (r - N) % p) in a),
              frozenset(n for n in range(N) if n in a))
    assert b.normalize() == a.normalize() and a.equals(b)
    assert upset_from_json(a.to_json()).equals(a)


def test_upset_examples():
    assert members(UPSet.tail(5) - UPSet.tail(7), 20) == {5, 6}
    assert (UPSet.residues(2, [0]) & UPSet.residues(3, [0])).equals(UPSet.residues(6, [0]))
    assert UPSet.finite([]).is_empty and UPSet.full().equals(~UPSet.empty())
    assert UPSet.residues(4, [1]).first_at_least(6) == 9
    with pytest.raises(ValueError):
        UPSet(2, 3, frozenset({3}), frozenset())


# ---------------------------------------------------------------- the multiples ultrafilter

def test_multiples_ultrafilter_examples():
    U = U_MULTIPLES
    assert UPSet.tail(5) in U
    assert UPSet.tail(5) - UPSet.tail(7) not in U
    assert UPSet.residues(2, [0]) in U and UPSet.residues(2, [1]) not in U
    assert all(UPSet.finite([n]) not in U for n in range(100))
    assert UPSet.full() in U and UPSet.empty() not in U


@given(seeds)
def test_ultrafilter_laws(seed):
    rng = random.Random(seed)
    U = U_MULTIPLES
    a, b = random_upset(rng), random_upset(rng)
    assert (a in U) != (~a in U)
    assert ((a & b) in U) == (a in U and b in U)
    assert ((a | b) in U) == (a in U or b in U)
    if a in U and a <= b:
        assert b in U
    assert (a in U) == U.members_oracle(a)
    if a.is_finite:
        assert a not in U


def test_homomorphism_sweep():
    rng = random.Random(0)
    U = U_MULTIPLES
    for _ in range(10_000):
        a, b = random_upset(rng), random_upset(rng)
        assert ((a & b) in U) == ((a in U) and (b in U))
        assert (~a in U) == (a not in U)


def test_finite_partitions_are_met():
    assert meets_finite_partitions(samples=500)["ok"]


# ---------------------------------------------------------------- functions

def test_eafunction_basics():
    f = EAFunction.affine(1, -3)
    assert [f(n) for n in range(6)] == [0, 0, 0, 0, 1, 2]
    assert eafunction_from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        EAFunction(1, 1, 0, ())


@given(seeds)
def test_comparison_sets_are_finite_or_cofinite_and_pointwise(seed):
    rng = random.Random(seed)
    f, g = random_eafunction(rng), random_eafunction(rng)
    for S, rel in ((lt_set(f, g), lambda x, y: x < y), (eq_set(f, g), lambda x, y: x == y)):
        assert S.period == 1
        w = check_window(S) + 50
        assert all((n in S) == rel(f(n), g(n)) for n in range(w))


def test_order_examples():
    M = SymbolicUltrapower([])
    ident = EAFunction.identity()
    assert M.less(M.j(3), ident)
    assert M.less(EAFunction.affine(1, -1), ident)
    assert M.less(EAFunction.affine(1, 100), EAFunction.affine(2, 0))
    assert lt_set(EAFunction.affine(1, 100), EAFunction.affine(2, 0)).equals(UPSet.tail(101))
    assert M.equiv(EAFunction(3, 1, 0, (7, 7, 7)), ident)


def test_symbolic_ultrapower_is_a_linear_order():
    rng = random.Random(4)
    M = SymbolicUltrapower([random_eafunction(rng) for _ in range(40)])
    assert M.order_check()["ok"]
    xs = M.sorted_classes()
    assert all(M.less(a, b) for a, b in zip(xs, xs[1:]))


def test_nontriviality():
    w = nontriviality_witness(bound=50)
    assert w["ok"]


# ---------------------------------------------------------------- witnesses

def test_witness_suite_examples():
    w = witness_suite()
    assert w["ok"]
    assert w["examples"] == {"a5_in_U": True, "a5_minus_a7": [5, 6], "a5_minus_a7_in_U": False}
    assert w["descent_spectrum"] == ["omega"]


def test_tail_chain_and_descent():
    c = tail_chain_check(U_MULTIPLES, 9)
    assert c["ok"] and c["length"] == 10 and not c["countably_complete"]
    assert descent_check(U_MULTIPLES, 30)["ok"]


@pytest.mark.parametrize("k", [1, 3, 10])
def test_illfounded_chain(k):
    w = illfoundedness_witness(k, bound=20)
    assert w["ok"] and len(w["chain"]) == k + 1


def test_illfounded_chain_points_below():
    chain = [EAFunction.affine(1, -i) for i in range(11)]
    for i in range(10):
        S = lt_set(chain[i + 1], chain[i])
        assert S.equals(UPSet.tail(i + 1)) and S in U_MULTIPLES


def test_triangle_geometry():
    x = Triangle()
    evens = UPSet.residues(2, [0])
    assert x.meets_rectangle(evens, evens) == (0, 2)
    assert x.complement().meets_rectangle(evens, evens) == (0, 0)
    assert (2, 4) in x and (4, 2) in x.complement()
    assert x.section(3).equals(UPSet.tail(4)) and x.cosection(3).equals(UPSet.finite([0, 1, 2]))


@given(seeds)
def test_every_rectangle_meets_both_sides(seed):
    rng = random.Random(seed)
    b, c = random_member(rng), random_member(rng)
    x = Triangle()
    p, q = x.meets_rectangle(b, c), x.complement().meets_rectangle(b, c)
    assert p in x and q not in x
    assert p[0] in b and p[1] in c and q[0] in b and q[1] in c


def test_rectangle_demo():
    r = rectangle_failure_demo(samples=1000)
    assert r["ok"] and r["both_met"] == 1000
    assert r["x_in_U_times_U"] and not r["x_in_dual_product"]
    s = rectangle_failure_demo(samples=0)
    assert s["skipped"] and s["notice"] == "rectangle demo skipped: samples=0"
