import itertools
import random

import pytest
from hypothesis import given, strategies as st

from boolult.fol import free_vars, is_bounded, membership_structure, parse, relativize
from boolult.fol.generate import formula_sample, random_formula
from boolult.kernel import Algebra, Antichain, SizeGuardError
from boolult.names import (
    EMPTY, BVSession, Filter, HFSet, Name, NamePool, all_filters, as_check, bv_atomic,
    bv_formula, check_name, check_pool, element_check, element_code, empty_name,
    generic_name, hf, hf_of_rank_at_most, mix, padded_empty_name, powerset_name,
    random_name, rank_check, reference_value, separation_name, standard_pool,
    two_valued_mixes_pool, val,
)

ONE = hf(EMPTY)


def names_strategy(B, depth=2):
    """Random names of rank ≤ depth over B."""
    @st.composite
    def build(draw):
        layer = [empty_name(B)]
        for _ in range(depth):
            k = draw(st.integers(0, 3))
            entries = [(draw(st.sampled_from(layer)), draw(st.integers(0, B.full_mask))) for _ in range(k)]
            layer = layer + [Name(B, entries)]
        return layer[-1]
    return build()


# ---------------------------------------------------------------- HF sets and check names

def test_hf_rank_and_universe():
    assert EMPTY.rank == 0 and ONE.rank == 1 and hf(EMPTY, ONE).rank == 2
    assert [len(hf_of_rank_at_most(k)) for k in range(4)] == [1, 2, 4, 16]


def test_check_name_examples():
    B = Algebra(2)
    assert check_name(EMPTY, B) == empty_name(B)
    assert check_name(ONE, B) == Name(B, [(empty_name(B), B.full_mask)])
    for x in hf_of_rank_at_most(3):
        assert check_name(x, B).rank == x.rank
        assert as_check(check_name(x, B)) == x


@pytest.mark.parametrize("rank", [2, 3])
def test_check_equality_is_two_valued(rank):
    B = Algebra(2)
    s = BVSession(B)
    U = hf_of_rank_at_most(rank)
    for x, y in itertools.product(U, repeat=2):
        assert s.equal(check_name(x, B), check_name(y, B)) == (B.full_mask if x == y else 0)
        assert s.member(check_name(x, B), check_name(y, B)) == (B.full_mask if x in y else 0)


def test_atomic_examples():
    B = Algebra(2)
    e = empty_name(B)
    for b in B.elements():
        sigma = Name(B, [(e, b.mask)])
        assert bv_atomic(e, sigma, "in") == b
    tau = Name(B, [(e, 1), (Name(B, [(e, 2)]), 3)])
    assert bv_atomic(tau, tau, "eq").is_one
    assert bv_atomic(e, tau, "sub").is_one


@given(st.data())
def test_memoized_matches_reference(data):
    B = Algebra(data.draw(st.integers(1, 3)))
    t = data.draw(names_strategy(B))
    u = data.draw(names_strategy(B))
    s = BVSession(B)
    for rel in ("in", "eq", "sub"):
        assert bv_atomic(t, u, rel, s).mask == reference_value(t, u, rel)


@given(st.data())
def test_equality_laws_on_names(data):
    B = Algebra(2)
    t, u, w = (data.draw(names_strategy(B)) for _ in range(3))
    s = BVSession(B)
    assert s.equal(t, u) == s.equal(u, t)
    assert s.equal(t, u) & s.equal(u, w) & ~s.equal(t, w) & B.full_mask == 0
    assert s.equal(t, u) & s.member(t, w) & ~s.member(u, w) & B.full_mask == 0


# ---------------------------------------------------------------- formulas over pools

def test_check_in_vcheck_is_one():
    B = Algebra(2)
    pool = two_valued_mixes_pool(B)
    for x in hf_of_rank_at_most(2):
        assert bv_formula(parse("x in V"), {"x": check_name(x, B)}, pool).is_one


@pytest.mark.parametrize("atoms", [1, 2])
def test_relativized_truth_matches_hf(atoms):
    """V ⊨ φ[x⃗] iff ⟦φ^V̌(x̌⃗)⟧ = 1, with the classical side on the same HF stage."""
    B = Algebra(atoms)
    dom = hf_of_rank_at_most(2)
    C = membership_structure(dom, lambda x, y: x in y)
    pool = two_valued_mixes_pool(B)
    phis = formula_sample(120, max_depth=3, seed=atoms, with_v=False)
    for phi in phis:
        fv = sorted(free_vars(phi))
        truth = C.truth_table(phi, fv)
        rel = relativize(phi)
        for args in itertools.product(range(len(dom)), repeat=len(fv)):
            v = bv_formula(rel, {k: check_name(dom[a], B) for k, a in zip(fv, args)}, pool)
            assert v.is_one == bool(truth[args])
            assert v.is_one or v.is_zero


def test_vcheck_is_transitive_on_pool():
    B = Algebra(2)
    pool = standard_pool(B, hf_rank=2, mixes=4, extras=4, seed=1)
    phi = parse("forall x. forall y. (x in V & y in x) -> y in V")
    assert bv_formula(phi, {}, pool).is_one


def test_mixture_of_checks_is_in_vcheck():
    B = Algebra(3)
    A = Antichain(B, (B.element([0]), B.element([1, 2])))
    tau = mix(A, [check_name(EMPTY, B), check_name(ONE, B)])
    pool = check_pool(B).extended([tau])
    s = pool.session
    join = 0
    for x in hf_of_rank_at_most(2):
        join |= s.equal(tau, check_name(x, B))
    assert join == B.full_mask
    assert bv_formula(parse("x in V"), {"x": tau}, pool).is_one


def test_bounded_formulas_stable_under_pool_growth():
    B = Algebra(2)
    small = check_pool(B, 2)
    big = standard_pool(B, hf_rank=2, mixes=6, extras=6, seed=3)
    phis = [parse(s) for s in (
        "exists w. w in x & w = y",
        "exists w. w in x & !(exists u. u in w & u = y)",
        "!(exists w. w in x & !(w in y))",
    )]
    assert all(is_bounded(p) for p in phis)
    for x, y in itertools.product(hf_of_rank_at_most(2), repeat=2):
        a = {"x": check_name(x, B), "y": check_name(y, B)}
        for phi in phis:
            assert bv_formula(phi, a, small) == bv_formula(phi, a, big)


def test_existential_values_grow_with_pool():
    B = Algebra(2)
    small = check_pool(B, 1)
    big = two_valued_mixes_pool(B)
    phi = parse("exists w. x in w & !(w in V)")
    for x in hf_of_rank_at_most(1):
        a = {"x": check_name(x, B)}
        assert bv_formula(phi, a, small) <= bv_formula(phi, a, big)
    # a name outside V̌'s reach only appears in the larger pool
    phi = parse("exists w. !(w in V)")
    assert bv_formula(phi, {}, small).is_zero


# ---------------------------------------------------------------- mixing

def test_mixing_examples():
    B = Algebra(2)
    e, one = check_name(EMPTY, B), check_name(ONE, B)
    tau = mix(Antichain(B, (B.one,)), [one])
    assert bv_atomic(tau, one, "eq").is_one
    tau = mix(Antichain(B, (B.atom(0), B.atom(1))), [e, one])
    assert bv_atomic(tau, e, "eq") == B.atom(0)
    assert bv_atomic(tau, one, "eq") == B.atom(1)
    same = mix(Antichain(B, (B.atom(0), B.atom(1))), [one, one])
    assert bv_atomic(same, one, "eq").is_one


def test_mix_rejects_non_antichain():
    B = Algebra(2)
    with pytest.raises(ValueError):
        mix([B.atom(0), B.one], [empty_name(B), empty_name(B)])


@given(st.data())
def test_mixing_bounds(data):
    n = data.draw(st.integers(1, 4))
    B = Algebra(n)
    perm = data.draw(st.permutations(range(n)))
    cuts = sorted(data.draw(st.sets(st.integers(1, n - 1), max_size=n - 1))) if n > 1 else []
    blocks = [perm[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    A = Antichain(B, tuple(B.element(b) for b in blocks))
    vals = hf_of_rank_at_most(2)
    chosen = [data.draw(st.sampled_from(vals)) for _ in blocks]
    names = [check_name(x, B) for x in chosen]
    tau = mix(A, names)
    s = BVSession(B)
    for a, t, x in zip(A.elements, names, chosen):
        v = s.equal(tau, t)
        assert a.mask & ~v == 0
        if len(set(chosen)) == len(chosen):
            assert v == a.mask


# ---------------------------------------------------------------- Ġ and val

@pytest.mark.parametrize("n", [1, 2, 3])
def test_generic_name_values(n):
    B = Algebra(n)
    G = generic_name(B)
    s = BVSession(B)
    for b in B.elements():
        assert s.member(element_check(b), G) == b.mask


def test_val_examples():
    B = Algebra(2)
    for F in all_filters(B):
        for x in hf_of_rank_at_most(3):
            assert val(check_name(x, B), F) == x
        assert val(empty_name(B), F) == EMPTY
    G = generic_name(B)
    for z in range(2):
        U = Filter(B, B.atom(z))
        assert val(G, U) == HFSet(element_code(b) for b in B.elements() if z in b.atoms)


@given(st.data())
def test_val_is_natural_under_principal_ultrafilters(data):
    """val(τ, U_z) is τ read at the point z, computed independently."""
    B = Algebra(3)
    t = data.draw(names_strategy(B, depth=3))
    z = data.draw(st.integers(0, 2))

    def at(name):
        return HFSet(at(s) for s, m in name.entries if m >> z & 1)

    assert val(t, Filter(B, B.atom(z))) == at(t)


def test_rank_check_examples():
    B = Algebra(2)
    r = rank_check(check_name(hf(EMPTY, ONE), B))
    assert r.ok and r.value_ranks == (2, 2) and not r.converse_fails
    r = rank_check(padded_empty_name(B, 3))
    assert r.name_rank == 3 and r.value_ranks == (0, 0) and r.ok and r.converse_fails
    r = rank_check(empty_name(B))
    assert r.ok and r.value_ranks == (0, 0)


@given(st.data())
def test_rank_never_increases(data):
    B = Algebra(2)
    assert rank_check(data.draw(names_strategy(B, depth=3))).ok


# ---------------------------------------------------------------- power set and separation

def _powerset(x):
    ms = x.sorted()
    return HFSet(HFSet(c) for k in range(len(ms) + 1) for c in itertools.combinations(ms, k))


@pytest.mark.parametrize("atoms,x", [(1, EMPTY), (1, ONE), (2, EMPTY), (2, ONE), (2, hf(EMPTY, ONE)), (1, hf(EMPTY, ONE))])
def test_powerset_name_via_val(atoms, x):
    B = Algebra(atoms)
    P = powerset_name(check_name(x, B))
    for z in range(atoms):
        assert val(P, Filter(B, B.atom(z))) == _powerset(x)


def test_powerset_examples_and_guard():
    B = Algebra(1)
    assert val(powerset_name(check_name(ONE, B)), Filter(B, B.one)) == hf(EMPTY, ONE)
    big = check_name(hf_of_rank_at_most(3)[-1], Algebra(4))
    with pytest.raises(SizeGuardError):
        powerset_name(big)


def test_powerset_of_a_mixture():
    B = Algebra(2)
    tau = mix(Antichain(B, (B.atom(0), B.atom(1))), [check_name(EMPTY, B), check_name(ONE, B)])
    P = powerset_name(tau)
    assert val(P, Filter(B, B.atom(0))) == _powerset(EMPTY)
    assert val(P, Filter(B, B.atom(1))) == _powerset(ONE)


def test_separation_name_via_val():
    B = Algebra(2)
    x = hf(EMPTY, ONE, hf(ONE))
    pool = check_pool(B, 2).extended([], [x])
    tau = check_name(x, B)
    for src, keep in [("false", set()), ("exists w. w in v", {ONE, hf(ONE)}),
                      ("!(exists w. w in v)", {EMPTY}), ("v = v", set(x.members))]:
        S = separation_name(tau, parse(src), "v", pool)
        for z in range(2):
            assert val(S, Filter(B, B.atom(z))) == HFSet(keep)


def test_separation_of_a_mixture():
    B = Algebra(2)
    tau = mix(Antichain(B, (B.atom(0), B.atom(1))), [check_name(hf(EMPTY), B), check_name(hf(EMPTY, ONE), B)])
    pool = check_pool(B, 2).extended([tau])
    S = separation_name(tau, parse("exists w. w in v"), "v", pool)
    assert val(S, Filter(B, B.atom(0))) == EMPTY
    assert val(S, Filter(B, B.atom(1))) == hf(ONE)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generic_name_is_an_ultrafilter_clause_by_clause(n):
    """Each defining clause of "Ġ is an ultrafilter on B̌" has value 1."""
    B = Algebra(n)
    G = generic_name(B)
    s = BVSession(B)
    full = B.full_mask
    Bcheck = check_name(HFSet(element_code(b) for b in B.elements()), B)
    g = {b: s.member(element_check(b), G) for b in B.elements()}
    assert s.subset(G, Bcheck) == full
    assert g[B.one] == full and g[B.zero] == 0
    for b, c in itertools.product(B.elements(), repeat=2):
        if b <= c:
            assert (full ^ g[b]) | g[c] == full            # upward closed
        assert (full ^ (g[b] & g[c])) | g[b & c] == full   # meet closed
    for b in B.elements():
        assert g[b] | g[~b] == full                        # decides every b
