import itertools

import pytest
from hypothesis import given, strategies as st

from boolult.fol import formula_sample
from boolult.kernel import (
    Algebra, Antichain, Ideal, Partition, Poset, iteration_algebra, product_algebra,
    product_pair, ro_oracle, set_partitions,
)
from boolult.names import Filter, check_pool, hf_of_rank_at_most
from boolult.ultra import (
    AntichainTree, Descent, Ultrafilter, antichains_mod, classical_iff_check,
    decompose_iteration, descent_spectrum, descents_exhaustive, disjointify,
    disjointify_exhaustive, dual_product_filter_contains, enumerate_ultrafilters,
    factor_map_check, generic_restriction_check, generates_ultrafilter, ideal_suite,
    induced_filter, induced_filter_as_filter, is_maximal_antichain_mod,
    iteration_ultrafilter, multi_splits, poset_diagnostics, product_filter_contains,
    projection_surjective, rectangle_filter_contains, relative_genericity,
    relativized_values_agree, restrict_to_subalgebra, swap, tree_path,
    tree_path_exhaustive, two_splits, verify_descent, weakly_decides,
)


# ---------------------------------------------------------------- subalgebras

def test_restriction_examples():
    C = Algebra(4)
    U = Ultrafilter.principal(C, 3)
    R = restrict_to_subalgebra(U, Partition(C, ((0, 1), (2, 3))))
    assert R.sub.n_atoms == 2 and R.U0.atom == 1
    R = restrict_to_subalgebra(U, Partition(C, ((0, 1, 2, 3),)))
    assert R.sub.n_atoms == 1 and R.U0.atom == 0
    assert generic_restriction_check(R)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_factor_maps_exhaustive(n):
    C = Algebra(n)
    phis = formula_sample(60, 3, seed=n)
    for blocks in set_partitions(list(range(n))):
        P = Partition(C, tuple(tuple(b) for b in blocks))
        for U in enumerate_ultrafilters(C):
            R = restrict_to_subalgebra(U, P)
            assert R.U0.atom == next(k for k, b in enumerate(P.blocks) if U.atom in b)
            rep = factor_map_check(R, check_pool(R.sub, 2), phis)
            assert rep.ok, rep.failures
            agree = relativized_values_agree(R, check_pool(R.sub, 2), phis[:20])
            assert agree["ok"] and agree["instances"] > 0


# ---------------------------------------------------------------- iterations

def test_iteration_round_trip():
    B0 = Algebra(2)
    it = iteration_algebra(B0, {0: Algebra(2), 1: Algebra(3)})
    seen = set()
    for U0 in enumerate_ultrafilters(B0):
        for U1 in enumerate_ultrafilters(it.fibers[U0.atom]):
            U = iteration_ultrafilter(it, U0, U1)
            V0, V1 = decompose_iteration(it, U)
            assert (V0.atom, V1.atom) == (U0.atom, U1.atom)
            assert all((it.embedding(b) in U) == (b in U0) for b in B0.elements())
            seen.add(U.atom)
    assert seen == set(range(it.algebra.n_atoms))
    for U in enumerate_ultrafilters(it.algebra):
        assert iteration_ultrafilter(it, *decompose_iteration(it, U)) == U


def test_trivial_fibers():
    B0 = Algebra(3)
    it = iteration_algebra(B0, lambda a: Algebra(1))
    for U0 in enumerate_ultrafilters(B0):
        U = iteration_ultrafilter(it, U0, Ultrafilter.principal(Algebra(1), 0))
        assert U.atom == U0.atom


# ---------------------------------------------------------------- products

@pytest.mark.parametrize("n0,n1", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_product_filters_exhaustive(n0, n1):
    B0, B1 = Algebra(n0), Algebra(n1)
    P, _, _ = product_algebra(B0, B1)
    Q, _, _ = product_algebra(B1, B0)
    for U0 in enumerate_ultrafilters(B0):
        for U1 in enumerate_ultrafilters(B1):
            pair = U0.atom * n1 + U1.atom
            for X in P.elements():
                want = bool(X.mask >> pair & 1)
                assert rectangle_filter_contains(X, P, U0, U1) == want
                assert product_filter_contains(X, U0, U1) == want
                assert dual_product_filter_contains(X, U0, U1) == want
                assert product_filter_contains(swap(X, B0, B1, Q), U1, U0) == want
            assert product_filter_contains(P.one, U0, U1)


def test_rectangles_are_rectangles():
    B0, B1 = Algebra(2), Algebra(2)
    P, _, _ = product_algebra(B0, B1)
    for b, c in itertools.product(B0.elements(), B1.elements()):
        r = product_pair(P, B0, B1, b, c)
        assert len(r.atoms) == len(b.atoms) * len(c.atoms)


# ---------------------------------------------------------------- relative genericity

def test_relative_genericity_examples():
    B = Algebra(4)
    top = Antichain(B, (B.one,))
    for U in enumerate_ultrafilters(B):
        for C in B.maximal_antichains():
            ok, pick = relative_genericity(U, top, C)
            assert ok and any(c in U for c in pick.values())
            assert relative_genericity(U, C, C)[0]
    halves = Antichain(B, (B.element([0, 1]), B.element([2, 3])))
    values = hf_of_rank_at_most(1)
    for U in enumerate_ultrafilters(B):
        r = classical_iff_check(B, U, halves, values)
        assert r.agree and r.generic_relative and r.refinements == 4


def test_projection_surjective_on_finite_algebras():
    B = Algebra(3)
    A = Antichain(B, (B.element([0, 1]), B.atom(2)))
    C = Antichain(B, tuple(B.atoms()))
    for U in enumerate_ultrafilters(B):
        assert projection_surjective(U, A, C, hf_of_rank_at_most(2))


# ---------------------------------------------------------------- posets

def test_antichain_poset_filters_are_ultra():
    P = Poset((0, 1, 2))
    for p in P.nodes:
        d = poset_diagnostics(P, P.upset(p))
        assert d.ro_ultra and d.decides_two and d.consistent


def test_fork_top_filter_is_not_ultra():
    P = Poset(("t", "l", "r"), frozenset({("l", "t"), ("r", "t")}))
    d = poset_diagnostics(P, frozenset({"t"}))
    assert not d.ro_ultra and not d.decides_two and d.consistent
    assert d.two_splits <= 8 and len(d.two_split_failures) >= 1
    for p in ("l", "r"):
        assert poset_diagnostics(P, P.upset(p)).ro_ultra


def test_single_node_poset():
    P = Poset(("p",))
    d = poset_diagnostics(P, frozenset({"p"}))
    assert d.ro_ultra and d.two_splits == 0 and d.consistent


def test_split_counts():
    P = Poset((0, 1, 2))
    A = frozenset(P.nodes)
    assert len(two_splits(P, A)) == 3
    assert len(multi_splits(P, A)) == 4
    F = frozenset({0})
    assert all(weakly_decides(P, F, s) for s in two_splits(P, A))


def test_poset_theorem_on_all_small_posets():
    from boolult.kernel import all_posets
    for n in range(1, 5):
        for P in all_posets(n):
            o = ro_oracle(P)
            for F in P.filters():
                d = poset_diagnostics(P, F, o)
                assert d.consistent
                # on a finite poset F is the cone above its least element
                assert d.ro_ultra == (sum(P.le(m, min(F, key=lambda q: len(P.cone(q))))
                                          for m in P.minimal_elements()) == 1)


def test_non_filter_rejected():
    P = Poset((0, 1))
    with pytest.raises(ValueError):
        poset_diagnostics(P, frozenset({0, 1}))


# ---------------------------------------------------------------- ideals

def test_zero_ideal_is_identity():
    B = Algebra(3)
    I = Ideal.principal(B, B.zero)
    for A in B.maximal_antichains():
        assert disjointify(I, A.elements) is not None
        assert tuple(sorted(e.mask for e in disjointify(I, A.elements))) == \
            tuple(sorted(e.mask for e in A.elements))


def test_disjointify_lifts_quotient_antichain():
    B = Algebra(3)
    I = Ideal.principal(B, B.atom(0))
    A = [B.element([0, 1]), B.element([0, 2])]
    assert is_maximal_antichain_mod(I, A)
    reps = disjointify(I, A)
    assert reps is not None and disjointify_exhaustive(I, A)
    assert all((a & b).is_zero for a, b in itertools.combinations(reps, 2))
    assert all(I.equivalent(r, a) for r, a in zip(reps, A))


def test_induced_filter_example():
    B = Algebra(3)
    I = Ideal.principal(B, B.atom(0))
    from boolult.kernel import quotient
    Q, proj = quotient(B, I)
    for q in range(Q.n_atoms):
        G = induced_filter_as_filter(I, Filter(Q, Q.atom(q)))
        assert G.is_ultra
        assert induced_filter(I, Filter(Q, Q.atom(q))) == {b.mask for b in G.members()}


def test_tree_path_examples():
    B = Algebra(2)
    I = Ideal.principal(B, B.zero)
    atoms = tuple(B.atoms())
    T = AntichainTree(I, ((B.one,), atoms, atoms))
    assert tree_path(T, B.one) is not None
    with pytest.raises(ValueError):
        AntichainTree(I, (atoms, (B.one,)))
    # modulo an atom, a branch can pass through something the ideal kills
    J = Ideal.principal(B, B.atom(0))
    T = AntichainTree(J, ((B.atom(1),), (B.one,), (B.atom(1),)))
    assert tree_path(T, B.atom(1)) == (B.atom(1), B.one, B.atom(1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ideal_suite_small(n):
    B = Algebra(n)
    for g in B.elements():
        if not g.is_one:
            assert ideal_suite(Ideal.principal(B, g), depth=3).ok


@given(st.integers(0, 14), st.data())
def test_tree_search_matches_oracle(gen, data):
    B = Algebra(4)
    I = Ideal.principal(B, B.from_mask(gen))
    level = antichains_mod(I)
    seq = [data.draw(st.sampled_from(level))]
    for _ in range(data.draw(st.integers(0, 3))):
        nxt = [L for L in level if all(any(I.below(c, a) for a in seq[-1]) for c in L)]
        seq.append(data.draw(st.sampled_from(nxt)))
    T = AntichainTree(I, tuple(seq))
    for a0 in T.levels[0]:
        assert (tree_path(T, a0) is not None) == tree_path_exhaustive(T, a0)


# ---------------------------------------------------------------- descents

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_finite_descent_spectrum_is_empty(n):
    B = Algebra(n)
    for U in enumerate_ultrafilters(B):
        assert descent_spectrum(U)["spectrum"] == []
        assert descents_exhaustive(U) == 0


def test_descent_checker():
    B = Algebra(3)
    U = Ultrafilter.principal(B, 2)
    chain = Descent((B.one, B.element([1, 2]), B.atom(2)))
    c = verify_descent(chain, U)
    assert c.through_U and c.descending and c.strict and not c.meet_zero and not c.is_descent
    assert [d.mask for d in chain.differences()] == [1, 2]
    to_zero = Descent((B.one, B.element([1, 2]), B.zero))
    assert not verify_descent(to_zero, U).through_U
