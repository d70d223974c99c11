import random

import pytest
from hypothesis import given, strategies as st

from boolult.kernel import (
    Poset, all_posets, is_dense_embedding, random_poset, ro_completion, ro_isomorphism, ro_oracle,
)
from boolult.kernel.poset import poset_from_json


def antichain_poset(n):
    return Poset(tuple(range(n)))


def chain_poset(n):
    return Poset(tuple(range(n)), frozenset((i, i + 1) for i in range(n - 1)))


@pytest.mark.parametrize("P,count", [
    (antichain_poset(2), 4),
    (chain_poset(2), 2),
    (antichain_poset(3), 8),
    (Poset(("t", "l", "r"), frozenset({("l", "t"), ("r", "t")})), 4),
])
def test_regular_open_counts(P, count):
    o = ro_oracle(P)
    c = ro_completion(P)
    assert len(o.regular_opens) == count == c.algebra.size
    assert ro_isomorphism(c, o) is not None


def test_chain_collapses_to_two_elements():
    c = ro_completion(chain_poset(4))
    assert c.algebra.n_atoms == 1
    assert not c.poset.is_separative()
    assert all(c.e(p).is_one for p in c.poset.nodes)


def test_fork_is_separative_and_dense():
    P = poset_from_json({"nodes": ["t", "l", "r"], "leq": [["l", "t"], ["r", "t"]]})
    c = ro_completion(P)
    assert P.is_separative() and is_dense_embedding(c)
    assert c.e("t").is_one and (c.e("l") & c.e("r")).is_zero


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        Poset((0, 1), frozenset({(0, 1), (1, 0)}))


def test_poset_counts():
    # labelled posets on n points: 1, 3, 19, 219
    assert [sum(1 for _ in all_posets(n)) for n in range(1, 5)] == [1, 3, 19, 219]


@pytest.mark.parametrize("n", range(1, 6))
def test_completion_matches_oracle_exhaustive(n):
    for P in all_posets(n):
        c, o = ro_completion(P), ro_oracle(P)
        assert ro_isomorphism(c, o) is not None
        assert is_dense_embedding(c)


@given(st.integers(0, 10_000))
def test_completion_matches_oracle_sampled_six(seed):
    P = random_poset(6, random.Random(seed))
    assert ro_isomorphism(ro_completion(P), ro_oracle(P)) is not None


@given(st.integers(2, 6), st.integers(0, 10_000))
def test_completion_preserves_order_and_incompatibility(n, seed):
    P = random_poset(n, random.Random(seed))
    c = ro_completion(P)
    for p in P.nodes:
        for q in P.nodes:
            if P.le(p, q):
                assert c.e(p) <= c.e(q)
            assert P.compatible(p, q) == (not (c.e(p) & c.e(q)).is_zero)
