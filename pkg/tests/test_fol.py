import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boolult.fol import (
    And, Atom, BValuedStructure, ClassicalModel, ClassicalStructure, Eq, Exists, Forall,
    FormulaSyntaxError, Iff, Implies, Member, Not, Or, Signature, SignatureError,
    UnassignedVariableError, boolean_value, check_laws, depth, formula_sample, free_vars,
    fullness_witness, parse, random_formula, rename_apart, structure_from_json, substitute,
    to_text, ultraproduct_structure, value_table,
)
from boolult.kernel import Algebra

RAB = Signature(relations=(("R", 2),))


# ---------------------------------------------------------------- parsing

def test_parse_examples():
    assert parse("exists x. x = y") == Exists("x", Eq("x", "y"))
    assert parse("!(R(a,b) & a = b)", RAB) == Not(And(Atom("R", ("a", "b")), Eq("a", "b")))
    assert parse("forall x. exists y. x in y") == Not(Exists("x", Not(Exists("y", Member("x", "y")))))


def test_sugar_desugars_to_primitives():
    a, b = Eq("x", "y"), Member("x", "y")
    assert parse("x = y | x in y") == Or(a, b) == Not(And(Not(a), Not(b)))
    assert parse("x = y -> x in y") == Implies(a, b) == Not(And(a, Not(b)))
    assert parse("x in V") == Atom("V", ("x",))
    assert parse("exists x. x in y @Vcheck") == Exists("x", And(Atom("V", ("x",)), Member("x", "y")))


@pytest.mark.parametrize("src,pos", [
    ("exists x x = y", 9),
    ("x = ", 4),
    ("(x in y", 7),
    ("x in y)", 6),
])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(FormulaSyntaxError) as e:
        parse(src)
    assert e.value.position == pos


def test_unknown_symbol_and_arity():
    with pytest.raises(SignatureError):
        parse("Q(x)", RAB)
    with pytest.raises(SignatureError):
        parse("R(x)", RAB)


@given(st.integers(0, 10_000), st.integers(0, 4))
def test_printer_round_trip(seed, d):
    phi = random_formula(random.Random(seed), d, with_const=True)
    assert parse(to_text(phi)) == phi


# ---------------------------------------------------------------- helpers

def random_classical(n, rng, with_v=True):
    rel = np.array([[rng.random() < 0.4 for _ in range(n)] for _ in range(n)], dtype=bool)
    v = np.array([rng.random() < 0.6 for _ in range(n)], dtype=bool)
    rels = {"in": rel, "V": v} if with_v else {"in": rel}
    return ClassicalStructure(n, rels)


def lift_two_valued(C):
    """The same structure as a Boolean-valued one over the 1-atom algebra."""
    B = Algebra(1)
    E = np.eye(C.size, dtype=np.int64)
    rels = {r: T.astype(np.int64) for r, T in C.relations.items()}
    return BValuedStructure(B, tuple(range(C.size)), E, rels)


# ---------------------------------------------------------------- semantics

@pytest.mark.parametrize("n", [1, 2, 3])
def test_one_atom_matches_tarski_exhaustive(n):
    rng = random.Random(n)
    phis = formula_sample(150, max_depth=3, seed=n)
    for _ in range(8):
        C = random_classical(n, rng)
        S = lift_two_valued(C)
        for phi in phis:
            fv = sorted(free_vars(phi))
            assert np.array_equal(value_table(S, phi, fv).astype(bool), C.truth_table(phi, fv))


def test_recursive_and_tabular_tarski_agree():
    rng = random.Random(7)
    C = random_classical(3, rng)
    for phi in formula_sample(80, max_depth=3, seed=7):
        fv = sorted(free_vars(phi))
        T = C.truth_table(phi, fv)
        for args in itertools.product(range(3), repeat=len(fv)):
            assert bool(T[args]) == C.satisfies(phi, dict(zip(fv, args)))


@given(st.integers(0, 10_000))
def test_alpha_renaming_and_sugar_stable(seed):
    rng = random.Random(seed)
    S = ultra_example(rng)
    phi = random_formula(rng, 3, variables=("x", "y"), with_v=False)
    fv = sorted(free_vars(phi))
    base = value_table(S, phi, fv)
    assert np.array_equal(base, value_table(S, rename_apart(phi), fv))
    # reading the same meaning through the sugar layer
    ors = Or(Not(phi), Not(phi))
    assert np.array_equal(value_table(S, Not(ors), fv), base)
    fa = Forall("w", phi) if "w" not in fv else phi
    assert np.array_equal(value_table(S, fa, fv), base)


def ultra_example(rng, factors=3, size=3, names=4):
    models = []
    for _ in range(factors):
        rel = np.array([[rng.random() < 0.5 for _ in range(size)] for _ in range(size)], dtype=bool)
        models.append(ClassicalModel(size, {"in": rel}))
    tuples = sorted({tuple(rng.randrange(size) for _ in range(factors)) for _ in range(names)})
    return ultraproduct_structure(models, tuples)


@given(st.integers(0, 10_000))
def test_ultraproduct_fibers(seed):
    """⟦φ(f)⟧ = {i : M_i ⊨ φ(f(i))} whenever the names exhaust each factor."""
    rng = random.Random(seed)
    size, factors = 2, 2
    models = []
    for _ in range(factors):
        rel = np.array([[rng.random() < 0.5 for _ in range(size)] for _ in range(size)], dtype=bool)
        models.append(ClassicalModel(size, {"in": rel}))
    tuples = list(itertools.product(range(size), repeat=factors))
    S = ultraproduct_structure(models, tuples)
    assert check_laws(S).ok
    phi = random_formula(rng, 3, variables=("x", "y"), with_v=False)
    fv = sorted(free_vars(phi))
    T = value_table(S, phi, fv)
    fibers = [ClassicalStructure(size, {"in": m.relations["in"]}).truth_table(phi, fv) for m in models]
    for args in itertools.product(range(len(tuples)), repeat=len(fv)):
        want = sum(1 << i for i in range(factors)
                   if fibers[i][tuple(tuples[a][i] for a in args)])
        assert int(T[args]) == want


def test_equality_axiom_has_value_one():
    rng = random.Random(3)
    S = ultra_example(rng)
    assert check_laws(S).ok
    for body, moved in [("x in z", "y in z"), ("z in x", "z in y"),
                        ("exists w. w in x & x in z", "exists w. w in y & y in z")]:
        phi = parse(f"forall x. forall y. forall z. (x = y & ({body})) -> ({moved})")
        assert boolean_value(S, phi).is_one


def test_boolean_value_examples():
    S = ultra_example(random.Random(1))
    s = S.names[0]
    assert boolean_value(S, parse("x = x"), {"x": s}).is_one
    assert boolean_value(S, parse("x in x & !(x in x)"), {"x": s}).is_zero
    with pytest.raises(UnassignedVariableError):
        boolean_value(S, parse("x in y"), {"x": s})


# ---------------------------------------------------------------- laws

def _tiny(atoms, E, rels=None, funs=None):
    B = Algebra(atoms)
    n = E.shape[0]
    return BValuedStructure(B, tuple(f"s{i}" for i in range(n)), E.astype(np.int64),
                            rels or {}, funs or {})


def test_laws_single_name_passes():
    assert check_laws(_tiny(1, np.array([[1]]))).ok


def test_laws_reflexivity_violation():
    r = check_laws(_tiny(2, np.array([[1, 0], [0, 3]])))
    assert r.laws_failed() == ["reflexivity"]
    assert r.violations[0].witness == (0,)


def test_laws_symmetry_transitivity_congruence():
    E = np.array([[3, 1, 0], [0, 3, 1], [0, 1, 3]])
    assert {"symmetry", "transitivity"} <= set(check_laws(_tiny(2, E)).laws_failed())
    E = np.array([[3, 3], [3, 3]])
    P = np.array([1, 0])
    r = check_laws(_tiny(2, E, {"P": P}))
    assert r.laws_failed() == ["congruence[P]"]


def test_function_laws():
    # f with graph T[y, s]: totality fails when no y takes s
    E = np.eye(2, dtype=np.int64) * 3
    T = np.array([[3, 0], [0, 0]])
    assert "function-totality[f]" in check_laws(_tiny(2, E, funs={"f": T})).laws_failed()
    T = np.array([[3, 3], [3, 0]])
    assert "function-functionality[f]" in check_laws(_tiny(2, E, funs={"f": T})).laws_failed()
    T = np.array([[3, 0], [0, 3]])
    assert check_laws(_tiny(2, E, funs={"f": T})).ok


def test_law_violating_structure_still_evaluates():
    S = _tiny(2, np.array([[1, 0], [0, 3]]))
    assert boolean_value(S, parse("x = x"), {"x": "s0"}).mask == 1


def test_structure_json_reader():
    S = structure_from_json({
        "atoms": 2, "names": ["a", "b"],
        "relations": {"P": {"arity": 1, "rows": [["a", [0]], ["b", [0, 1]]]}},
    })
    assert S.relations["P"].tolist() == [1, 3]
    assert S.equality.tolist() == [[3, 0], [0, 3]]
    assert S.signature().relation_arity("P") == 1


# ---------------------------------------------------------------- fullness

def test_fullness_examples():
    B = Algebra(2)
    E = np.eye(2, dtype=np.int64) * 3
    S = BValuedStructure(B, ("s0", "s1"), E, {"P": np.array([1, 2])})
    f = fullness_witness(S, parse("P(x)", S.signature()), "x")
    assert not f.full and f.join.is_one
    S2 = BValuedStructure(B, ("s0", "s1"), E, {"P": np.array([1, 3])})
    f2 = fullness_witness(S2, parse("P(x)", S2.signature()), "x")
    assert f2.full and f2.witness == "s1"


@given(st.integers(0, 10_000))
def test_two_valued_structures_are_full(seed):
    rng = random.Random(seed)
    S = lift_two_valued(random_classical(3, rng))
    phi = random_formula(rng, 3, variables=("x", "y"))
    f = fullness_witness(S, phi, "x", {"y": 0} if "y" in free_vars(phi) else {})
    assert f.full
