"""Formulas, parsing, and Boolean-valued semantics of finite structures."""
from .classical import ClassicalStructure, membership_structure
from .generate import formula_sample, random_formula
from .parser import FormulaSyntaxError, parse, to_text, tokenize
from .structure import (
    BValuedStructure, ClassicalModel, Fullness, LawReport, UnassignedVariableError,
    Violation, boolean_value, check_laws, fullness_witness, structure_from_json,
    ultraproduct_structure, value_table,
)
from .syntax import (
    SET_THEORY, And, Atom, Const, Eq, Exists, Forall, FuncEq, Iff, Implies, InV,
    Member, Not, Or, Signature, SignatureError, bound_vars, conj, depth, free_vars,
    is_bounded, quantifier_depth, relativize, rename_apart, substitute,
)
