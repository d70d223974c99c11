"""Ultimately periodic sets, a nonprincipal decidable ultrafilter, and
symbolic witnesses for the infinite phenomena."""
from .functions import (
    EAFunction, SymbolicUltrapower, eafunction_from_json, eq_set, lt_set, meets_finite_partitions,
    nontriviality_witness, random_eafunction,
)
from .upset import (
    U_MULTIPLES, MultiplesUltrafilter, UPSet, check_window, random_member, random_upset,
    upset_from_json,
)
from .witnesses import (
    SingletonSchema, Triangle, descent_check, illfoundedness_witness, rectangle_failure_demo,
    tail_chain_check, tails, witness_suite,
)
