"""Quotients by ultrafilters, Łoś checks, spanning functions, direct limits,
subalgebras, products, poset filters, ideals and descents."""
from .descent import Descent, DescentCheck, descent_spectrum, descents_exhaustive, verify_descent
from .dirlim import (
    DirectLimitSystem, ExtenderRep, FactorUltrapower, InducedUltrafilter, LimitReport,
    closure_under_refinement, extender_rep, induced_ultrafilter, selector_check,
)
from .ideals import (
    AntichainTree, IdealSuiteReport, all_trees, antichains_mod, disjointify, iter_trees,
    disjointify_exhaustive, ideal_suite, induced_filter, induced_filter_as_filter,
    is_maximal_antichain_mod, tree_path, tree_path_exhaustive,
)
from .posets import (
    PosetDiagnostics, SplitAntichain, generates_ultrafilter, multi_splits, poset_diagnostics,
    two_splits, weakly_decides,
)
from .quotient import (
    TRIVIAL_DEGREE, LosReport, QuotientModel, TrivialityReport, degree_of_genericity,
    fiber_check, generic_triviality_check, los_check, quotient_model, symbolic_triviality_check,
)
from .relative import (
    ClassicalIffReport, classical_iff_check, projection_surjective, relative_genericity,
)
from .spanning import (
    PresentationReport, SpanningFunction, all_spanning_functions, od_equiv,
    open_dense_extension, presentations_iso, sf_equiv, sf_from_name, sf_los, sf_member,
    sf_name, sf_reduce,
)
from .subalg import (
    FactorMapReport, Restriction, decompose_iteration, dual_product_filter_contains,
    factor_map_check, generic_restriction_check, iteration_ultrafilter,
    product_filter_contains, rectangle_filter_contains, relativized_values_agree,
    restrict_to_subalgebra, swap,
)
from .ultrafilter import Ultrafilter, enumerate_ultrafilters, ultrafilter_from_json
