"""Restricting ultrafilters to block subalgebras, iterations, and products."""
from boolult.fol import formula_sample
from boolult.kernel import Algebra, Partition, iteration_algebra, product_algebra
from boolult.names import two_valued_mixes_pool
from boolult.ultra import (
    Ultrafilter, decompose_iteration, dual_product_filter_contains, factor_map_check,
    iteration_ultrafilter, product_filter_contains, rectangle_filter_contains,
    relativized_values_agree, restrict_to_subalgebra,
)

C = Algebra(4)
U = Ultrafilter.principal(C, 2)
R = restrict_to_subalgebra(U, Partition(C, ((0, 1), (2, 3))))
phis = formula_sample(100, max_depth=3, seed=2)
pool = two_valued_mixes_pool(R.sub)
print("U₀ = U ∩ B is principal at block", R.U0.atom)
print("factor map:", factor_map_check(R, pool, phis).to_json())
print("relativized values agree:", relativized_values_agree(R, pool, phis))

it = iteration_algebra(Algebra(2), {0: Algebra(2), 1: Algebra(3)})
U0 = Ultrafilter.principal(it.base, 1)
U1 = Ultrafilter.principal(it.fibers[1], 2)
W = iteration_ultrafilter(it, U0, U1)
print(f"U₀*U₁ is principal at atom {W.atom} of {it.algebra.n_atoms}; decomposes to",
      tuple(u.atom for u in decompose_iteration(it, W)))

B0, B1 = Algebra(2), Algebra(3)
P, _, _ = product_algebra(B0, B1)
V0, V1 = Ultrafilter.principal(B0, 0), Ultrafilter.principal(B1, 1)
X = P.element([1, 3, 4])
print("X in rectangle / product / dual product filter:",
      rectangle_filter_contains(X, P, V0, V1), product_filter_contains(X, V0, V1),
      dual_product_filter_contains(X, V0, V1))
