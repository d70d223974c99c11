"""The Boolean ultrapower of a 3-atom algebra, both presentations and the direct limit."""
from boolult.fol import formula_sample
from boolult.kernel import Algebra
from boolult.names import hf_of_rank_at_most, standard_pool
from boolult.ultra import (
    DirectLimitSystem, degree_of_genericity, enumerate_ultrafilters, extender_rep,
    generic_triviality_check, los_check, presentations_iso, quotient_model,
)

B = Algebra(3)
pool = standard_pool(B, hf_rank=2, mixes=4, extras=2, seed=1)
phis = formula_sample(200, max_depth=3, seed=1)
values = hf_of_rank_at_most(2)
print(f"{len(pool)} names, {len(phis)} formulas")

for U in enumerate_ultrafilters(B):
    m = quotient_model(pool, U)
    los = los_check(m, phis)
    triv = generic_triviality_check(m)
    pres = presentations_iso(B, U, values)
    system = DirectLimitSystem(B, U, list(B.maximal_antichains()), values)
    lim = system.verify()
    trips = sum(extender_rep(system, x).round_trip for x in range(system.limit_size))
    print(f"U at atom {U.atom}: {m.size} classes, {int(m.vcheck.sum())} in V̌_U")
    print(f"  Łoś: {los.instances} instances, ok={los.ok}")
    print(f"  j_U onto V̌_U: {triv.isomorphism}; degree of genericity: {degree_of_genericity(U)['degree']}")
    print(f"  spanning functions {pres.spanning_functions} -> {pres.functional_classes} classes, iso={pres.ok}")
    print(f"  direct limit over {len(system.family)} antichains: {system.limit_size} elements, "
          f"commutes={lim.ok}, extender round trips {trips}/{system.limit_size}")
