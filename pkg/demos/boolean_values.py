"""Names over a 2-atom algebra: check names, mixing, the generic name, values."""
from boolult.fol import parse
from boolult.kernel import Algebra, Antichain
from boolult.names import (
    EMPTY, BVSession, Filter, bv_formula, check_name, element_check, generic_name, hf,
    mix, powerset_name, two_valued_mixes_pool, val,
)

B = Algebra(2)
s = BVSession(B)
zero, one = check_name(EMPTY, B), check_name(hf(EMPTY), B)

# a name that is ∅ below a0 and {∅} below a1
tau = mix(Antichain(B, (B.atom(0), B.atom(1))), [zero, one])
print("⟦τ = ∅̌⟧   =", s.value(tau, zero, "eq"))
print("⟦τ = {∅}̌⟧ =", s.value(tau, one, "eq"))

pool = two_valued_mixes_pool(B).extended([tau])
print("⟦τ ∈ V̌⟧   =", bv_formula(parse("x in V"), {"x": tau}, pool))
print("⟦∃y. y ∈ τ⟧ =", bv_formula(parse("exists y. y in x"), {"x": tau}, pool))

G = generic_name(B)
for b in B.elements():
    print(f"⟦b̌ ∈ Ġ⟧ for b = {b!r:10} is", s.value(element_check(b), G, "in"))

for z in range(2):
    U = Filter(B, B.atom(z))
    print(f"at atom {z}: val(τ) = {val(tau, U)!r}, val(P(τ)) = {val(powerset_name(tau), U)!r}")
