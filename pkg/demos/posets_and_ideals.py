"""A fork poset, its completion, filters on it, and an ideal on a 3-atom algebra."""
from boolult.kernel import Algebra, Ideal, Poset, quotient, ro_completion
from boolult.ultra import ideal_suite, poset_diagnostics

fork = Poset(("top", "left", "right"), frozenset({("left", "top"), ("right", "top")}))
c = ro_completion(fork)
print("RO(fork) has", c.algebra.size, "elements;", {p: repr(c.e(p)) for p in fork.nodes})
for F in fork.filters():
    d = poset_diagnostics(fork, F)
    print(f"filter {sorted(F)}: ultra in RO = {d.ro_ultra}, "
          f"decides all 2-splits = {d.decides_two} ({d.two_splits} splits)")

B = Algebra(3)
I = Ideal.principal(B, B.atom(0))
Q, pi = quotient(B, I)
print(f"B/I has {Q.n_atoms} atoms; π({B.element([0, 1])!r}) = {pi(B.element([0, 1]))!r}")
print("ideal suite at depth 3:", ideal_suite(I, depth=3).to_json())
