"""The multiples ultrafilter on ultimately periodic sets and its nonstandard ultrapower."""
from boolult.omega import (
    U_MULTIPLES, EAFunction, SymbolicUltrapower, Triangle, UPSet, illfoundedness_witness,
    nontriviality_witness, rectangle_failure_demo,
)

U = U_MULTIPLES
evens, tail = UPSet.residues(2, [0]), UPSet.tail(5)
print("evens ∈ U:", evens in U, "| odds ∈ U:", ~evens in U, "| {n ≥ 5} ∈ U:", tail in U)
print("{5, 6} ∈ U:", (UPSet.tail(5) - UPSet.tail(7)) in U)

M = SymbolicUltrapower([])
print("[id] above every j(m), m ≤ 50:", nontriviality_witness(bound=50)["ok"])
print("[n + 100] < [2n]:", M.less(EAFunction.affine(1, 100), EAFunction.affine(2, 0)))

chain = illfoundedness_witness(10)
print("descending chain [id] > [id-1] > ... > [id-10]:", chain["descending"],
      "| all above the standard part:", chain["above_standard"])

x = Triangle()
print("evens × evens meets x at", x.meets_rectangle(evens, evens),
      "and its complement at", x.complement().meets_rectangle(evens, evens))
r = rectangle_failure_demo(samples=1000)
print(f"{r['both_met']}/1000 random U-rectangles meet both sides; "
      f"x ∈ U×U: {r['x_in_U_times_U']}, x in the dual product: {r['x_in_dual_product']}")
