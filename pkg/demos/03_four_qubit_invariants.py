"""Four qubits: hyperdeterminants, biquadratic curves, and verdicts.

The 2x2x2 Cayley hyperdeterminant separates the GHZ orbit from the W
orbit; its Schlaefli extension to 2x2x2x2 vanishes exactly when the
model's (2,2)-curve projections degenerate.  Generic states get an exact
j attached; comparison of two states certifies distinctness only.
"""

from sloccgeo import (
    basis_state,
    cayley_hyperdet,
    classify,
    four_qubit_generic_family,
    ghz,
    schlaefli_hyperdet,
    slocc_compare,
    w_state,
)
from sloccgeo.states import SloccOperator, apply_slocc

# Three qubits: the two genuinely entangled orbits.
print("cayley(GHZ) =", cayley_hyperdet(ghz(3, 2)))
print("cayley(W)   =", cayley_hyperdet(w_state(3)))
print("cayley(|000>) =", cayley_hyperdet(basis_state(3, 2, (0, 0, 0))))

# Four qubits: GHZ is degenerate, the diagonal family is generic.
fam = four_qubit_generic_family(1, 2, 3, 5)
print("schlaefli(GHZ4) =", schlaefli_hyperdet(ghz(4, 2)))
print("schlaefli(family 1,2,3,5) =", schlaefli_hyperdet(fam))

verdict = classify(fam)
print("family status:", verdict.status, " j =", verdict.j)
for proj in verdict.projections:
    print("  axes", proj.axes, "j =", proj.invariants.j)

# j is exactly invariant along the orbit, so acting by invertible local
# operators can never produce a certified distinction.
moved = apply_slocc(fam, SloccOperator.random(4, 2, 3, seed=5))
print("orbit comparison:", slocc_compare(fam, moved).outcome)

# Different diagonal parameters generically change j: certified distinct.
other = four_qubit_generic_family(2, 3, 5, 7)
print("different family:", slocc_compare(fam, other).outcome)

# Degenerate pairs cannot be separated by j at all.
print("GHZ4 vs scaled GHZ4:", slocc_compare(ghz(4, 2), ghz(4, 2).scale(3)).outcome)
