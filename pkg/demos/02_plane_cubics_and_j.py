"""Three qutrits: determinantal plane cubics and their j-invariants.

Eliminating one projective factor of a (3,3) model through the determinant
of its matrix of linear forms yields a ternary cubic.  Its classical
invariants S (degree 4) and T (degree 6) are generated here as full
epsilon contractions and calibrated on the Weierstrass family, so that
j = 110592 * S^3 / (64 S^3 - T^2) and the denominator vanishes exactly on
singular cubics.
"""

from fractions import Fraction

from sloccgeo import (
    TernaryCubic,
    aronhold_invariants,
    classify,
    cubic_discriminant,
    determinantal_projection,
    ghz,
    j_plane_cubic,
    random_state,
    variety_from_state,
)

# GHZ projects to the triangle x0*x1*x2: three lines, a singular cubic.
triangle = TernaryCubic.from_form(
    determinantal_projection(variety_from_state(ghz(3, 3)), (0,))
)
print("GHZ cubic invariants:", aronhold_invariants(triangle))
print("GHZ cubic discriminant:", cubic_discriminant(triangle))
print("GHZ cubic j:", j_plane_cubic(triangle))

# The Weierstrass calibration: j matches the textbook closed form.
for alpha, beta in [(-1, 0), (0, 1), (2, 3)]:
    cubic = TernaryCubic.weierstrass(alpha, beta)
    closed = 1728 * Fraction(4 * alpha**3, 4 * alpha**3 + 27 * beta**2)
    print(f"weierstrass({alpha},{beta}): j = {j_plane_cubic(cubic)} (closed form {closed})")

# The Fermat cubic has extra symmetry: S = 0 forces j = 0.
fermat = TernaryCubic.from_terms({(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
print("fermat:", aronhold_invariants(fermat), "j =", j_plane_cubic(fermat))

# For a generic state the two possible projections give the same curve
# up to isomorphism, so classification attaches a single exact j.
t = random_state(3, 3, 5, seed=42)
verdict = classify(t)
print("random state status:", verdict.status)
for proj in verdict.projections:
    print("  axes", proj.axes, "j =", proj.invariants.j)
