"""Relation spaces, reconstruction, and graded dimension profiles.

Evaluating slot monomials at a model's F_p-points recovers the defining
relation space exactly (the reconstruction roundtrip), measures whether
two section spaces multiply surjectively (the embedding test), and builds
graded dimension profiles.  The computed profiles are the bigraded
section-ring values (3k and 2k in positive degrees); the regular-algebra
targets from the minimal resolutions are reported alongside, and the gap
between the two is itself a sharp degeneracy detector.
"""

from sloccgeo import (
    cubic_hilbert,
    four_qubit_generic_family,
    ghz,
    multiplication_surjectivity,
    quadratic_hilbert,
    random_state,
    relations_from_points,
    roundtrip_check,
    variety_from_state,
)
from sloccgeo.errors import InsufficientPointsError
from sloccgeo.states import Tensor, tensor_product

# Reconstruction: the kernel of the monomial evaluation at the model's
# F_p-points is exactly the reduced flattening image.
t = random_state(3, 3, 5, seed=42)
for p in (7, 11, 13):
    print(f"roundtrip at p={p}:", roundtrip_check(t, p))
rel = relations_from_points(variety_from_state(t), 11, (0, 1))
print("relation space at p=11: dim", rel.dim)

# Graded profiles: computed values vs regular-algebra targets.
profile = quadratic_hilbert(t, 11, 4)
print("quadratic profile:", profile.dims, "targets:", profile.expected)
fam = four_qubit_generic_family(1, 2, 3, 5)
profile = cubic_hilbert(fam, 13, 5)
print("cubic profile:", profile.dims, "targets:", profile.expected)

# Degenerate inputs are flagged loudly rather than profiled quietly.
try:
    bad = quadratic_hilbert(ghz(3, 3), 13, 3)
    print("GHZ profile:", bad.dims, "matches targets:", bad.matches())
except InsufficientPointsError as err:
    print("GHZ profile aborted:", err)

# The embedding test: generic states multiply surjectively; a state whose
# first two factors carry the same projective map has a forced kernel.
print("family product map:", multiplication_surjectivity(fam, (0, 1), 13).to_json_dict())
singlet = Tensor.from_entries(2, 2, {(0, 1): 1, (1, 0): -1})
diagonal = tensor_product(singlet, ghz(2, 2))
print("diagonal product map:", multiplication_surjectivity(diagonal, (0, 1), 13).to_json_dict())
