"""
From k_F coefficients to the LIV factor L
=========================================

A single representative per symmetry orbit is enough to define the
tensor; the partners are filled in automatically.
"""

import numpy as np

from casimir_liv import FieldStats, KFTensor, Medium, kappa_from_kf, liv_factor, validate_kf

# parity-even electric and magnetic pieces
kf = KFTensor.from_entries({
    (0, 1, 0, 1): 1e-17,   # -> kappa_DE[0, 0]
    (0, 2, 0, 2): 1e-17,
    (1, 2, 1, 2): -3e-17,  # -> kappa_HB[2, 2]
})
print("nonzero components:", len(kf.nonzero_entries()))
print("validation:", validate_kf(kf).summary())
print("with cyclic identity:", validate_kf(kf, bianchi=True).summary())

k = kappa_from_kf(kf)
np.set_printoptions(precision=3)
print("kappa_DE =\n", k.kappa_DE)
print("kappa_HB =\n", k.kappa_HB)

# The vacuum mean squares are not fixed by the model; pick equal E^2 and B^2
# and average over orientations.
L = liv_factor(k, FieldStats(1.0, 1.0, isotropic=True), Medium())
print(f"L (isotropic, <E^2> = <B^2>) = {L:.4g}")

# A polarised field along x only sees kappa_DE[0, 0]
L_x = liv_factor(k, FieldStats(1.0, 0.0, E_dir=[1, 0, 0]))
print(f"L (E along x, no B)          = {L_x:.4g}")
