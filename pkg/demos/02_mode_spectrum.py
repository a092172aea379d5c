"""
Plate modes and the shifted spectrum
====================================

Dirichlet modes start at n = 1, Neumann modes at n = 0; above n = 0 the
two are degenerate, which is why their sums merge into one.
"""

import math

import numpy as np

from casimir_liv import enumerate_modes, shifted_frequency

a = math.pi
for spec, omega in enumerate_modes(a, 3.5, k_samples=1):
    print(f"{spec.bc.value:<9} n={spec.n}  omega={omega:.3f}")

# branch count grows linearly with the separation
for sep in (1.0, 2.0, 4.0, 8.0):
    n_values = {s.n for s, _ in enumerate_modes(sep, 10.0)}
    print(f"a = {sep:>4}: {len(n_values)} mode numbers below omega = 10")

omega = np.array([w for _, w in enumerate_modes(a, 3.5, k_samples=4)])
print("max shift at L = 1e-3:", np.max(shifted_frequency(omega, 1e-3) - omega))
