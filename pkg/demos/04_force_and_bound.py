"""
Force on a sapphire disk and the resulting bound on L
=====================================================

The LIV factor multiplies the force, so a force accuracy delta_F bounds
|L| by delta_F / |F|.  The ratio scales like a^4 / A: small separations
and large plates give the tightest bounds.
"""

import numpy as np

from casimir_liv import SI, PlateGeometry, bound_sweep, casimir_force, liv_upper_bound, load_preset

disk = PlateGeometry(1e-7, disk_diameter=1.25e-2, label="1.25 cm disk")
print(f"A = {disk.area_A:.6e} m^2")
for a in (1e-8, 1e-7, 1e-6):
    f = casimir_force(disk.with_separation(a), 0.0, SI)
    print(f"a = {a:.0e} m: F = {f:.6e} N")

for variant in ("dF_1pN", "dF_1p6pN"):
    r = liv_upper_bound(load_preset("paper_inputs", variant))
    print(f"{variant}: L_max = {r.L_max:.3e}")
    print("  ", r.discrepancy["note"])

rows = bound_sweep(load_preset(), np.geomspace(1e-8, 1e-6, 5))
for r in rows:
    print(f"a = {r.inputs_echo.geometry.separation_a:.2e} m  L_max = {r.L_max:.3e}")
