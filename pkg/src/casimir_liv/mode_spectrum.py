"""Scalar-field modes between two parallel plates.

The electromagnetic field between ideal conductors is modelled as one
Dirichlet and one Neumann massless scalar.  Both have frequencies
``sqrt((pi n / a)^2 + k_T^2)``; Dirichlet starts at ``n = 1``, Neumann at
``n = 0``.  Everything here is in natural units (frequency = inverse
length).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BoundaryCondition",
    "ModeSpec",
    "mode_frequency",
    "shifted_frequency",
    "enumerate_modes",
]


class BoundaryCondition(str, enum.Enum):
    DIRICHLET = "Dirichlet"
    NEUMANN = "Neumann"

    @property
    def n_min(self) -> int:
        return 1 if self is BoundaryCondition.DIRICHLET else 0


@dataclass(frozen=True)
class ModeSpec:
    bc: BoundaryCondition
    n: int
    k_T: float
    a: float

    def __post_init__(self):
        bc = BoundaryCondition(self.bc)
        object.__setattr__(self, "bc", bc)
        if int(self.n) != self.n:
            raise ValueError(f"mode number must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < bc.n_min:
            raise ValueError(f"{bc.value} modes start at n = {bc.n_min}, got n = {self.n}")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"plate separation a must be > 0, got {self.a!r}")
        if not (math.isfinite(self.k_T) and self.k_T >= 0):
            raise ValueError(f"transverse wavenumber k_T must be >= 0, got {self.k_T!r}")


def mode_frequency(m: ModeSpec) -> float:
    return math.hypot(math.pi * m.n / m.a, m.k_T)


def shifted_frequency(omega0, L: float):
    """``(1 + L) omega0``; works elementwise on arrays."""
    if not L > -1.0:
        raise ValueError(f"LIV factor must satisfy L > -1, got {L!r}")
    if np.any(np.asarray(omega0) < 0):
        raise ValueError("frequencies must be >= 0")
    return (1.0 + L) * omega0


def enumerate_modes(a: float, omega_max: float, k_samples: int = 1) -> list[tuple[ModeSpec, float]]:
    """All branches with ``pi n / a <= omega_max``, sampled on a uniform k_T grid.

    Each branch gets ``k_samples`` points spanning ``[0, k_max(n)]`` where
    ``k_max`` puts the frequency at ``omega_max`` (``k_samples = 1`` keeps
    only ``k_T = 0``).  The result is sorted by frequency, then ``n``,
    then Dirichlet before Neumann.
    """
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"plate separation a must be > 0, got {a!r}")
    if not (math.isfinite(omega_max) and omega_max > 0):
        raise ValueError(f"omega_max must be > 0, got {omega_max!r}")
    if int(k_samples) != k_samples or k_samples < 1:
        raise ValueError(f"k_samples must be a positive integer, got {k_samples!r}")
    out = []
    n = 0
    while math.pi * n / a <= omega_max:
        m = math.pi * n / a
        k_max = math.sqrt(max(omega_max * omega_max - m * m, 0.0))
        ks = np.linspace(0.0, k_max, int(k_samples)) if k_samples > 1 else np.zeros(1)
        for bc in BoundaryCondition:
            if n < bc.n_min:
                continue
            for k in ks:
                spec = ModeSpec(bc, n, float(k), a)
                out.append((spec, min(mode_frequency(spec), omega_max)))
        n += 1
    order = {BoundaryCondition.DIRICHLET: 0, BoundaryCondition.NEUMANN: 1}
    out.sort(key=lambda item: (item[1], item[0].n, order[item[0].bc], item[0].k_T))
    return out
