"""Casimir energy, pressure and force between ideal parallel plates.

The LIV factor enters every observable as an overall ``(1 + L)``.
Natural units have ``hbar = c = 1`` with lengths in arbitrary units;
SI mode uses metres and the CODATA 2018 ``hbar`` and ``c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .regularization import zeta_energy_per_area

__all__ = [
    "HBAR_SI",
    "C_SI",
    "MEASURABLE_SEPARATION",
    "UnitSystem",
    "NATURAL",
    "SI",
    "PlateGeometry",
    "casimir_pressure",
    "casimir_force",
    "energy_per_area_physical",
    "casimir_record",
]

HBAR_SI = 1.054571817e-34  # J s
C_SI = 2.99792458e8  # m / s
MEASURABLE_SEPARATION = 1e-6  # m

_UNIT_LABELS = {
    "natural": {"a": "length", "A": "length^2", "pressure": "hbar c / length^4",
                "force": "hbar c / length^2", "energy_per_area": "hbar c / length^3"},
    "SI": {"a": "m", "A": "m^2", "pressure": "Pa", "force": "N", "energy_per_area": "J/m^2"},
}


@dataclass(frozen=True)
class UnitSystem:
    mode: str = "natural"

    def __post_init__(self):
        if self.mode not in _UNIT_LABELS:
            raise ValueError(f"unit mode must be 'natural' or 'SI', got {self.mode!r}")

    @property
    def hbar(self) -> float:
        return HBAR_SI if self.mode == "SI" else 1.0

    @property
    def c(self) -> float:
        return C_SI if self.mode == "SI" else 1.0

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c

    @property
    def labels(self) -> dict[str, str]:
        return dict(_UNIT_LABELS[self.mode])


NATURAL = UnitSystem("natural")
SI = UnitSystem("SI")


@dataclass(frozen=True)
class PlateGeometry:
    """Two parallel plates; give either ``area_A`` or ``disk_diameter``."""

    separation_a: float
    area_A: float | None = None
    disk_diameter: float | None = None
    label: str = ""

    def __post_init__(self):
        if self.area_A is not None and self.disk_diameter is not None:
            raise ValueError("give either area_A or disk_diameter, not both")
        if not (math.isfinite(self.separation_a) and self.separation_a > 0):
            raise ValueError(f"plate separation a must be > 0, got {self.separation_a!r}")
        if self.disk_diameter is not None:
            if not (math.isfinite(self.disk_diameter) and self.disk_diameter > 0):
                raise ValueError(f"disk diameter must be > 0, got {self.disk_diameter!r}")
            object.__setattr__(self, "area_A", math.pi * (0.5 * self.disk_diameter) ** 2)
        elif self.area_A is None:
            raise ValueError("plate area missing: give area_A or disk_diameter")
        if not (math.isfinite(self.area_A) and self.area_A > 0):
            raise ValueError(f"plate area A must be > 0, got {self.area_A!r}")

    def with_separation(self, a: float) -> "PlateGeometry":
        if self.disk_diameter is not None:
            return PlateGeometry(a, disk_diameter=self.disk_diameter, label=self.label)
        return PlateGeometry(a, area_A=self.area_A, label=self.label)

    def warnings(self, u: UnitSystem) -> list[str]:
        if u.mode == "SI" and self.separation_a >= MEASURABLE_SEPARATION:
            return [f"separation {self.separation_a:g} m >= 1 micrometre: the force is too weak to measure at this range"]
        return []


def _check(a: float, L: float):
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"plate separation a must be > 0, got {a!r}")
    if not L > -1.0:
        raise ValueError(f"LIV factor must satisfy L > -1, got {L!r}")


def _pressure_invariant(a: float, u: UnitSystem) -> float:
    return -math.pi**2 * u.hbar_c / (240.0 * a**4)


def casimir_pressure(a: float, L: float = 0.0, u: UnitSystem = NATURAL) -> float:
    """``-(1 + L) pi^2 hbar c / (240 a^4)``; negative means attractive."""
    if not isinstance(u, UnitSystem):
        raise ValueError(f"expected a UnitSystem, got {u!r}")
    _check(a, L)
    return (1.0 + L) * _pressure_invariant(a, u)


def casimir_force(g: PlateGeometry, L: float = 0.0, u: UnitSystem = NATURAL) -> float:
    """Pressure times plate area, ``(1 + L)`` applied last so it factors exactly."""
    if not isinstance(u, UnitSystem):
        raise ValueError(f"expected a UnitSystem, got {u!r}")
    _check(g.separation_a, L)
    return (1.0 + L) * (_pressure_invariant(g.separation_a, u) * g.area_A)


def energy_per_area_physical(a: float, L: float = 0.0, u: UnitSystem = NATURAL) -> float:
    """``(1 + L) hbar c`` times the zeta-regularized energy per area, ``-pi^2/(720 a^3)``."""
    if not isinstance(u, UnitSystem):
        raise ValueError(f"expected a UnitSystem, got {u!r}")
    _check(a, L)
    return (1.0 + L) * (u.hbar_c * zeta_energy_per_area(a).energy_per_area)


def casimir_record(g: PlateGeometry, L: float = 0.0, u: UnitSystem = NATURAL) -> dict:
    """All observables for one configuration, as a flat record."""
    return {
        "a": g.separation_a,
        "A": g.area_A,
        "L": L,
        "pressure": casimir_pressure(g.separation_a, L, u),
        "force": casimir_force(g, L, u),
        "energy_per_area": energy_per_area_physical(g.separation_a, L, u),
        "units": {"mode": u.mode, **u.labels},
        "warnings": g.warnings(u),
    }
