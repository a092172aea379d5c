"""Upper bounds on the LIV factor from a Casimir force measurement.

A measured force that agrees with the Lorentz-invariant prediction to
within ``delta_F`` allows ``|L| <= delta_F / |F(L=0)|``.
"""
from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .observables import SI, PlateGeometry, UnitSystem, casimir_force

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

__all__ = [
    "PRESET_DIR_ENV",
    "MeasurementRecord",
    "BoundResult",
    "liv_upper_bound",
    "bound_sweep",
    "preset_dir",
    "load_preset",
]

PRESET_DIR_ENV = "CASIMIR_LIV_PRESET_DIR"


@dataclass(frozen=True)
class MeasurementRecord:
    delta_F: float
    geometry: PlateGeometry
    source_label: str = ""
    accuracy_provenance: str = ""
    # a literature bound for the same inputs, compared against but never used
    reported_L_max: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.delta_F) and self.delta_F > 0):
            raise ValueError(f"force accuracy delta_F must be > 0, got {self.delta_F!r}")
        if not isinstance(self.geometry, PlateGeometry):
            raise ValueError("geometry must be a PlateGeometry")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class BoundResult:
    L_max: float
    reference_force: float
    inputs_echo: MeasurementRecord
    discrepancy: dict | None = field(default=None)

    def as_dict(self) -> dict:
        out = {"L_max": self.L_max, "reference_force": self.reference_force,
               "inputs": self.inputs_echo.as_dict()}
        if self.discrepancy is not None:
            out["paper_discrepancy"] = self.discrepancy
        return out


def _discrepancy(reported: float, computed: float) -> dict:
    ratio = reported / computed
    return {
        "reported_L_max": reported,
        "computed_L_max": computed,
        "ratio": ratio,
        "decades": math.log10(ratio),
        "note": (f"published bound L <= {reported:.2g} is not reproduced by these inputs: "
                 f"the parallel-plate ratio gives {computed:.3g}, {abs(math.log10(ratio)):.1f} decades "
                 f"{'tighter' if ratio > 1 else 'looser'}"),
    }


def liv_upper_bound(m: MeasurementRecord, u: UnitSystem = SI) -> BoundResult:
    """``L_max = delta_F / |F(a, A, L=0)|``, scaling as ``a^4 / A``."""
    ref = abs(casimir_force(m.geometry, 0.0, u))
    L_max = m.delta_F / ref
    disc = _discrepancy(m.reported_L_max, L_max) if m.reported_L_max is not None else None
    return BoundResult(L_max, ref, m, disc)


def bound_sweep(m: MeasurementRecord, a_grid: Sequence[float], u: UnitSystem = SI) -> list[BoundResult]:
    """Evaluate :func:`liv_upper_bound` at each separation, sorted by ``a``."""
    grid = sorted(float(a) for a in a_grid)
    if not grid:
        raise ValueError("separation grid is empty")
    if grid[0] <= 0:
        raise ValueError(f"all separations must be > 0, got {grid[0]!r}")
    return [liv_upper_bound(dataclasses.replace(m, geometry=m.geometry.with_separation(a)), u) for a in grid]


def preset_dir() -> Path:
    env = os.environ.get(PRESET_DIR_ENV)
    return Path(env) if env else Path(__file__).with_name("presets")


def load_preset(name: str = "paper_inputs", variant: str | None = None) -> MeasurementRecord:
    """Read a measurement preset; ``variant`` picks a ``[variant.<name>]`` table."""
    path = preset_dir() / f"{name}.toml"
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    variants = doc.get("variant", {})
    variant = variant or doc.get("default_variant")
    if variant not in variants:
        raise ValueError(f"preset {name!r} has no variant {variant!r}; choose from {sorted(variants)}")
    v = variants[variant]
    geo = doc["geometry"]
    g = PlateGeometry(geo["separation_a"], area_A=geo.get("area_A"),
                      disk_diameter=geo.get("disk_diameter"), label=geo.get("label", ""))
    return MeasurementRecord(
        delta_F=v["delta_F"],
        geometry=g,
        source_label=f"{name}:{variant}",
        accuracy_provenance=v.get("provenance", ""),
        reported_L_max=doc.get("reported_L_max"),
    )
