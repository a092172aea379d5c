"""Casimir effect between parallel plates with a Lorentz-violation factor.

Pipeline: SME photon coefficients ``k_F`` -> kappa matrices -> scalar
factor ``L`` -> ``(1 + L)`` times the zeta-regularized Casimir energy,
pressure and force -> experimental upper bounds on ``L``.
"""
from .bounds import BoundResult, MeasurementRecord, bound_sweep, liv_upper_bound, load_preset
from .mode_spectrum import BoundaryCondition, ModeSpec, enumerate_modes, mode_frequency, shifted_frequency
from .observables import (
    NATURAL,
    SI,
    PlateGeometry,
    UnitSystem,
    casimir_force,
    casimir_pressure,
    casimir_record,
    energy_per_area_physical,
)
from .regularization import (
    RegulatorSchedule,
    ZetaResult,
    cutoff_energy_per_area,
    direct_regulated_sum,
    extrapolated_cutoff_energy,
    regulated_closed_form,
    zeta_energy_per_area,
)
from .sme_tensors import (
    FieldStats,
    KAFVector,
    KappaSet,
    KFTensor,
    Medium,
    kappa_from_kf,
    liv_factor,
    load_kf_file,
    validate_kf,
)
from .zeta import riemann_zeta

__version__ = "0.1.0"
