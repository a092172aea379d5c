"""Regularized vacuum energy between plates, computed two ways.

Zeta route: replacing the power 1/2 of the frequency by ``-s/2`` makes
the merged Dirichlet+Neumann mode sum converge for ``s > 3``,

    (1/a) sum_{n>=1} int d^2k/(2 pi)^2 [(pi n/a)^2 + k^2]^(-s/2)
        = (1/a) (pi/a)^(2-s) zeta(s-2) / (2 pi (s-2)),

and the right-hand side continues to ``s = -1`` where it gives the
energy per unit volume ``-pi^2 / (720 a^4)``.  The scaleless Neumann
``n = 0`` branch is zero in this scheme.

Cutoff route: damp each mode by ``exp(-delta omega)``, sum, subtract the
free-space (continuum) value and extrapolate ``delta -> 0``.  This is an
independent numerical check on the continuation.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .zeta import bernoulli_numbers, riemann_zeta

__all__ = [
    "ZetaResult",
    "RegulatorSchedule",
    "Extrapolation",
    "ConvergenceError",
    "TAIL_BOUND",
    "regulated_closed_form",
    "direct_regulated_sum",
    "zero_mode_branch",
    "zeta_energy_per_area",
    "cutoff_mode_weight",
    "cutoff_terms",
    "cutoff_energy_per_area",
    "default_schedule",
    "extrapolated_cutoff_energy",
    "convergence_table",
    "convergence_csv",
]

TAIL_BOUND = 1e-12
CSV_COLUMNS = ("a", "delta", "raw_sum", "continuum", "subtracted", "extrapolated", "zeta_reference")

# exp(-60) * poly leaves the truncated cutoff tail ~1e-17 below the finite part
_AUTO_TAIL_EXPONENT = 60.0


class ConvergenceError(ValueError):
    """Cutoff values do not approach their limit monotonically."""


def _check_a(a: float) -> float:
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise ValueError(f"plate separation a must be > 0, got {a!r}")
    return a


# --- zeta-function route ----------------------------------------------------

def regulated_closed_form(s: float, a: float) -> float:
    """Closed form of the ``n >= 1`` regulated branch, continued in ``s``."""
    a = _check_a(a)
    if s == 2.0 or s == 3.0:
        raise ValueError(f"closed form has a pole at s = {s:g}")
    return (1.0 / a) * (math.pi / a) ** (2.0 - s) * riemann_zeta(s - 2.0) / (2.0 * math.pi * (s - 2.0))


def direct_regulated_sum(s: float, a: float, *, rtol: float = 1e-14) -> float:
    """Evaluate the regulated ``n >= 1`` branch by summing over modes.

    The transverse integral is done analytically,
    ``int d^2k/(2 pi)^2 (m^2 + k^2)^(-s/2) = m^(2-s) / (2 pi (s-2))``; the
    sum over ``n`` is carried out term by term up to a cutoff ``N`` and the
    remainder is closed with an integral plus endpoint corrections.  ``N``
    is doubled until the first neglected correction is below ``rtol``.
    Valid only where the sum converges, ``s > 3``.
    """
    a = _check_a(a)
    s = float(s)
    if not s > 3.0:
        raise ValueError(f"direct mode sum diverges for s <= 3 (got s = {s!r}); use the closed form")
    p = s - 2.0
    c = (1.0 / a) * (math.pi / a) ** (-p) / (2.0 * math.pi * p)
    b4 = float(bernoulli_numbers(4)[4])
    n = 64
    while True:
        head = np.arange(1, n, dtype=float) ** -p
        # endpoint corrections: int_N^inf, f(N)/2, -B2/2! f'(N)
        tail = [n ** (1.0 - p) / (p - 1.0), 0.5 * n ** -p, p * n ** (-p - 1.0) / 12.0]
        total = math.fsum([*head, *tail])
        # first omitted term, -B4/4! f'''(N), bounds the remainder
        remainder = abs(b4 / 24.0 * p * (p + 1.0) * (p + 2.0) * n ** (-p - 3.0))
        if remainder <= rtol * total or n >= 1 << 20:
            return c * total
        n *= 2


def zero_mode_branch(s: float, a: float) -> float:
    """The Neumann ``n = 0`` term: a scaleless integral, zero under continuation."""
    _check_a(a)
    return 0.0


@dataclass(frozen=True)
class ZetaResult:
    energy_per_area: float
    energy_per_volume: float
    s_evaluated: float = -1.0
    closed_form_terms: dict = field(default_factory=dict)


def zeta_energy_per_area(a: float) -> ZetaResult:
    """Continue the regulated sum to ``s = -1``: ``-pi^2 / (720 a^3)`` per area.

    >>> round(zeta_energy_per_area(1.0).energy_per_area * 720 / math.pi**2, 12)
    -1.0
    """
    a = _check_a(a)
    s = -1.0
    per_volume = regulated_closed_form(s, a) + zero_mode_branch(s, a)
    terms = {
        "1/a": 1.0 / a,
        "(pi/a)^(2-s)": (math.pi / a) ** (2.0 - s),
        "zeta(s-2)": riemann_zeta(s - 2.0),
        "1/(2 pi (s-2))": 1.0 / (2.0 * math.pi * (s - 2.0)),
    }
    return ZetaResult(a * per_volume, per_volume, s, terms)


# --- exponential cutoff oracle ----------------------------------------------

def cutoff_mode_weight(m, delta: float):
    """Damped transverse integral for one mode of mass ``m``.

    ``int d^2k/(2 pi)^2 omega exp(-delta omega)`` with
    ``omega = sqrt(m^2 + k^2)``, i.e.
    ``exp(-delta m) (m^2/delta + 2 m/delta^2 + 2/delta^3) / (2 pi)``.
    """
    m = np.asarray(m, dtype=float)
    return np.exp(-delta * m) * (m * m / delta + 2.0 * m / delta**2 + 2.0 / delta**3) / (2.0 * math.pi)


def _auto_n_max(a: float, delta: float) -> int:
    return int(math.ceil(_AUTO_TAIL_EXPONENT * a / (math.pi * delta)))


def _check_tail(a: float, delta: float, n_max: int):
    if math.exp(-delta * math.pi * n_max / a) >= TAIL_BOUND:
        need = math.ceil(-math.log(TAIL_BOUND) * a / (math.pi * delta))
        raise ValueError(
            f"mode sum truncated too early: exp(-delta*pi*n_max/a) >= {TAIL_BOUND:g} "
            f"for a={a!r}, delta={delta!r}, n_max={n_max}; increase n_max to at least {need}"
        )


def cutoff_terms(a: float, delta: float, n_max: int | None = None) -> tuple[float, float]:
    """Return ``(raw_sum, continuum)`` for the cutoff-regulated energy per area.

    ``raw_sum`` weights ``n = 0`` by 1/2 and ``n >= 1`` by 1 (Dirichlet and
    Neumann merged).  ``continuum`` is the integral over ``n`` of the same
    summand, ``3 a / (pi^2 delta^4)``.
    """
    a = _check_a(a)
    delta = float(delta)
    if not (math.isfinite(delta) and delta > 0.0):
        raise ValueError(f"cutoff delta must be > 0, got {delta!r}")
    if n_max is None:
        n_max = _auto_n_max(a, delta)
    _check_tail(a, delta, n_max)
    m = math.pi * np.arange(n_max + 1, dtype=float) / a
    w = cutoff_mode_weight(m, delta)
    w[0] *= 0.5
    raw = math.fsum(w)
    continuum = 3.0 * a / (math.pi**2 * delta**4)
    return raw, continuum


def cutoff_energy_per_area(a: float, delta: float, n_max: int | None = None, *, subtract: bool = True) -> float:
    """Cutoff-regulated energy per area; ``subtract=False`` keeps the divergent continuum."""
    raw, continuum = cutoff_terms(a, delta, n_max)
    return raw - continuum if subtract else raw


@dataclass(frozen=True)
class RegulatorSchedule:
    deltas: tuple[float, ...]
    n_max: int | None = None
    extrapolation_order: int = 2

    def __post_init__(self):
        d = tuple(float(x) for x in self.deltas)
        object.__setattr__(self, "deltas", d)
        if len(d) < 3:
            raise ValueError(f"a regulator schedule needs at least 3 deltas, got {len(d)}")
        if not all(math.isfinite(x) and x > 0 for x in d):
            raise ValueError(f"deltas must be finite and > 0, got {d}")
        if any(b >= a for a, b in zip(d, d[1:])):
            raise ValueError(f"deltas must be strictly decreasing, got {d}")
        if not 1 <= self.extrapolation_order <= len(d) - 1:
            raise ValueError(
                f"extrapolation_order must be in 1..{len(d) - 1} for {len(d)} deltas, got {self.extrapolation_order}"
            )
        if self.n_max is not None and int(self.n_max) < 1:
            raise ValueError(f"n_max must be a positive integer, got {self.n_max!r}")


def default_schedule(a: float) -> RegulatorSchedule:
    """Cutoffs at 8%, 4% and 2% of the separation."""
    a = _check_a(a)
    return RegulatorSchedule((0.08 * a, 0.04 * a, 0.02 * a))


@dataclass(frozen=True)
class Extrapolation:
    value: float
    error: float
    deltas: tuple[float, ...]
    samples: tuple[float, ...]


def _neville_at_zero(x: Sequence[float], y: Sequence[float], order: int) -> tuple[float, float]:
    """Polynomial extrapolation of y(x) to x = 0, degree <= order.

    Returns the highest-order estimate and its difference from the
    next-lower order on the same final points.
    """
    t = [list(y)]
    for j in range(1, order + 1):
        prev = t[-1]
        row = []
        for i in range(j, len(x)):
            lo, hi = prev[i - 1], prev[i]
            row.append(hi + (hi - lo) * x[i] / (x[i - j] - x[i]))
        t.append([math.nan] * j + row)
    best, lower = t[order][-1], t[order - 1][-1]
    return best, abs(best - lower)


def extrapolated_cutoff_energy(a: float, sched: RegulatorSchedule | None = None) -> Extrapolation:
    """Richardson-extrapolate the cutoff energy per area to ``delta -> 0``.

    The error estimate is the change produced by the last extrapolation
    step.  Raises :class:`ConvergenceError` when the samples do not move
    monotonically with shrinking steps.
    """
    a = _check_a(a)
    if sched is None:
        sched = default_schedule(a)
    ys = [cutoff_energy_per_area(a, d, sched.n_max) for d in sched.deltas]
    steps = np.diff(ys)
    if not (np.all(steps > 0) or np.all(steps < 0)) or np.any(np.abs(steps[1:]) >= np.abs(steps[:-1])):
        raise ConvergenceError(
            f"cutoff energies {ys} do not converge monotonically over deltas {sched.deltas}; use smaller deltas"
        )
    value, err = _neville_at_zero(sched.deltas, ys, sched.extrapolation_order)
    return Extrapolation(value, err, sched.deltas, tuple(ys))


def convergence_table(a: float, sched: RegulatorSchedule | None = None) -> list[dict[str, float]]:
    """One row per cutoff: raw sum, continuum, their difference, the extrapolated and zeta values."""
    a = _check_a(a)
    if sched is None:
        sched = default_schedule(a)
    ext = extrapolated_cutoff_energy(a, sched)
    ref = zeta_energy_per_area(a).energy_per_area
    rows = []
    for d in sched.deltas:
        raw, cont = cutoff_terms(a, d, sched.n_max)
        rows.append(dict(zip(CSV_COLUMNS, (a, d, raw, cont, raw - cont, ext.value, ref))))
    return rows


def convergence_csv(rows: Sequence[dict[str, float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([f"{r[c]:.17g}" for c in CSV_COLUMNS])
    return buf.getvalue()
