import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from casimir_liv.regularization import (
    ConvergenceError,
    RegulatorSchedule,
    convergence_csv,
    convergence_table,
    cutoff_energy_per_area,
    cutoff_mode_weight,
    cutoff_terms,
    direct_regulated_sum,
    extrapolated_cutoff_energy,
    regulated_closed_form,
    zero_mode_branch,
    zeta_energy_per_area,
)

CASIMIR = math.pi**2 / 720


# --- direct regulated sum ---------------------------------------------------

def test_s5_value():
    expected = float(mpmath.zeta(3) / (6 * mpmath.pi**4))  # 2.05672e-3
    assert direct_regulated_sum(5, 1) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(2.05672e-3, rel=1e-5)


def test_s4_value():
    assert direct_regulated_sum(4, 1) == pytest.approx(1 / (24 * math.pi), rel=1e-12)


def test_scaling_in_a():
    assert direct_regulated_sum(5, 2) / direct_regulated_sum(5, 1) == pytest.approx(4.0, rel=1e-13)


def test_mode_integral_by_quadrature():
    # int d^2k/(2pi)^2 (m^2+k^2)^(-s/2) = m^(2-s) / (2 pi (s-2))
    s, a = 4.5, 1.3
    for n in range(1, 6):
        m = math.pi * n / a
        q = quad(lambda k: k * (m * m + k * k) ** (-s / 2), 0, np.inf, epsrel=1e-13)[0] / (2 * math.pi)
        assert q == pytest.approx(m ** (2 - s) / (2 * math.pi * (s - 2)), rel=1e-11)


@pytest.mark.parametrize("s, a", [(4.5, 1.3), (3.2, 0.7), (9.0, 5.0)])
def test_direct_sum_against_mpmath(s, a):
    with mpmath.workdps(30):
        ref = mpmath.zeta(s - 2) * (mpmath.pi / a) ** (2 - s) / a / (2 * mpmath.pi * (s - 2))
    assert direct_regulated_sum(s, a) == pytest.approx(float(ref), rel=1e-13)


@pytest.mark.parametrize("s", [4, 5, 6, 7])
@pytest.mark.parametrize("a", [1, 2])
def test_anchor(s, a):
    assert direct_regulated_sum(s, a) == pytest.approx(regulated_closed_form(s, a), rel=1e-8)


def test_divergent_region_rejected():
    with pytest.raises(ValueError, match="diverges"):
        direct_regulated_sum(3.0, 1.0)


def test_zero_mode_branch():
    assert zero_mode_branch(5.0, 1.0) == 0.0


# --- zeta result ------------------------------------------------------------

def test_zeta_energy_values():
    r = zeta_energy_per_area(1.0)
    assert r.energy_per_area == pytest.approx(-CASIMIR, rel=1e-15)
    assert r.energy_per_area == pytest.approx(-1.370778e-2, rel=1e-6)
    assert r.s_evaluated == -1.0
    assert r.closed_form_terms["zeta(s-2)"] == 1 / 120
    assert zeta_energy_per_area(2.0).energy_per_area == pytest.approx(-1.713472e-3, rel=1e-6)
    assert abs(zeta_energy_per_area(1e3).energy_per_area) < 1.4e-11


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(0.1, 10))
def test_zeta_energy_invariants(a, lam):
    r = zeta_energy_per_area(a)
    assert r.energy_per_area == a * r.energy_per_volume
    assert r.energy_per_area < 0
    assert r.energy_per_area == pytest.approx(-CASIMIR / a**3, rel=1e-14)
    assert zeta_energy_per_area(lam * a).energy_per_area == pytest.approx(lam**-3 * r.energy_per_area, rel=1e-14)


def test_invalid_a():
    with pytest.raises(ValueError):
        zeta_energy_per_area(0.0)


# --- cutoff oracle ----------------------------------------------------------

@pytest.mark.parametrize("m, delta", [(0.0, 0.3), (1.7, 0.3), (10.0, 0.05), (0.4, 2.0)])
def test_mode_weight_matches_quadrature(m, delta):
    # int d^2k/(2pi)^2 w e^{-delta w} = (1/4pi) int_0^inf du sqrt(m^2+u) e^{-delta sqrt(m^2+u)}
    f = lambda u: math.sqrt(m * m + u) * math.exp(-delta * math.sqrt(m * m + u))
    q = quad(f, 0, np.inf, epsabs=0, epsrel=1e-13, limit=500)[0] / (4 * math.pi)
    assert float(cutoff_mode_weight(m, delta)) == pytest.approx(q, rel=1e-10)


def test_continuum_matches_quadrature():
    a, delta = 1.3, 0.2
    _, cont = cutoff_terms(a, delta)
    q = quad(lambda n: float(cutoff_mode_weight(math.pi * n / a, delta)), 0, np.inf, epsrel=1e-13)[0]
    assert cont == pytest.approx(q, rel=1e-10)


def test_cutoff_within_two_percent():
    assert cutoff_energy_per_area(1.0, 0.05) == pytest.approx(-CASIMIR, rel=0.02)


def test_cutoff_convergence_order():
    # observed: deviation ~ pi^2 delta^2 / 7, so halving delta quarters it
    d1 = cutoff_energy_per_area(1.0, 0.04) + CASIMIR
    d2 = cutoff_energy_per_area(1.0, 0.02) + CASIMIR
    assert d1 / d2 == pytest.approx(4.0, rel=0.01)
    assert d1 / CASIMIR == pytest.approx(math.pi**2 * 0.04**2 / 7, rel=0.01)


def test_unsubtracted_divergence_is_separation_independent():
    delta = 0.05
    per_volume = [cutoff_energy_per_area(a, delta, subtract=False) / a for a in (1.0, 2.0)]
    leading = 3 / (math.pi**2 * delta**4)
    assert per_volume[0] == pytest.approx(leading, rel=1e-6)
    assert abs(per_volume[0] - per_volume[1]) / per_volume[0] < 1e-6


def test_tail_bound_enforced():
    with pytest.raises(ValueError, match="increase n_max"):
        cutoff_energy_per_area(1.0, 0.02, n_max=100)
    cutoff_energy_per_area(1.0, 0.02, n_max=500)


def test_extrapolated_default_example():
    ext = extrapolated_cutoff_energy(1.0, RegulatorSchedule((0.08, 0.04, 0.02)))
    assert ext.value == pytest.approx(-1.3708e-2, rel=1e-3)
    assert ext.value == pytest.approx(-CASIMIR, rel=1e-3)
    assert abs(ext.value + CASIMIR) <= max(1e-3 * CASIMIR, ext.error)


def test_extrapolated_scaling():
    sched = RegulatorSchedule((0.08, 0.04, 0.02))
    r = extrapolated_cutoff_energy(0.5, sched).value / extrapolated_cutoff_energy(1.0, sched).value
    assert r == pytest.approx(8.0, rel=1e-3)


@pytest.mark.parametrize("a", np.geomspace(0.1, 10, 7))
def test_oracle_scaling_within_error_bar(a):
    e1 = extrapolated_cutoff_energy(a)
    e2 = extrapolated_cutoff_energy(2 * a)
    assert abs(e2.value - e1.value / 8) <= e2.error + e1.error / 8


def test_schedule_validation():
    with pytest.raises(ValueError, match="at least 3"):
        RegulatorSchedule((0.05,))
    with pytest.raises(ValueError, match="decreasing"):
        RegulatorSchedule((0.02, 0.04, 0.08))
    with pytest.raises(ValueError, match="extrapolation_order"):
        RegulatorSchedule((0.08, 0.04, 0.02), extrapolation_order=3)


def test_non_monotone_schedule_rejected():
    # cutoffs far larger than the separation leave the asymptotic regime
    with pytest.raises(ConvergenceError, match="smaller deltas"):
        extrapolated_cutoff_energy(0.1, RegulatorSchedule((0.3, 0.2, 0.15)))


def test_order_one_extrapolation():
    ext = extrapolated_cutoff_energy(1.0, RegulatorSchedule((0.04, 0.02, 0.01), extrapolation_order=1))
    # linear fit to a quadratic error leaves ~ c delta1 delta2
    assert ext.value == pytest.approx(-CASIMIR, rel=2e-3)


def test_convergence_table_csv():
    rows = convergence_table(1.0)
    text = convergence_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "a,delta,raw_sum,continuum,subtracted,extrapolated,zeta_reference"
    assert len(lines) == 4
    for r in rows:
        assert r["subtracted"] == r["raw_sum"] - r["continuum"]
    # full-precision round trip
    first = [float(x) for x in lines[1].split(",")]
    assert first == [rows[0][k] for k in rows[0]]


def test_schedule_evaluation_order_independent():
    sched = RegulatorSchedule((0.08, 0.04, 0.02))
    fwd = [cutoff_energy_per_area(1.0, d) for d in sched.deltas]
    rev = [cutoff_energy_per_area(1.0, d) for d in reversed(sched.deltas)][::-1]
    assert fwd == rev
