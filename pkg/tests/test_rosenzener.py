import math

import pytest
from hypothesis import given, strategies as st

from excirot import rosenzener as rz
from excirot.core import DotParams, FullState, bloch_vector, init_exciton, precess
from excirot.errors import DegenerateError, DomainError
from excirot.rosenzener import PulseParams

from conftest import ALPHA_GRID, RATIO_GRID

alphas = st.floats(0.0, 1.5)
ratios = st.floats(-3.0, 3.0)


def grid_pulses():
    return [PulseParams(float(a), 145.0, float(r) * 145.0) for a in ALPHA_GRID for r in RATIO_GRID]


def test_pulse_validation():
    with pytest.raises(ValueError):
        PulseParams(-0.1)
    with pytest.raises(ValueError):
        PulseParams(0.3, 0.0)
    with pytest.raises(ValueError):
        PulseParams(0.3, 145.0, math.inf)


def test_area_parameterization():
    p = PulseParams.from_area(0.7, 145.0, -63.0)
    assert p.alpha == pytest.approx(0.35)
    assert p.area_over_pi == pytest.approx(0.7)


def test_unitarity_on_grid():
    worst = max(abs(abs(rz.survival_factor(p)) ** 2 + abs(rz.transfer_factor(p)) ** 2 - 1)
                for p in grid_pulses())
    assert worst < 1e-10


def test_transfer_matches_closed_form():
    worst = max(abs(rz.transfer_factor(p) - rz.transfer_factor_closed(p)) for p in grid_pulses())
    assert worst < 1e-10


def test_frozen_survival_values():
    # mpmath at 30 digits, independent of the Lanczos code
    p = PulseParams(0.35, 145.0, -63.0)
    assert rz.pxx_amplitude(p) == pytest.approx(0.514596936816542897, abs=1e-14)
    assert rz.dvh_amplitude(p) == pytest.approx(-0.283587442568591013, abs=1e-13)
    assert rz.rotation_angle(p) == pytest.approx(-0.419209725449146683, abs=1e-12)


def test_resonant_pi_pulse_transfers_everything():
    p = PulseParams(0.5, 145.0, 0.0)
    assert rz.survival_factor(p) == 0
    assert rz.pxx_closed_form(p, DotParams(34.0), 0.0, "R") == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DegenerateError):
        rz.rotation_angle(p)


def test_two_pi_pulse_quarter_turn():
    p = PulseParams(1.0, 145.0, 145.0)
    assert rz.rotation_angle(p) == pytest.approx(math.pi / 2, abs=1e-12)
    assert rz.pxx_amplitude(p) < 1e-12


def test_resonance_gives_exact_zero():
    for a in ALPHA_GRID:
        assert rz.dvh_amplitude(PulseParams(float(a), 145.0, 0.0)) == 0.0


def test_zero_area_is_identity():
    p = PulseParams(0.0, 145.0, 30.0)
    s = FullState(0.6, 0.8j)
    assert rz.apply_pulse(s, p) == s


def test_pulse_acts_on_matching_component_only():
    s = FullState(0.6, 0.8)
    out_r = rz.apply_pulse(s, PulseParams(0.5, 145.0, 0.0, "R"))
    assert out_r.amp_L == 0.6 and out_r.amp_XXm2 == 0
    assert abs(out_r.amp_XXp2) == pytest.approx(0.8)
    out_l = rz.apply_pulse(s, PulseParams(0.5, 145.0, 0.0, "L"))
    assert out_l.amp_R == 0.8 and out_l.amp_XXp2 == 0
    assert abs(out_l.amp_XXm2) == pytest.approx(0.6)


def test_rotation_guards():
    with pytest.raises(DegenerateError):
        rz.rotation_from_survival(0j, 1e-13)
    with pytest.raises(DomainError):
        rz.rotation_from_survival(complex(0.0, 0.6), 0.25)
    # inside the clamp tolerance the angle saturates at pi/2
    assert rz.rotation_from_survival(complex(0.0, 0.5 * (1 + 1e-10)), 0.25) == pytest.approx(math.pi / 2)


@given(alphas, ratios)
def test_full_state_norm_preserved(a, r):
    s = FullState(0.6, 0.8j)
    out = rz.apply_pulse(s, PulseParams(a, 145.0, 145.0 * r))
    assert abs(out.norm() - 1) < 1e-9


@given(alphas, st.floats(0.01, 3.0))
def test_dvh_amplitude_is_odd(a, r):
    plus = rz.dvh_amplitude(PulseParams(a, 145.0, 145.0 * r))
    minus = rz.dvh_amplitude(PulseParams(a, 145.0, -145.0 * r))
    assert abs(plus + minus) < 1e-10


@given(ratios)
def test_two_pi_pulse_never_squashes(r):
    assert abs(abs(rz.survival_factor(PulseParams(1.0, 145.0, 145.0 * r))) - 1) < 1e-10


@given(alphas, ratios)
def test_rotation_angle_range_and_sign(a, r):
    p = PulseParams(a, 145.0, 145.0 * r)
    try:
        theta = rz.rotation_angle(p)
    except DegenerateError:
        return
    assert abs(theta) <= math.pi / 2
    d0 = rz.dvh_amplitude(p)
    assert theta == 0 or math.copysign(1, theta) == math.copysign(1, d0)


@given(alphas, ratios, st.floats(0.0, 500.0), st.sampled_from(["R", "L"]))
def test_pxx_closed_form_matches_amplitudes(a, r, tau, pol):
    dot = DotParams(34.0)
    p = PulseParams(a, 145.0, 145.0 * r, "R")
    out = rz.apply_pulse(precess(init_exciton(pol), dot, tau), p)
    assert abs(rz.pxx_closed_form(p, dot, tau, pol) - out.biexciton_norm2) < 1e-10


@given(alphas, ratios, st.floats(0.0, 500.0), st.sampled_from(["R", "L"]))
def test_dvh_series_is_bloch_z(a, r, tau, pol):
    dot = DotParams(34.0)
    p = PulseParams(a, 145.0, 145.0 * r, "R")
    out = rz.apply_pulse(precess(init_exciton(pol), dot, tau), p)
    assert abs(rz.dvh_series(p, dot, tau, pol) - bloch_vector(out).z) < 1e-10


@pytest.mark.parametrize("a", [0.2, 0.35, 0.7, 1.2])
def test_rotation_matches_renormalized_bloch_vector(a):
    # spin on the equator at y = -1 is tipped towards +z by theta
    p = PulseParams(a, 145.0, 80.0)
    dot = DotParams(34.0)
    out = rz.apply_pulse(precess(init_exciton("R"), dot, dot.period_ps / 4), p)
    z = bloch_vector(out).z / math.sqrt(rz.exciton_remainder(p))
    assert z == pytest.approx(math.sin(rz.rotation_angle(p)), abs=1e-10)
