import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from excirot.core import (
    HBAR_UEV_PS, CircPolarization, DotParams, FullState, bloch_vector, from_linear,
    fwhm_to_bandwidth, init_exciton, precess, precession_period, to_linear,
)

finite = st.floats(-1.0, 1.0)
times = st.floats(-2000.0, 2000.0)


@st.composite
def exciton_states(draw):
    parts = [draw(finite) for _ in range(8)]
    v = np.array(parts[0::2]) + 1j * np.array(parts[1::2])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.array([1, 0, 0, 0], dtype=complex)
        n = 1.0
    return FullState.from_array(v / n)


def test_period_for_34_ueV():
    assert precession_period(DotParams(34.0)) == pytest.approx(121.63729, abs=1e-4)
    assert abs(2 * math.pi * HBAR_UEV_PS / 34.0 - 121.65) < 0.02


def test_zero_splitting_has_no_period():
    assert math.isinf(DotParams(0.0).period_ps)
    s = precess(init_exciton("R"), DotParams(0.0), 1e4)
    assert s == init_exciton("R")


def test_negative_splitting_rejected():
    with pytest.raises(ValueError):
        DotParams(-1.0)


def test_polarization_convention():
    assert CircPolarization.R.angular_momentum == 1
    assert CircPolarization.L.angular_momentum == -1
    assert CircPolarization.R.opposite is CircPolarization.L
    assert CircPolarization.parse("l") is CircPolarization.L
    with pytest.raises(ValueError):
        CircPolarization.parse("H")


def test_init_exciton():
    s = init_exciton("R")
    assert s.as_array().tolist() == [0, 1, 0, 0]
    assert init_exciton(CircPolarization.L).amp_L == 1


def test_circular_exciton_is_equal_linear_mix():
    h, v = to_linear(init_exciton("R"))
    assert abs(h) ** 2 == pytest.approx(0.5)
    assert abs(v) ** 2 == pytest.approx(0.5)


def test_half_period_swaps_circular_states():
    dot = DotParams(34.0)
    s = precess(init_exciton("R"), dot, 0.5 * dot.period_ps)
    assert abs(s.amp_L) == pytest.approx(1.0, abs=1e-12)
    assert abs(s.amp_R) == pytest.approx(0.0, abs=1e-12)


def test_full_period_returns_up_to_phase():
    dot = DotParams(34.0)
    s = precess(init_exciton("R"), dot, dot.period_ps)
    assert abs(abs(s.amp_R) - 1) < 1e-12


def test_linear_eigenstates_only_acquire_phase():
    dot = DotParams(34.0)
    h_state = from_linear(1.0, 0.0)
    h, v = to_linear(precess(h_state, dot, 37.0))
    assert abs(v) < 1e-12 and abs(abs(h) - 1) < 1e-12


def test_h_advances_relative_to_v():
    # E_V - E_H = +hbar*Delta: <H> picks up exp(+i Delta t) relative to <V>
    dot = DotParams(34.0)
    t = 13.0
    h, v = to_linear(precess(from_linear(1 / math.sqrt(2), 1 / math.sqrt(2)), dot, t))
    rel = (h / v) / abs(h / v)
    assert abs(rel - np.exp(1j * dot.splitting_rad_ps * t)) < 1e-12


def test_bloch_z_is_v_minus_h():
    s = FullState(0.3 + 0.1j, -0.5j, 0.2, 0.0)
    h, v = to_linear(s)
    assert bloch_vector(s).z == pytest.approx(abs(v) ** 2 - abs(h) ** 2, abs=1e-15)


def test_bloch_length_is_exciton_population():
    s = FullState(0.6, 0.0, 0.0, 0.8)
    b = bloch_vector(s)
    assert b.length == pytest.approx(0.36)


def test_fwhm_helper():
    # the stated 9 ps pulse corresponds to ~129 ueV with this convention
    assert fwhm_to_bandwidth(9.0) == pytest.approx(2 * math.acosh(math.sqrt(2)) * HBAR_UEV_PS / 9.0)
    assert 128 < fwhm_to_bandwidth(9.0) < 130


def test_state_coerces_and_rejects_non_finite():
    s = FullState(1, 0, 0, 0)
    assert isinstance(s.amp_L, complex)
    with pytest.raises(ValueError):
        FullState(math.nan)


@given(exciton_states(), times)
def test_precess_preserves_exciton_norm(s, dt):
    out = precess(s, DotParams(34.0), dt)
    assert abs(out.exciton_norm2 - s.exciton_norm2) < 1e-12
    assert out.amp_XXm2 == s.amp_XXm2 and out.amp_XXp2 == s.amp_XXp2


@given(exciton_states(), times, times)
def test_precess_composes(s, t1, t2):
    dot = DotParams(34.0)
    a = precess(precess(s, dot, t1), dot, t2).as_array()
    b = precess(s, dot, t1 + t2).as_array()
    assert np.max(np.abs(a - b)) < 1e-12


@given(exciton_states(), times)
def test_precess_keeps_bloch_z(s, dt):
    assert abs(bloch_vector(precess(s, DotParams(34.0), dt)).z - bloch_vector(s).z) < 1e-12


@given(exciton_states())
def test_linear_round_trip(s):
    back = from_linear(*to_linear(s), s.amp_XXm2, s.amp_XXp2)
    assert np.max(np.abs(back.as_array() - s.as_array())) < 1e-12


@given(exciton_states())
def test_bloch_vector_bounded(s):
    assert bloch_vector(s).length <= 1 + 1e-9
