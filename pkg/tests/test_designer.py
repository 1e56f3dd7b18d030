import math

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from excirot.designer import (
    DesignTarget, bisect, design_detuning, golden_section_max,
    max_rotation_angle,
)
from excirot.errors import InfeasibleError
from excirot.rosenzener import PulseParams, rotation_angle

THETA_MAX_035 = 0.419218768635563166   # mpmath, 30 digits
RATIO_STAR_035 = 0.431696673863237265


@pytest.fixture(scope="module")
def peak():
    return max_rotation_angle(0.35)


def test_golden_section():
    x, fx = golden_section_max(lambda t: -(t - 1.3) ** 2, 0.0, 3.0)
    assert x == pytest.approx(1.3, abs=1e-8)


def test_bisect():
    x, it = bisect(lambda t: t ** 3 - 2, 0.0, 2.0, tol=1e-14)
    assert x == pytest.approx(2 ** (1 / 3), abs=1e-12)
    with pytest.raises(ValueError):
        bisect(lambda t: t * t + 1, -1.0, 1.0)


def test_theta_max_frozen(peak):
    theta_max, delta_star = peak
    assert theta_max == pytest.approx(THETA_MAX_035, abs=1e-12)
    # the maximum is flat, so its location is only determined to ~sqrt(eps)
    assert delta_star / 145.0 == pytest.approx(RATIO_STAR_035, abs=1e-6)


def test_theta_max_for_two_pi_pulse():
    theta_max, delta_star = max_rotation_angle(1.0)
    assert abs(theta_max - math.pi / 2) < 1e-9


def test_theta_max_continuous_in_alpha():
    # rises like a square root towards pi/2 as alpha -> 1/2, then stays there
    below = np.array([max_rotation_angle(a)[0] for a in np.linspace(0.0, 0.4999, 40)])
    assert below[0] == 0.0
    assert np.all(np.diff(below) > 0)
    assert math.pi / 2 - below[-1] < 0.05
    above = np.array([max_rotation_angle(a)[0] for a in np.linspace(0.5001, 1.5, 12)])
    assert np.max(np.abs(above - math.pi / 2)) < 1e-9


def test_zero_target():
    res = design_detuning(DesignTarget(0.0, 0.35))
    assert res.detuning_ueV == 0.0 and res.achieved_theta == 0.0


def test_quarter_turn_with_two_pi_pulse():
    res = design_detuning(DesignTarget(math.pi / 2, 1.0))
    assert res.detuning_ueV / 145.0 == pytest.approx(1.0, abs=1e-4)
    assert res.residual_p_xx < 1e-8


def test_infeasible_target_carries_maximum(peak):
    with pytest.raises(InfeasibleError) as info:
        design_detuning(DesignTarget(0.6, 0.35))
    assert info.value.theta_max == pytest.approx(peak[0])
    assert f"{peak[0]:.6g}" in str(info.value)


def test_target_validation():
    with pytest.raises(ValueError):
        DesignTarget(2.0, 0.35)
    with pytest.raises(ValueError):
        DesignTarget(0.1, 0.35, sign_preference="upward")


def test_inner_branch_preferred(peak):
    res = design_detuning(DesignTarget(0.3, 0.35))
    assert 0 < res.detuning_ueV <= peak[1]
    assert res.alternatives_ueV and all(abs(a) > abs(res.detuning_ueV) for a in res.alternatives_ueV)


def test_large_area_reaches_angle_from_both_sides():
    # for alpha = 1.5 the angle changes sign across the detuning axis
    res = design_detuning(DesignTarget(0.4, 1.5))
    assert res.detuning_ueV < 0
    assert len(res.alternatives_ueV) == 1 and res.alternatives_ueV[0] > abs(res.detuning_ueV)
    for delta in (res.detuning_ueV, *res.alternatives_ueV):
        assert rotation_angle(PulseParams(1.5, 145.0, delta)) == pytest.approx(0.4, abs=1e-8)
    mirrored = design_detuning(DesignTarget(-0.4, 1.5))
    assert mirrored.detuning_ueV == pytest.approx(-res.detuning_ueV, abs=1e-8)


def test_smallest_detuning_wins_over_sign_preference():
    pos = design_detuning(DesignTarget(0.4, 1.5, sign_preference="positive_detuning"))
    neg = design_detuning(DesignTarget(0.4, 1.5, sign_preference="negative_detuning"))
    assert pos.detuning_ueV == neg.detuning_ueV


@hsettings(max_examples=8, deadline=None)
@given(st.floats(-0.95, 0.95))
def test_round_trip_and_oddness(frac):
    theta = frac * THETA_MAX_035
    plus = design_detuning(DesignTarget(abs(theta), 0.35))
    minus = design_detuning(DesignTarget(-abs(theta), 0.35))
    assert abs(rotation_angle(PulseParams(0.35, 145.0, plus.detuning_ueV)) - abs(theta)) < 1e-8
    assert abs(minus.detuning_ueV + plus.detuning_ueV) < 1e-8 * 145.0
