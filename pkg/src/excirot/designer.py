"""Choose the control-pulse detuning that produces a requested rotation angle.

The pulse area (alpha) and bandwidth are held fixed; only the detuning is
solved for. ``theta(delta)`` is odd in delta, starts at zero on resonance and
reaches its largest value ``theta_max`` at ``delta_star``; the preferred
solution lies on the inner branch ``|delta| <= delta_star``.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import DegenerateError, InfeasibleError, NonConvergenceError
from .rosenzener import PulseParams, pxx_amplitude, rotation_angle

__all__ = ["SignPreference", "DesignTarget", "DesignResult", "golden_section_max",
           "bisect", "max_rotation_angle", "design_detuning"]

MAX_RATIO = 10.0
SCAN_POINTS = 2001
BISECT_MAX_ITER = 200
ANGLE_TOL = 1e-10
FEASIBILITY_SLACK = 1e-9
DUPLICATE_TOL = 1e-6  # in units of delta/sigma

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class SignPreference(Enum):
    POSITIVE = "positive_detuning"
    NEGATIVE = "negative_detuning"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"sign_preference must be 'positive_detuning' or 'negative_detuning', got {value!r}"
            ) from None


@dataclass(frozen=True)
class DesignTarget:
    theta_rad: float
    alpha: float
    bandwidth_ueV: float = 145.0
    sign_preference: SignPreference = SignPreference.POSITIVE

    def __post_init__(self):
        object.__setattr__(self, "sign_preference", SignPreference.parse(self.sign_preference))
        if not abs(self.theta_rad) <= math.pi / 2:
            raise ValueError(f"|theta_rad| must not exceed pi/2, got {self.theta_rad!r}")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.bandwidth_ueV <= 0:
            raise ValueError("bandwidth_ueV must be > 0")


@dataclass(frozen=True)
class DesignResult:
    detuning_ueV: float
    achieved_theta: float
    residual_p_xx: float
    iterations: int
    alternatives_ueV: tuple = ()

    def pulse(self, target):
        return PulseParams(target.alpha, target.bandwidth_ueV, self.detuning_ueV)


def golden_section_max(f, lo, hi, tol=1e-10):
    """Locate the maximum of a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(a), a), (f(b), b)]
    fx, x = max(candidates)
    return x, fx


def bisect(f, lo, hi, tol=ANGLE_TOL, max_iter=BISECT_MAX_ITER):
    """Root of ``f`` in ``[lo, hi]`` given a sign change; returns ``(x, iterations)``."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if f_lo * f_hi > 0:
        raise ValueError("bisection bracket does not straddle a root")
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= tol or mid in (lo, hi):
            return mid, it
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    raise NonConvergenceError(f"bisection did not converge in {max_iter} iterations")


def _theta_of_ratio(alpha):
    def theta(ratio):
        try:
            return rotation_angle(PulseParams(alpha, 1.0, ratio))
        except DegenerateError:
            # full transfer on resonance (alpha = 1/2, 3/2, ...): angle undefined
            return math.nan
    return theta


def max_rotation_angle(alpha, bandwidth_ueV=145.0):
    """Largest rotation reachable with positive detuning.

    Returns ``(theta_max, delta_star_ueV)``. A coarse scan over
    ``delta/sigma in (0, 10]`` picks the best cell, then golden-section
    search refines it to 1e-10 in delta/sigma.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if alpha == 0:
        return 0.0, 0.0
    theta = _theta_of_ratio(alpha)
    grid = np.linspace(0.0, MAX_RATIO, SCAN_POINTS)[1:]
    values = np.array([theta(r) for r in grid])
    i = int(np.nanargmax(values))
    lo = grid[max(i - 1, 0)] if i > 0 else grid[0] * 1e-3
    hi = grid[min(i + 1, grid.size - 1)]
    ratio, theta_max = golden_section_max(theta, lo, hi)
    return theta_max, ratio * bandwidth_ueV


def design_detuning(target):
    """Detuning that gives ``target.theta_rad`` at fixed area and bandwidth.

    The inner branch between resonance and ``delta_star`` is always
    searched by bisection. Other brackets found on a scan of
    ``|delta/sigma| <= 10`` are solved as well and reported in
    ``alternatives_ueV``; the smallest ``|delta|`` wins, with
    ``sign_preference`` breaking ties.

    Raises
    ------
    InfeasibleError
        When ``|theta|`` exceeds the reachable maximum (attached as ``theta_max``).
    """
    theta_max, delta_star = max_rotation_angle(target.alpha, target.bandwidth_ueV)
    goal = target.theta_rad
    if abs(goal) > theta_max + FEASIBILITY_SLACK:
        raise InfeasibleError(
            f"target rotation {goal:.6g} rad exceeds the reachable maximum "
            f"{theta_max:.6g} rad for alpha = {target.alpha:g}", theta_max)
    if goal == 0.0:
        return DesignResult(0.0, 0.0, pxx_amplitude(PulseParams(target.alpha, 1.0, 0.0)), 0)

    theta = _theta_of_ratio(target.alpha)
    goal_eff = math.copysign(min(abs(goal), theta_max), goal)

    def residual(ratio):
        return theta(ratio) - goal_eff

    # inner branch: between resonance and +-delta_star on the side matching the sign
    inner_end = math.copysign(delta_star / target.bandwidth_ueV, goal)
    solutions = []
    r_end = residual(inner_end)
    r_zero = residual(0.0)
    if abs(r_end) <= ANGLE_TOL:
        solutions.append((inner_end, 0))
    elif r_zero * r_end < 0:
        lo, hi = sorted((0.0, inner_end))
        solutions.append(bisect(residual, lo, hi))
    inner_lo, inner_hi = sorted((0.0, inner_end))
    inner_solved = bool(solutions)

    grid = np.linspace(-MAX_RATIO, MAX_RATIO, 2 * SCAN_POINTS - 1)
    res = np.array([residual(r) for r in grid])
    for i in range(grid.size - 1):
        lo, hi = grid[i], grid[i + 1]
        if inner_solved and inner_lo <= lo and hi <= inner_hi:
            continue
        if res[i] * res[i + 1] < 0:
            found = bisect(residual, lo, hi)
            if all(abs(found[0] - known[0]) > DUPLICATE_TOL for known in solutions):
                solutions.append(found)
    if not solutions:
        raise InfeasibleError(
            f"no detuning with |delta/sigma| <= {MAX_RATIO:g} reaches {goal:.6g} rad", theta_max)

    preferred = 1.0 if target.sign_preference is SignPreference.POSITIVE else -1.0
    solutions.sort(key=lambda sol: (abs(sol[0]), 0 if sol[0] * preferred > 0 else 1))
    best, iterations = solutions[0]
    pulse = PulseParams(target.alpha, target.bandwidth_ueV, best * target.bandwidth_ueV)
    alternatives = tuple(sol[0] * target.bandwidth_ueV for sol in solutions[1:])
    return DesignResult(
        detuning_ueV=best * target.bandwidth_ueV,
        achieved_theta=rotation_angle(pulse),
        residual_p_xx=pxx_amplitude(pulse),
        iterations=iterations,
        alternatives_ueV=alternatives,
    )
