"""Two-pulse pump-probe simulation of the exciton spin rotation.

The first pulse creates a circularly polarized exciton at t = 0, which then
precesses freely. The control pulse arrives at delay ``tau`` and is applied
either through the analytic map or the numerical propagator. Readout is a
time-integrated PL proxy: the remaining exciton populations plus the
biexciton population, which decays through one exciton split equally
between the H and V lines.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np
from scipy.optimize import curve_fit

from . import rosenzener as rz
from .core import CircPolarization, DotParams, init_exciton, precess, to_linear
from .errors import DegenerateError, MissingBaselineError
from .propagator import PropagationSettings, propagate, propagate_many, scattering_maps

__all__ = [
    "METHODS", "ExperimentConfig", "Observables", "SweepResult",
    "pl_intensities", "state_after_pulse", "run_single", "sweep_delay",
    "sweep_detuning", "normalized_difference", "fit_period", "zero_crossings",
    "extrema", "fwhm",
]

METHODS = ("analytic", "numeric")


@dataclass(frozen=True)
class ExperimentConfig:
    dot: DotParams = field(default_factory=DotParams)
    first_pol: CircPolarization = CircPolarization.R
    pulse: rz.PulseParams = field(default_factory=lambda: rz.PulseParams(0.35, 145.0, -63.0))
    method: str = "analytic"
    settings: PropagationSettings = field(default_factory=PropagationSettings)

    def __post_init__(self):
        object.__setattr__(self, "first_pol", CircPolarization.parse(self.first_pol))
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    @property
    def copolarized(self):
        return rz.is_copolarized(self.pulse, self.first_pol)

    def with_pulse(self, **changes):
        return replace(self, pulse=self.pulse.replace(**changes))


@dataclass(frozen=True)
class Observables:
    """Measured quantities for one delay/detuning point.

    ``d_vh`` is the V-minus-H population difference at this point;
    ``d0_vh`` and ``theta_rad`` describe the control pulse itself (signed for
    the co/cross configuration) and do not depend on the delay.
    ``theta_rad`` is NaN when the pulse empties the exciton.
    """

    p_xx: float
    i_h: float
    i_v: float
    d_vh: float
    theta_rad: float
    d0_vh: float


@dataclass(frozen=True)
class SweepResult:
    variable_name: str
    points: tuple

    def __post_init__(self):
        points = tuple((float(x), obs) for x, obs in self.points)
        xs = [x for x, _ in points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError(f"{self.variable_name} values must be strictly increasing")
        object.__setattr__(self, "points", points)

    def __len__(self):
        return len(self.points)

    @property
    def x(self):
        return np.array([x for x, _ in self.points])

    def column(self, name):
        return np.array([getattr(obs, name) for _, obs in self.points])


def pl_intensities(state):
    """Return ``(i_h, i_v, p_xx)`` for a state right after the control pulse."""
    amp_h, amp_v = to_linear(state)
    p_xx = state.biexciton_norm2
    return abs(amp_h) ** 2 + 0.5 * p_xx, abs(amp_v) ** 2 + 0.5 * p_xx, p_xx


def _pulse_figures(conj_f, remaining, copolarized):
    sign = 1.0 if copolarized else -1.0
    try:
        theta = rz.rotation_from_survival(conj_f, remaining)
    except DegenerateError:
        theta = math.nan
    return sign * theta, sign * conj_f.imag


def _analytic_figures(config):
    pulse = config.pulse
    conj_f = rz.survival_factor(pulse).conjugate()
    return _pulse_figures(conj_f, rz.exciton_remainder(pulse), config.copolarized)


def _numeric_figures(configs):
    unique = list(dict.fromkeys(c.pulse for c in configs))
    maps = dict(zip(unique, scattering_maps(unique, configs[0].settings, configs[0].dot)))
    out = []
    for c in configs:
        m = maps[c.pulse]
        f = complex(m[0, 0])
        out.append(_pulse_figures(f.conjugate(), abs(f) ** 2, c.copolarized))
    return out


def _observables(state, figures):
    i_h, i_v, p_xx = pl_intensities(state)
    amp_h, amp_v = to_linear(state)
    d_vh = abs(amp_v) ** 2 - abs(amp_h) ** 2
    theta, d0 = figures
    return Observables(p_xx=p_xx, i_h=i_h, i_v=i_v, d_vh=d_vh, theta_rad=theta, d0_vh=d0)


def state_after_pulse(config, tau):
    """Full state right after the control pulse at delay ``tau`` (ps)."""
    state = init_exciton(config.first_pol)
    if tau < 0:
        return state
    state = precess(state, config.dot, tau)
    if config.method == "numeric":
        return propagate(state, config.dot, config.pulse, config.settings)
    return rz.apply_pulse(state, config.pulse)


def run_single(config, tau):
    """Observables for one delay ``tau`` (ps).

    A negative delay means the control pulse precedes the exciton and acts
    on an empty dot, giving the no-control-pulse baseline.
    """
    if config.method == "numeric":
        figures = _numeric_figures([config])[0]
    else:
        figures = _analytic_figures(config)
    return _observables(state_after_pulse(config, tau), figures)


def _check_grid(values, name):
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"{name} grid must be a non-empty 1-D sequence")
    if np.any(np.diff(values) <= 0):
        raise ValueError(f"{name} grid must be strictly increasing")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} grid must be finite")
    return values


def _evaluate(configs, taus):
    """Observables for paired (config, tau) points; numeric runs are batched."""
    states = []
    for config, tau in zip(configs, taus):
        state = init_exciton(config.first_pol)
        states.append(state if tau < 0 else precess(state, config.dot, tau))
    if configs[0].method == "analytic":
        out = []
        for config, tau, state in zip(configs, taus, states):
            if tau >= 0:
                state = rz.apply_pulse(state, config.pulse)
            out.append(_observables(state, _analytic_figures(config)))
        return out
    figures = _numeric_figures(configs)
    active = [i for i, tau in enumerate(taus) if tau >= 0]
    results = propagate_many([states[i] for i in active], configs[0].dot,
                             [configs[i].pulse for i in active], configs[0].settings)
    for i, res in zip(active, results):
        states[i] = res.state
    return [_observables(s, f) for s, f in zip(states, figures)]


def sweep_delay(config, tau_grid):
    """Run the two-pulse protocol over a strictly increasing delay grid (ps)."""
    taus = _check_grid(tau_grid, "tau_ps")
    obs = _evaluate([config] * taus.size, list(taus))
    return SweepResult("tau_ps", tuple(zip(taus, obs)))


def sweep_detuning(config, delta_grid, tau):
    """Vary the control-pulse detuning (micro-eV) at fixed delay ``tau`` (ps)."""
    deltas = _check_grid(delta_grid, "delta_ueV")
    configs = [config.with_pulse(detuning_ueV=float(d)) for d in deltas]
    obs = _evaluate(configs, [tau] * deltas.size)
    return SweepResult("delta_ueV", tuple(zip(deltas, obs)))


def normalized_difference(series):
    """Replace ``d_vh`` by ``(i_v - i_h) / S``, S the mean ``i_v + i_h`` at negative x."""
    baseline = [obs.i_v + obs.i_h for x, obs in series.points if x < 0]
    if not baseline:
        raise MissingBaselineError("normalization needs at least one negative-delay point")
    norm = float(np.mean(baseline))
    points = tuple((x, replace(obs, d_vh=(obs.i_v - obs.i_h) / norm)) for x, obs in series.points)
    return SweepResult(series.variable_name, points)


# -- analysis helpers -------------------------------------------------------

def fit_period(x, y, guess):
    """Least-squares fit of ``A + B cos(2 pi x / T + phi)``; returns ``T``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def model(t, offset, amp, period, phase):
        return offset + amp * np.cos(2.0 * np.pi * t / period + phase)

    amp0 = 0.5 * (np.max(y) - np.min(y))
    p0 = (float(np.mean(y)), amp0, float(guess), 0.0)
    params, _ = curve_fit(model, x, y, p0=p0, maxfev=20000)
    return abs(params[2])


def zero_crossings(x, y):
    """Linearly interpolated positions where ``y`` changes sign (exact zeros included)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = []
    for i in range(len(y) - 1):
        if y[i] == 0.0:
            out.append(x[i])
        elif y[i] * y[i + 1] < 0:
            out.append(x[i] - y[i] * (x[i + 1] - x[i]) / (y[i + 1] - y[i]))
    if len(y) and y[-1] == 0.0:
        out.append(x[-1])
    return np.array(out)


def extrema(x, y):
    """Positions of interior local maxima and minima (grid points)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = np.diff(y)
    idx = [i + 1 for i in range(len(d) - 1) if d[i] * d[i + 1] < 0]
    return x[idx]


def fwhm(x, y):
    """Full width at half maximum of a single-peaked curve, linearly interpolated."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    peak = int(np.argmax(y))
    half = 0.5 * y[peak]
    left = right = None
    for i in range(peak, 0, -1):
        if y[i - 1] < half <= y[i]:
            left = x[i - 1] + (half - y[i - 1]) * (x[i] - x[i - 1]) / (y[i] - y[i - 1])
            break
    for i in range(peak, len(y) - 1):
        if y[i + 1] < half <= y[i]:
            right = x[i] + (y[i] - half) * (x[i + 1] - x[i]) / (y[i] - y[i + 1])
            break
    if left is None or right is None:
        raise ValueError("curve does not fall below half maximum on both sides")
    return right - left
