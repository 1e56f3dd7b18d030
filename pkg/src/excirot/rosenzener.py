"""Analytic exciton-biexciton map for a hyperbolic-secant control pulse.

A circularly polarized pulse with coupling ``-hbar*Omega*sech(sigma t)``
couples one circular exciton component to the J_z = +-2 biexciton and leaves
the other alone. The coupled pair evolves as a Rosen-Zener two-level system,
so the pulse acts as the instantaneous map::

    amp_c  -> F * amp_c
    amp_XX -> amp_XX + T * amp_c

with ``F = 2F1(alpha, -alpha; gamma; 1)``,
``T = (i alpha/gamma) 2F1(alpha+gamma, gamma-alpha; 1+gamma; 1)``,
``alpha = Omega/sigma`` and ``gamma = 1/2 - i delta/(2 sigma)``.
"""

from dataclasses import dataclass
import math

from .core import CircPolarization, FullState, energy_to_angular
from .errors import DegenerateError, DomainError
from .specfun import gauss_2f1_unit

__all__ = [
    "PulseParams", "survival_factor", "transfer_factor", "transfer_factor_closed",
    "apply_pulse", "pxx_amplitude", "pxx_closed_form", "dvh_amplitude",
    "dvh_series", "exciton_remainder", "rotation_angle", "rotation_from_survival", "is_copolarized",
]

ARCSIN_CLAMP_TOL = 1e-9
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PulseParams:
    """One sech control pulse.

    Parameters
    ----------
    alpha : float
        Rabi ratio Omega/sigma. The pulse area is ``2 pi alpha``, so 0.5 is a
        pi pulse and 0.35 a 0.7-pi pulse.
    bandwidth_ueV : float
        hbar*sigma in micro-eV, strictly positive.
    detuning_ueV : float
        hbar*(omega - omega_0) in micro-eV.
    pol : CircPolarization
        Circular polarization of the pulse.
    """

    alpha: float
    bandwidth_ueV: float = 145.0
    detuning_ueV: float = 0.0
    pol: CircPolarization = CircPolarization.R

    def __post_init__(self):
        object.__setattr__(self, "pol", CircPolarization.parse(self.pol))
        for name in ("alpha", "bandwidth_ueV", "detuning_ueV"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha!r}")
        if self.bandwidth_ueV <= 0:
            raise ValueError(f"bandwidth_ueV must be > 0, got {self.bandwidth_ueV!r}")

    @classmethod
    def from_area(cls, area_over_pi, bandwidth_ueV=145.0, detuning_ueV=0.0,
                  pol=CircPolarization.R):
        """Build a pulse from its area in units of pi (``alpha = area_over_pi / 2``)."""
        return cls(0.5 * area_over_pi, bandwidth_ueV, detuning_ueV, pol)

    @property
    def area_over_pi(self):
        return 2.0 * self.alpha

    @property
    def detuning_ratio(self):
        """delta/sigma."""
        return self.detuning_ueV / self.bandwidth_ueV

    @property
    def gamma(self):
        return complex(0.5, -0.5 * self.detuning_ratio)

    @property
    def bandwidth_rad_ps(self):
        return energy_to_angular(self.bandwidth_ueV)

    @property
    def detuning_rad_ps(self):
        return energy_to_angular(self.detuning_ueV)

    @property
    def rabi_rad_ps(self):
        return self.alpha * self.bandwidth_rad_ps

    def replace(self, **changes):
        fields = dict(alpha=self.alpha, bandwidth_ueV=self.bandwidth_ueV,
                      detuning_ueV=self.detuning_ueV, pol=self.pol)
        fields.update(changes)
        return PulseParams(**fields)


def is_copolarized(pulse, first_pol):
    return pulse.pol is CircPolarization.parse(first_pol)


def survival_factor(pulse):
    """Amplitude factor F multiplying the coupled circular exciton component."""
    return gauss_2f1_unit(pulse.alpha, -pulse.alpha, pulse.gamma)


def transfer_factor(pulse):
    """Amplitude factor carrying the coupled exciton into the biexciton."""
    alpha, g = pulse.alpha, pulse.gamma
    if alpha == 0.0:
        return 0j
    return 1j * alpha / g * gauss_2f1_unit(alpha + g, g - alpha, 1.0 + g)


def transfer_factor_closed(pulse):
    """Closed form ``i sin(pi alpha) / cosh(pi delta / (2 sigma))`` of :func:`transfer_factor`."""
    return 1j * math.sin(math.pi * pulse.alpha) / math.cosh(0.5 * math.pi * pulse.detuning_ratio)


def apply_pulse(state, pulse):
    """Apply the instantaneous pulse map to a :class:`FullState`."""
    f = survival_factor(pulse)
    t = transfer_factor(pulse)
    if pulse.pol is CircPolarization.R:
        return FullState(state.amp_L, f * state.amp_R, state.amp_XXm2,
                         state.amp_XXp2 + t * state.amp_R)
    return FullState(f * state.amp_L, state.amp_R, state.amp_XXm2 + t * state.amp_L,
                     state.amp_XXp2)


def pxx_amplitude(pulse):
    """Biexciton population from a pure coupled exciton: ``sech^2(pi delta/2 sigma) sin^2(pi alpha)``."""
    s = math.sin(math.pi * pulse.alpha)
    c = math.cosh(0.5 * math.pi * pulse.detuning_ratio)
    return (s / c) ** 2


def exciton_remainder(pulse):
    """``1 - pxx_amplitude(pulse)`` written without cancellation.

    ``cos^2(pi alpha) + sin^2(pi alpha) tanh^2(pi delta/2 sigma)``.
    """
    s = math.sin(math.pi * pulse.alpha)
    c = math.cos(math.pi * pulse.alpha)
    t = math.tanh(0.5 * math.pi * pulse.detuning_ratio)
    return c * c + (s * t) ** 2


def pxx_closed_form(pulse, dot, tau, first_pol):
    """Biexciton population after the pulse at delay ``tau`` (ps)."""
    phase = math.cos(dot.splitting_rad_ps * tau)
    sign = 1.0 if is_copolarized(pulse, first_pol) else -1.0
    return pxx_amplitude(pulse) * (0.5 + 0.5 * sign * phase)


def _dvh_ratio(pulse):
    # Gamma^2(z) / (Gamma(z + alpha) Gamma(z - alpha)), z = 1/2 + i delta/(2 sigma);
    # this is conj(F) and vanishes exactly at the denominator poles
    return gauss_2f1_unit(pulse.alpha, -pulse.alpha, pulse.gamma.conjugate())


def dvh_amplitude(pulse):
    """Amplitude of the V-minus-H oscillation for a co-polarized pulse.

    Odd in the detuning, so it is negative below resonance, positive above
    and exactly zero on resonance.
    """
    return _dvh_ratio(pulse).imag


def dvh_series(pulse, dot, tau, first_pol):
    """V-minus-H population difference after the pulse at delay ``tau`` (ps)."""
    sign = 1.0 if is_copolarized(pulse, first_pol) else -1.0
    return sign * dvh_amplitude(pulse) * math.sin(dot.splitting_rad_ps * tau)


def rotation_from_survival(conj_f, remaining):
    """Rotation angle from ``conj(F)`` and the exciton population ``1 - P0_XX`` left by the pulse.

    ``arcsin(Im conj(F) / sqrt(remaining))``, evaluated as
    ``atan2(Im conj(F), |Re conj(F)|)`` which is the same angle in exact
    arithmetic (``|F|^2 = remaining``) but stays accurate near +-pi/2.
    """
    if remaining < DEGENERATE_TOL:
        raise DegenerateError(
            f"exciton subspace empty after pulse (1 - P_XX = {remaining:.3e})")
    ratio = conj_f.imag / math.sqrt(remaining)
    if abs(ratio) > 1.0 + ARCSIN_CLAMP_TOL:
        raise DomainError(f"arcsin argument {ratio!r} outside [-1, 1]")
    return math.atan2(conj_f.imag, abs(conj_f.real))


def rotation_angle(pulse):
    """Rotation of the exciton spin about the R-L axis imparted by ``pulse`` (rad).

    Lies in [-pi/2, pi/2] and carries the sign of :func:`dvh_amplitude`.
    Raises :class:`DegenerateError` when the pulse empties the exciton.
    """
    return rotation_from_survival(_dvh_ratio(pulse), exciton_remainder(pulse))
