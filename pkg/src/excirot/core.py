"""Exciton/biexciton state, polarization bases and free spin precession.

Basis order is ``(|L>, |R>, |XX,-2>, |XX,+2>)``. The linear eigenstates are
``|H> = (|R> + |L>)/sqrt(2)`` and ``|V> = (|R> - |L>)/(i sqrt(2))``; with
the phase convention used here ``E_V - E_H = +hbar*Delta``.

Units: energies in micro-eV, times in ps, angular frequencies in rad/ps.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

__all__ = [
    "HBAR_UEV_PS", "CircPolarization", "DotParams", "FullState", "BlochVector",
    "energy_to_angular", "precession_period", "fwhm_to_bandwidth",
    "init_exciton", "to_linear", "from_linear", "precess", "bloch_vector",
]

HBAR_UEV_PS = 658.2119569
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def energy_to_angular(energy_ueV):
    """Convert an energy in micro-eV to an angular frequency in rad/ps."""
    return energy_ueV / HBAR_UEV_PS


def fwhm_to_bandwidth(fwhm_ps):
    """Bandwidth hbar*sigma (micro-eV) of a sech pulse with intensity FWHM ``fwhm_ps``.

    The intensity profile sech^2(sigma t) has FWHM ``2 arccosh(sqrt 2) / sigma``.
    Never applied implicitly; configurations give the bandwidth directly.
    """
    if fwhm_ps <= 0:
        raise ValueError("fwhm_ps must be positive")
    return 2.0 * math.acosh(math.sqrt(2.0)) * HBAR_UEV_PS / fwhm_ps


class CircPolarization(Enum):
    """Circular polarization; R carries angular momentum +1, L carries -1."""

    R = "R"
    L = "L"

    @property
    def angular_momentum(self):
        return 1 if self is CircPolarization.R else -1

    @property
    def opposite(self):
        return CircPolarization.L if self is CircPolarization.R else CircPolarization.R

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"polarization must be 'R' or 'L', got {value!r}") from None


@dataclass(frozen=True)
class DotParams:
    """Quantum-dot parameters: exciton fine-structure splitting hbar*Delta."""

    splitting_ueV: float = 34.0

    def __post_init__(self):
        if not (math.isfinite(self.splitting_ueV) and self.splitting_ueV >= 0):
            raise ValueError(f"splitting_ueV must be finite and >= 0, got {self.splitting_ueV!r}")

    @property
    def splitting_rad_ps(self):
        return energy_to_angular(self.splitting_ueV)

    @property
    def period_ps(self):
        return precession_period(self)


def precession_period(dot):
    """Spin precession period ``2 pi hbar / (hbar Delta)`` in ps."""
    if dot.splitting_ueV == 0:
        return math.inf
    return 2.0 * math.pi * HBAR_UEV_PS / dot.splitting_ueV


@dataclass(frozen=True)
class FullState:
    """Pure state over ``|L>, |R>, |XX,-2>, |XX,+2>``."""

    amp_L: complex = 0j
    amp_R: complex = 0j
    amp_XXm2: complex = 0j
    amp_XXp2: complex = 0j

    def __post_init__(self):
        for name in ("amp_L", "amp_R", "amp_XXm2", "amp_XXp2"):
            value = complex(getattr(self, name))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"{name} is not finite: {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {values.shape}")
        return cls(*(complex(v) for v in values))

    def as_array(self):
        return np.array([self.amp_L, self.amp_R, self.amp_XXm2, self.amp_XXp2], dtype=complex)

    @property
    def exciton_norm2(self):
        return abs(self.amp_L) ** 2 + abs(self.amp_R) ** 2

    @property
    def biexciton_norm2(self):
        return abs(self.amp_XXm2) ** 2 + abs(self.amp_XXp2) ** 2

    @property
    def norm2(self):
        return self.exciton_norm2 + self.biexciton_norm2

    def norm(self):
        return math.sqrt(self.norm2)


@dataclass(frozen=True)
class BlochVector:
    """Exciton-subspace Bloch vector. ``z`` is the V-minus-H population difference."""

    x: float
    y: float
    z: float

    def as_array(self):
        return np.array([self.x, self.y, self.z])

    @property
    def length(self):
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)


def init_exciton(pol):
    """Exciton created by a circularly polarized pulse; spin fully preserved."""
    pol = CircPolarization.parse(pol)
    if pol is CircPolarization.R:
        return FullState(amp_R=1.0)
    return FullState(amp_L=1.0)


def to_linear(state):
    """Return ``(<H|psi>, <V|psi>)``."""
    p, q = state.amp_L, state.amp_R
    amp_h = (p + q) * _INV_SQRT2
    amp_v = 1j * (q - p) * _INV_SQRT2
    return amp_h, amp_v


def from_linear(amp_h, amp_v, amp_XXm2=0j, amp_XXp2=0j):
    """Inverse of :func:`to_linear`: build a state from H/V amplitudes."""
    amp_h, amp_v = complex(amp_h), complex(amp_v)
    amp_L = (amp_h + 1j * amp_v) * _INV_SQRT2
    amp_R = (amp_h - 1j * amp_v) * _INV_SQRT2
    return FullState(amp_L, amp_R, amp_XXm2, amp_XXp2)


def precess(state, dot, dt):
    """Free exciton spin precession over ``dt`` ps; biexciton amplitudes untouched.

    Equivalent to ``exp(+i Delta dt/2 sigma_x)`` on ``(amp_L, amp_R)``, i.e.
    the H component advances by ``exp(i Delta dt)`` relative to V, with the
    common phase dropped.
    """
    if not math.isfinite(dt):
        raise ValueError(f"dt must be finite, got {dt!r}")
    phi = 0.5 * dot.splitting_rad_ps * dt
    c, s = math.cos(phi), math.sin(phi)
    p, q = state.amp_L, state.amp_R
    return FullState(c * p + 1j * s * q, 1j * s * p + c * q, state.amp_XXm2, state.amp_XXp2)


def bloch_vector(state):
    """Bloch vector of the (unnormalized) exciton part of ``state``.

    ``x = |R|^2 - |L|^2``, ``y = -2 Im(L R*)`` and ``z = -2 Re(L R*)``,
    so that ``z = |<V|psi>|^2 - |<H|psi>|^2``. The length equals the exciton
    population and is below one once the biexciton is populated.
    """
    p, q = state.amp_L, state.amp_R
    cross = p * q.conjugate()
    return BlochVector(
        x=abs(q) ** 2 - abs(p) ** 2,
        y=-2.0 * cross.imag,
        z=-2.0 * cross.real,
    )
