"""Brute-force Schroedinger propagation through one sech pulse.

Serves as the independent oracle for :mod:`excirot.rosenzener`. The
coupled problem is three-level: uncoupled exciton, coupled exciton and the
biexciton reached by the pulse. In the frame co-rotating with the laser::

    H/hbar = -(Delta/2) sigma_x [exciton block, optional]
             - delta |XX><XX|
             - Omega sech(sigma (t - t_c)) (|c><XX| + |XX><c|)

Output states are returned in the interaction frame of the static part,
referenced to the pulse centre, so they compare directly with the
instantaneous analytic map.

Integration runs in dimensionless time ``s = sigma t`` with an embedded
Dormand-Prince 5(4) pair. Many pulses can be propagated in one batched
solve; the step size is then controlled by the worst problem in the batch.
"""

from dataclasses import dataclass
import math

import numpy as np

from .core import CircPolarization, DotParams, FullState
from .errors import NormError, ToleranceError

__all__ = ["PropagationSettings", "PropagationResult", "hamiltonian",
           "propagate", "propagate_detailed", "propagate_many", "scattering_map",
           "scattering_maps", "dormand_prince"]

NORM_ERROR_TOL = 1e-6
MAX_STEPS = 200_000

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])
_E = _B5 - _B4


@dataclass(frozen=True)
class PropagationSettings:
    """Integration controls.

    ``window`` is the half-span in units of 1/sigma, ``rel_tol`` the
    relative tolerance handed to the adaptive stepper. Setting
    ``include_splitting_during_pulse`` keeps the fine-structure precession
    active while the pulse is on.
    """

    window: float = 20.0
    rel_tol: float = 1e-10
    include_splitting_during_pulse: bool = False

    def __post_init__(self):
        if not self.window >= 5:
            raise ValueError(f"window must be >= 5, got {self.window!r}")
        if not 1e-14 <= self.rel_tol <= 1e-6:
            raise ValueError(f"rel_tol must lie in [1e-14, 1e-6], got {self.rel_tol!r}")


@dataclass(frozen=True)
class PropagationResult:
    state: FullState
    norm_drift: float
    n_steps: int


def hamiltonian(t, dot, pulse, settings=PropagationSettings(), t_center=0.0):
    """H/hbar in rad/ps at time ``t`` (ps).

    Basis ``(|L>, |R>, |XX,+2>)`` for an R pulse and ``(|R>, |L>, |XX,-2>)``
    for an L pulse, so index 1 is always the coupled exciton. Hermitian by
    construction.
    """
    h = np.zeros((3, 3), dtype=complex)
    if settings.include_splitting_during_pulse:
        h[0, 1] = h[1, 0] = -0.5 * dot.splitting_rad_ps
    h[2, 2] = -pulse.detuning_rad_ps
    coupling = -pulse.rabi_rad_ps / math.cosh(pulse.bandwidth_rad_ps * (t - t_center))
    h[1, 2] = h[2, 1] = coupling
    return h


def dormand_prince(rhs, t0, t1, y0, rtol, atol, h0=None, max_steps=MAX_STEPS):
    """Integrate ``dy/dt = rhs(t, y)`` from ``t0`` to ``t1`` (``t1 > t0``).

    Error control uses the max norm of the embedded error estimate scaled by
    ``atol + rtol*|y|`` componentwise. Returns ``(y1, n_accepted_steps)``.
    """
    y = np.array(y0, dtype=complex)
    t = t0
    span = t1 - t0
    h = h0 if h0 is not None else min(1e-2, span)
    k1 = rhs(t, y)
    steps = 0
    tried = 0
    stages = [k1] + [None] * 6
    while t < t1:
        if tried >= max_steps:
            raise ToleranceError(f"no convergence within {max_steps} steps (t = {t!r})")
        tried += 1
        if h < 1e-14 * span:
            raise ToleranceError(f"step size underflow at t = {t!r}")
        h = min(h, t1 - t)
        stages[0] = k1
        for i in range(1, 7):
            incr = sum(a * stages[j] for j, a in enumerate(_A[i]) if a != 0.0)
            stages[i] = rhs(t + _C[i] * h, y + h * incr)
        y_new = y + h * sum(b * stages[j] for j, b in enumerate(_B5) if b != 0.0)
        err_vec = h * sum(e * stages[j] for j, e in enumerate(_E))
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale)) if err_vec.size else 0.0
        if err <= 1.0:
            t = t + h if t + h < t1 else t1
            y = y_new
            k1 = stages[6]  # first-same-as-last
            steps += 1
            factor = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
        else:
            factor = max(0.2, 0.9 * err ** -0.2)
        h *= factor
    return y, steps


def _static_batch(split, ratio, flag):
    n = ratio.shape[0]
    h0 = np.zeros((n, 3, 3), dtype=complex)
    if flag:
        h0[:, 0, 1] = h0[:, 1, 0] = -0.5 * split
    h0[:, 2, 2] = -ratio
    return h0


def _tail_kernels(omega, w):
    """Integrals of sech(s) exp(i omega s) over s < -w and s > w.

    Beyond the window sech(s) = 2 exp(-|s|) up to O(exp(-3w)).
    """
    lower = 2.0 * np.exp(-(1.0 + 1j * omega) * w) / (1.0 + 1j * omega)
    upper = 2.0 * np.exp(-(1.0 - 1j * omega) * w) / (1.0 - 1j * omega)
    return lower, upper


def _evolve(columns, dot, pulses, settings):
    """Propagate column states ``columns[n]`` (3 x k) across pulse ``pulses[n]``.

    Works in the interaction picture of the static Hamiltonian, expressed in
    its eigenbasis, so amplitudes only move while the pulse is on. The tails
    beyond the window enter at first order. Returns ``(out, norm_drift,
    steps)`` with ``out`` of shape (n, 3, k) and ``norm_drift`` of shape (n,).
    """
    columns = np.asarray(columns, dtype=complex)
    alpha = np.array([p.alpha for p in pulses])
    ratio = np.array([p.detuning_ratio for p in pulses])
    split = np.array([dot.splitting_ueV / p.bandwidth_ueV for p in pulses])
    flag = settings.include_splitting_during_pulse

    energies, vecs = np.linalg.eigh(_static_batch(split, ratio, flag))
    vecs_h = np.conj(np.swapaxes(vecs, 1, 2))
    omega = energies[:, :, None] - energies[:, None, :]
    coupling = np.zeros((3, 3))
    coupling[1, 2] = coupling[2, 1] = 1.0
    # -alpha * X in the eigenbasis; the time dependence is sech(s) exp(i omega s)
    v_eig = -alpha[:, None, None] * (vecs_h @ coupling @ vecs)

    def rhs(s, y):
        v = v_eig * (np.exp(1j * omega * s) / math.cosh(s))
        return -1j * (v @ y)

    w = settings.window
    lower, upper = _tail_kernels(omega, w)
    eye = np.eye(3)
    enter = eye - 1j * v_eig * lower
    leave = eye - 1j * v_eig * upper

    start = enter @ (vecs_h @ columns)
    end, steps = dormand_prince(rhs, -w, w, start, settings.rel_tol, settings.rel_tol * 1e-2)
    out = vecs @ (leave @ end)

    drift = np.max(np.abs(np.linalg.norm(out, axis=1) - np.linalg.norm(columns, axis=1)), axis=1)
    worst = float(np.max(drift)) if drift.size else 0.0
    if worst > NORM_ERROR_TOL:
        raise NormError(f"norm drifted by {worst:.3e} during propagation")
    return out, drift, steps


def _to_local(state, pol):
    if pol is CircPolarization.R:
        return np.array([state.amp_L, state.amp_R, state.amp_XXp2]), state.amp_XXm2
    return np.array([state.amp_R, state.amp_L, state.amp_XXm2]), state.amp_XXp2


def _from_local(vec, spectator, pol):
    if pol is CircPolarization.R:
        return FullState(vec[0], vec[1], spectator, vec[2])
    return FullState(vec[1], vec[0], vec[2], spectator)


def propagate_detailed(state, dot, pulse, settings=PropagationSettings()):
    """Like :func:`propagate` but also reports norm drift and step count."""
    vec, spectator = _to_local(state, pulse.pol)
    out, drift, steps = _evolve(vec[None, :, None], dot, [pulse], settings)
    return PropagationResult(_from_local(out[0, :, 0], spectator, pulse.pol),
                             float(drift[0]), steps)


def propagate(state, dot, pulse, settings=PropagationSettings()):
    """Numerically propagate ``state`` (referenced to the pulse centre) through ``pulse``.

    Raises
    ------
    ToleranceError
        If the adaptive stepper cannot meet ``settings.rel_tol``.
    NormError
        If the norm drifts by more than 1e-6.
    """
    return propagate_detailed(state, dot, pulse, settings).state


def propagate_many(states, dot, pulses, settings=PropagationSettings()):
    """Propagate ``states[i]`` through ``pulses[i]`` in one batched solve.

    Returns a list of :class:`PropagationResult`; ``n_steps`` is shared.
    """
    if len(states) != len(pulses):
        raise ValueError("states and pulses must have equal length")
    if not pulses:
        return []
    local = [_to_local(s, p.pol) for s, p in zip(states, pulses)]
    columns = np.stack([vec for vec, _ in local])[:, :, None]
    out, drift, steps = _evolve(columns, dot, pulses, settings)
    return [PropagationResult(_from_local(out[i, :, 0], local[i][1], p.pol), float(drift[i]), steps)
            for i, p in enumerate(pulses)]


def scattering_maps(pulses, settings=PropagationSettings(), dot=None):
    """Batched :func:`scattering_map`; returns an array of shape (n, 2, 2)."""
    if dot is None:
        dot = DotParams(0.0)
    basis = np.zeros((len(pulses), 3, 2), dtype=complex)
    basis[:, 1, 0] = basis[:, 2, 1] = 1.0
    out, _, _ = _evolve(basis, dot, pulses, settings)
    return out[:, 1:, :]


def scattering_map(pulse, settings=PropagationSettings(), dot=None):
    """2 x 2 map on (coupled exciton, biexciton).

    Column ``j`` is the propagated basis state ``j``; entry ``[0, 0]`` is the
    numerical survival factor and ``[1, 0]`` the transfer factor.
    """
    return scattering_maps([pulse], settings, dot)[0]
