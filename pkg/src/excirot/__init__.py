"""Single-pulse optical rotation of a quantum-dot exciton spin.

Analytic Rosen-Zener map for sech pulses (:mod:`excirot.rosenzener`), a
numerical propagator used as its oracle (:mod:`excirot.propagator`),
pump-probe sweeps (:mod:`excirot.experiment`) and inverse design of the
detuning for a target rotation (:mod:`excirot.designer`).
"""

from .core import (
    HBAR_UEV_PS, BlochVector, CircPolarization, DotParams, FullState, bloch_vector,
    from_linear, fwhm_to_bandwidth, init_exciton, precess, precession_period, to_linear,
)
from .designer import DesignResult, DesignTarget, SignPreference, design_detuning, max_rotation_angle
from .errors import (
    ConfigError, DegenerateError, DomainError, ExcirotError, InfeasibleError,
    MissingBaselineError, NonConvergenceError, NormError, PoleError, ToleranceError,
)
from .experiment import (
    ExperimentConfig, Observables, SweepResult, normalized_difference, pl_intensities,
    run_single, sweep_delay, sweep_detuning,
)
from .propagator import PropagationSettings, hamiltonian, propagate, scattering_map
from .rosenzener import (
    PulseParams, apply_pulse, dvh_amplitude, dvh_series, pxx_closed_form, rotation_angle,
    survival_factor, transfer_factor,
)
from .specfun import gauss_2f1_unit, ln_gamma

__version__ = "0.1.0"
