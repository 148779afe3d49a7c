"""Twisted rapid passage of a two-level system."""
__version__ = "0.1.0"

from .analytic import geometric_exponent, landau_zener, quadratic_exact
from .core_model import (
    EigenFrame,
    LabFieldParams,
    PulseParams,
    coupling,
    detuning,
    detuning_from_phases,
    eigen_frame,
    gamma_dot_pm,
    rotating_gap,
    twist_angle,
    twist_rate,
)
from .crossings import CrossingSet, SingleCrossingError, crossing_separation, predict_crossings
from .bridge import (
    CnotLevels,
    ExperimentParams,
    cnot_level_structure,
    from_dimensionless,
    inversion_time,
    pi_pulse_time,
    to_dimensionless,
)
from .dynamics import (
    AmplitudeState,
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    asymptotic_probability,
    half_window,
    integrate,
    lab_frame_oracle,
)
from .sweeps import (
    F_FT,
    EtaRange,
    NoInteriorExtremumError,
    OptimumReport,
    SweepResult,
    SweepRow,
    SweepSpec,
    find_pump,
    find_quench,
    sweep,
)

