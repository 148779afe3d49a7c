"""Conversion between dimensionless pulses and spectrometer parameters.

Spectrometer conventions (all frequencies in angular units, rad/s, stored as
plain floats and labelled Hz as is customary in NMR):

* ``A``      -- detector sweep amplitude; the detector frequency runs as
  omega_0 + 2 A (t/T) over the centred pulse time t in [-T/2, T/2],
* ``B_exp``  -- twist strength in the experimental convention, whose twist
  rate is n B_exp (t/T)**(n-1) / T,
* ``omega1`` -- rf amplitude, equal to 2 b / hbar,
* ``T``      -- pulse duration in seconds.

With a = hbar A / T the model parameters follow as

    lam   = 4 |A| / (omega1**2 T)
    eta_3 = (3/4) B_exp omega1 / (A**2 T)
    eta_4 = B_exp omega1**2 / (2 A**3 T)

The model's own twist strength (phi = (2/n) B t**n) relates to the
experimental one by B_exp = (2 B / n) T**n; only B_exp appears in this
module's interface.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_model import PulseParams
from .crossings import predict_crossings

__all__ = [
    "MAX_OFFSET_RATIO",
    "ExperimentParams",
    "CnotLevels",
    "to_dimensionless",
    "from_dimensionless",
    "inversion_time",
    "pi_pulse_time",
    "cnot_level_structure",
    "rf_offset",
    "crossing_times",
]

#: Largest allowed f = omega1/|A|: the sweep must start far from resonance.
MAX_OFFSET_RATIO = 0.2


@dataclass(frozen=True)
class ExperimentParams:
    A: float
    B_exp: float
    omega1: float
    T: float
    n: int

    def __post_init__(self):
        if not self.omega1 > 0 or not self.T > 0:
            raise ValueError("need omega1 > 0 and T > 0")
        if self.A == 0:
            raise ValueError("sweep amplitude A must be nonzero")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"twist order n must be an integer >= 2, got {self.n!r}")


@dataclass(frozen=True)
class CnotLevels:
    """Level scheme of two coupled spins, H/hbar = -w_c Iz_c - w_t Iz_t + 2 pi J Iz_c Iz_t.

    ``level_frequencies`` is keyed by "00", "01", "10", "11" (control bit
    first), with bit 0 meaning Iz = +1/2.
    """

    omega_c: float
    omega_t: float
    J: float
    level_frequencies: dict
    omega_plus: float
    omega_minus: float


def _eta_factor(exp: ExperimentParams) -> float:
    if exp.n == 3:
        return 0.75 * exp.omega1 / (exp.A**2 * exp.T)
    if exp.n == 4:
        return exp.omega1**2 / (2.0 * exp.A**3 * exp.T)
    raise ValueError(f"twist-strength conversion is only defined for n in {{3, 4}}, got n={exp.n}")


def to_dimensionless(exp: ExperimentParams) -> PulseParams:
    """(lam, eta_n, n) for a spectrometer pulse; n must be 3 or 4."""
    lam = 4.0 * abs(exp.A) / (exp.omega1**2 * exp.T)
    return PulseParams(lam, exp.B_exp * _eta_factor(exp), exp.n)


def inversion_time(f: float, omega1: float, lam: float) -> float:
    """Pulse duration 4 / (f omega1 lam) in seconds."""
    if not (f > 0 and omega1 > 0 and lam > 0):
        raise ValueError("f, omega1 and lam must all be positive")
    return 4.0 / (f * omega1 * lam)


def pi_pulse_time(omega1: float) -> float:
    """Duration pi / omega1 of a resonant inversion pulse."""
    if not omega1 > 0:
        raise ValueError("omega1 must be positive")
    return math.pi / omega1


def from_dimensionless(params: PulseParams, omega1: float, f: float = 0.1) -> ExperimentParams:
    """Spectrometer pulse realising ``params`` at rf amplitude ``omega1``.

    ``f = omega1/|A|`` is the initial tilt of the effective field; the sweep
    amplitude is A = omega1/f and the duration T = 4/(f omega1 lam).
    """
    if not 0 < f <= MAX_OFFSET_RATIO:
        raise ValueError(
            f"sweep window too narrow: f = omega1/|A| = {f:g} must lie in (0, {MAX_OFFSET_RATIO}]"
        )
    A = omega1 / f
    T = inversion_time(f, omega1, params.lam)
    probe = ExperimentParams(A, 1.0, omega1, T, params.n)
    return ExperimentParams(A, params.eta / _eta_factor(probe), omega1, T, params.n)


def cnot_level_structure(omega_c: float, omega_t: float, J: float) -> CnotLevels:
    """Energies (frequency units) of |00>, |01>, |10>, |11> and the two target lines.

    omega_plus = omega_t + pi J is the |10> <-> |11> line that a CNOT pulse
    must sweep through; omega_minus = omega_t - pi J is |00> <-> |01>.
    J = 0 (uncoupled spins) is accepted.
    """
    if not (omega_c > omega_t > math.pi * J >= 0):
        raise ValueError(
            f"need omega_c > omega_t > pi J >= 0, got omega_c={omega_c:g}, omega_t={omega_t:g}, J={J:g}"
        )
    half_j = math.pi * J / 2.0
    levels = {}
    for bits in ("00", "01", "10", "11"):
        zc = 0.5 if bits[0] == "0" else -0.5
        zt = 0.5 if bits[1] == "0" else -0.5
        levels[bits] = -omega_c * zc - omega_t * zt + 4.0 * half_j * zc * zt
    return CnotLevels(
        omega_c=omega_c,
        omega_t=omega_t,
        J=J,
        level_frequencies=levels,
        omega_plus=omega_t + math.pi * J,
        omega_minus=omega_t - math.pi * J,
    )


def rf_offset(t, exp: ExperimentParams):
    """phi_rf_dot(t) - omega_0 at centred pulse time t in [-T/2, T/2].

    Resonance, and hence an avoided crossing, is where this vanishes.
    """
    x = np.asarray(t, dtype=float) / exp.T
    out = 2.0 * exp.A * x - (exp.n * exp.B_exp / exp.T) * x ** (exp.n - 1)
    return float(out) if out.ndim == 0 else out


def crossing_times(exp: ExperimentParams) -> tuple[float, ...]:
    """Predicted crossings mapped to centred pulse time, t = tau b / a.

    Crossings may fall outside [-T/2, T/2]; they are returned regardless.
    """
    params = to_dimensionless(exp)
    scale = exp.omega1 * exp.T / (2.0 * exp.A)
    return tuple(tau * scale for tau in predict_crossings(params).locations)
