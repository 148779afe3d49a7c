"""Dimensionless two-level model for twisted rapid passage.

Internal units set hbar = 1 and the transverse field amplitude b = 1.  Time is
``tau = (a/b) t`` and every rate is measured in units of ``a/b``.  A pulse is
then fixed by three numbers:

* ``lam``  -- dimensionless inversion rate, hbar a / b**2 (``lam > 1`` is
  non-adiabatic),
* ``eta``  -- dimensionless twist strength, hbar B b**(n-2) / a**(n-1),
* ``n``    -- integer order of the polynomial twist phi(t) = (2/n) B t**n.

The lab-frame field is F(t) = (b cos phi, b sin phi, a t).  Its instantaneous
eigenstates have polar angle theta with cos(theta) = tau / sqrt(1 + tau**2);
theta itself is never formed, only its cosine and sine.

The numba kernels (``*_kernel``) are the single source of the formulas.  They
accept either a float or a 1-d float array for ``tau`` and are shared with the
integrator in :mod:`twisted_passage._engine`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "LabFieldParams",
    "PulseParams",
    "EigenFrame",
    "twist_angle",
    "twist_rate",
    "eigen_frame",
    "gamma_dot_pm",
    "coupling",
    "detuning",
    "detuning_from_phases",
    "rotating_gap",
]


@dataclass(frozen=True)
class PulseParams:
    """One rapid-passage pulse in dimensionless form.

    ``lam`` stands in for the inversion rate lambda (a Python keyword).  For
    ``n == 2`` the twist strength is eta_2 = hbar B / a.
    """

    lam: float
    eta: float
    n: int

    def __post_init__(self):
        if not np.isfinite(self.lam) or self.lam <= 0:
            raise ValueError(f"lam must be a positive finite number, got {self.lam!r}")
        if not np.isfinite(self.eta):
            raise ValueError(f"eta must be finite, got {self.eta!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"twist order n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class LabFieldParams:
    """Dimensionful field parameters of H(t) = sigma . F(t).

    ``twist_strength`` is the B of phi(t) = (2/n) B t**n (radians / time**n).
    """

    a: float
    b: float
    twist_strength: float
    n: int
    hbar: float = 1.0

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("field parameters require a > 0 and b > 0")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"twist order n must be an integer >= 2, got {self.n!r}")

    def to_pulse(self) -> PulseParams:
        lam = self.hbar * self.a / self.b**2
        eta = self.hbar * self.twist_strength * self.b ** (self.n - 2) / self.a ** (self.n - 1)
        return PulseParams(lam, eta, self.n)


@dataclass(frozen=True)
class EigenFrame:
    """Instantaneous eigensystem of the lab Hamiltonian at ``tau`` (b = 1)."""

    tau: float | np.ndarray
    energy: float | np.ndarray
    cos_theta: float | np.ndarray
    sin_theta: float | np.ndarray
    phi: float | np.ndarray
    phi_dot: float | np.ndarray


# Twist enters only through the angle and its tau-derivative below.  Another
# profile (e.g. periodic twist) needs a replacement for these two kernels.


@njit(cache=True)
def twist_angle_kernel(tau, lam, eta, n):
    return (2.0 / n) * (eta / lam) * tau**n


@njit(cache=True)
def twist_rate_kernel(tau, lam, eta, n):
    return (2.0 * eta / lam) * tau ** (n - 1)


@njit(cache=True)
def coupling_kernel(tau, lam, eta, n):
    energy = np.sqrt(1.0 + tau * tau)
    rate = twist_rate_kernel(tau, lam, eta, n)
    return -0.5 / (1.0 + tau * tau) - 0.5j * rate / energy


@njit(cache=True)
def detuning_kernel(tau, lam, eta, n):
    energy = np.sqrt(1.0 + tau * tau)
    rate = twist_rate_kernel(tau, lam, eta, n)
    return (2.0 / lam) * energy - rate * tau / energy


@njit(cache=True)
def coupling_detuning_kernel(tau, lam, eta, n):
    """Scalar (coupling, detuning) sharing one square root and one power."""
    energy = math.sqrt(1.0 + tau * tau)
    rate = (2.0 * eta / lam) * tau ** (n - 1)
    gamma = complex(-0.5 / (energy * energy), -0.5 * rate / energy)
    return gamma, (2.0 / lam) * energy - rate * tau / energy


def _apply(kernel, tau, params: PulseParams):
    if np.ndim(tau) == 0:
        return kernel(float(tau), params.lam, params.eta, params.n)
    arr = np.asarray(tau, dtype=float)
    return kernel(np.ascontiguousarray(arr.ravel()), params.lam, params.eta, params.n).reshape(arr.shape)


def twist_angle(tau, params: PulseParams):
    """Twist angle (2/n)(eta/lam) tau**n in radians."""
    return _apply(twist_angle_kernel, tau, params)


def twist_rate(tau, params: PulseParams):
    """Dimensionless twist rate (b/a) dphi/dt = d(twist_angle)/dtau."""
    return _apply(twist_rate_kernel, tau, params)


def eigen_frame(tau, params: PulseParams) -> EigenFrame:
    tau_arr = np.asarray(tau, dtype=float)
    energy = np.sqrt(1.0 + tau_arr * tau_arr)
    frame = EigenFrame(
        tau=tau_arr,
        energy=energy,
        cos_theta=tau_arr / energy,
        sin_theta=1.0 / energy,
        phi=np.asarray(twist_angle(tau_arr, params)),
        phi_dot=np.asarray(twist_rate(tau_arr, params)),
    )
    if tau_arr.ndim == 0:
        frame = EigenFrame(*(float(v) for v in vars(frame).values()))
    return frame


def gamma_dot_pm(tau, params: PulseParams):
    """Geometric-phase rates ``(gamma_dot_plus, gamma_dot_minus)`` of the two levels.

    Returns -(phi_dot/2)(1 - cos theta) and -(phi_dot/2)(1 + cos theta).
    """
    frame = eigen_frame(tau, params)
    half = 0.5 * frame.phi_dot
    return -half * (1.0 - frame.cos_theta), -half * (1.0 + frame.cos_theta)


def coupling(tau, params: PulseParams):
    """Complex non-adiabatic coupling between the two instantaneous levels.

    The real part -1/(2(1 + tau**2)) is the twistless term; the imaginary part
    carries all the twist dependence.
    """
    return _apply(coupling_kernel, tau, params)


def detuning(tau, params: PulseParams):
    """Level splitting minus the geometric-phase difference, in units of a/b."""
    return _apply(detuning_kernel, tau, params)


def detuning_from_phases(tau, params: PulseParams):
    """Same quantity as :func:`detuning`, assembled from the level energies and
    the geometric-phase rates instead of the closed form."""
    frame = eigen_frame(tau, params)
    plus, minus = gamma_dot_pm(tau, params)
    return (2.0 / params.lam) * frame.energy - (plus - minus)


def rotating_gap(tau, params: PulseParams):
    """Energy gap in the frame co-rotating with the transverse field, in units of b.

    Its minima (value 2) are the avoided crossings.
    """
    tau_arr = np.asarray(tau, dtype=float)
    offset = tau_arr - params.eta * tau_arr ** (params.n - 1)
    gap = 2.0 * np.sqrt(1.0 + offset * offset)
    return float(gap) if gap.ndim == 0 else gap
