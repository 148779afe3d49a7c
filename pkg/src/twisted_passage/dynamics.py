"""Time evolution of the qubit during twisted rapid passage.

The primary route integrates the amplitudes S (lower level) and I (upper
level) of the state expanded in the instantaneous eigenstates of the lab
Hamiltonian, with the dynamical and geometric phases factored out:

    dS/dtau = -conj(G) exp(-i Phi) I
    dI/dtau =       G  exp(+i Phi) S
    dPhi/dtau = delta

where G and delta are :func:`~twisted_passage.core_model.coupling` and
:func:`~twisted_passage.core_model.detuning`.  The qubit starts in the lower
level, (S, I, Phi) = (1, 0, 0) at tau = -tau0/2, and the transition
probability is P(tau) = |I(tau)|**2 (normalised by |S|**2 + |I|**2).

:func:`lab_frame_oracle` integrates the Schrodinger equation for the spinor in
the fixed sigma_z basis instead and projects onto the upper level at the end.
It shares no representation-specific code with the primary route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _engine
from .core_model import PulseParams, detuning_kernel
from .crossings import predict_crossings

__all__ = [
    "AmplitudeState",
    "IntegratorConfig",
    "Trajectory",
    "IntegrationError",
    "rhs",
    "half_window",
    "edge_tilt",
    "averaging_taus",
    "integrate",
    "asymptotic_probability",
    "lab_frame_trace",
    "lab_frame_oracle",
]

MIN_STEP = 1e-12
MIN_HALF_WINDOW = 40.0
CROSSING_MARGIN = 2.5


class IntegrationError(RuntimeError):
    """The adaptive step size underflowed before the window was covered."""


@dataclass(frozen=True)
class AmplitudeState:
    S: complex
    I: complex
    phase: float = 0.0

    @property
    def norm(self) -> float:
        return abs(self.S) ** 2 + abs(self.I) ** 2


@dataclass(frozen=True)
class IntegratorConfig:
    """Step control and window settings.

    ``tau0`` is the full dimensionless window; ``None`` selects it with
    :func:`half_window`.  ``edge_tilt``, ``max_edge_detuning`` and ``max_tau0``
    only steer that automatic choice.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    initial_step: float = 1e-3
    max_step: float = 0.5
    tau0: float | None = None
    n_samples: int = 401
    averaging_samples: int = 10
    averaging_fraction: float = 0.15
    edge_tilt: float = 5e-3
    max_edge_detuning: float = 2e4
    max_tau0: float = 3000.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.initial_step <= 0 or self.max_step < self.initial_step:
            raise ValueError("need 0 < initial_step <= max_step")
        if self.tau0 is not None and not self.tau0 > 0:
            raise ValueError(f"tau0 must be positive, got {self.tau0!r}")
        if self.n_samples < 2:
            raise ValueError("n_samples must be at least 2")
        if self.averaging_samples < 1 or not 0 < self.averaging_fraction <= 0.5:
            raise ValueError("averaging needs >= 1 sample inside the last half of the window")
        if self.edge_tilt <= 0 or self.max_edge_detuning <= 0 or self.max_tau0 < 2 * MIN_HALF_WINDOW:
            raise ValueError("window-rule settings must be positive and max_tau0 >= 80")


@dataclass(frozen=True)
class Trajectory:
    params: PulseParams
    tau0: float
    tau: np.ndarray
    S: np.ndarray
    I: np.ndarray
    phase: np.ndarray
    averaging: np.ndarray = field(repr=False)
    steps_taken: int = 0
    rejected_steps: int = 0
    max_norm_drift: float = 0.0

    def __post_init__(self):
        for name in ("tau", "S", "I", "phase", "averaging"):
            getattr(self, name).setflags(write=False)

    @property
    def P(self) -> np.ndarray:
        """Upper-level population |I|**2 / (|S|**2 + |I|**2).

        Normalising keeps P inside [0, 1] despite integrator drift, which is
        reported separately as ``max_norm_drift``.
        """
        up = np.abs(self.I) ** 2
        return up / (np.abs(self.S) ** 2 + up)

    @property
    def samples(self) -> list[tuple[float, complex, complex, float]]:
        return list(zip(self.tau.tolist(), self.S.tolist(), self.I.tolist(), self.P.tolist()))

    @property
    def asymptotic_probability(self) -> float:
        """Mean of P over the averaging samples near the end of the window."""
        return float(np.mean(self.P[self.averaging]))

    def __len__(self):
        return self.tau.size


def rhs(tau: float, state: AmplitudeState, params: PulseParams) -> tuple[complex, complex, float]:
    """(dS/dtau, dI/dtau, dPhi/dtau) for the adiabatic-representation equations."""
    y = np.array([state.S, state.I, state.phase], dtype=np.complex128)
    out = np.empty(3, dtype=np.complex128)
    _engine.rhs(_engine.ADIABATIC, float(tau), y, params.lam, params.eta, params.n, out)
    return complex(out[0]), complex(out[1]), float(out[2].real)


def edge_tilt(params: PulseParams, half: float) -> float:
    """Largest angle at tau = +-half between the lab-frame field and the
    field seen in the frame co-rotating with the twist.

    The qubit starts in a lab-frame eigenstate, so this angle is how far the
    initial state sits from the state that would have been prepared
    adiabatically from the far past.
    """
    worst = 0.0
    for tau in (-half, half):
        z_rot = tau - params.eta * tau ** (params.n - 1)
        angle = abs(math.atan2(1.0, tau) - math.atan2(1.0, z_rot))
        worst = max(worst, min(angle, math.pi - angle))
    return worst


def _edge_detuning(params: PulseParams, half: float) -> float:
    return max(abs(detuning_kernel(t, params.lam, params.eta, params.n)) for t in (-half, half))


def half_window(params: PulseParams, config: IntegratorConfig | None = None) -> float:
    """Half-width tau0/2 of the integration window.

    Starts from max(40, 2.5 * |farthest crossing|) and widens in 2% steps
    until the edge tilt drops to ``config.edge_tilt``.  Widening stops early
    if the detuning at the edges would exceed ``max_edge_detuning`` (the step
    count grows with it) or the window would exceed ``max_tau0``.

    Raises
    ------
    IntegrationError
        If the crossings alone need a window wider than ``max_tau0``.
    """
    config = config or IntegratorConfig()
    if config.tau0 is not None:
        return 0.5 * config.tau0
    half = max(MIN_HALF_WINDOW, CROSSING_MARGIN * predict_crossings(params).max_abs)
    cap = 0.5 * config.max_tau0
    if half > cap:
        raise IntegrationError(
            f"crossings out to |tau|={half / CROSSING_MARGIN:.6g} need tau0 >= {2 * half:.6g}, "
            f"beyond max_tau0={config.max_tau0:g}; raise max_tau0 or set tau0"
        )
    while edge_tilt(params, half) > config.edge_tilt:
        wider = half * 1.02
        if wider > cap or _edge_detuning(params, wider) > config.max_edge_detuning:
            break
        half = wider
    return half


def averaging_taus(half: float, config: IntegratorConfig | None = None) -> np.ndarray:
    config = config or IntegratorConfig()
    start = half - config.averaging_fraction * 2.0 * half
    return np.linspace(start, half, config.averaging_samples)


def _sample_grid(half: float, config: IntegratorConfig, n_samples: int):
    avg = averaging_taus(half, config)
    grid = np.unique(np.concatenate([np.linspace(-half, half, n_samples), avg]))
    return grid, np.isin(grid, avg)


def integrate(params: PulseParams, config: IntegratorConfig | None = None, *, n_samples: int | None = None) -> Trajectory:
    """Integrate the amplitude equations across the whole window.

    Output samples are ``n_samples`` (default ``config.n_samples``) evenly
    spaced times plus the averaging times; the integrator lands on each one
    exactly.
    """
    config = config or IntegratorConfig()
    half = half_window(params, config)
    grid, avg_mask = _sample_grid(half, config, n_samples or config.n_samples)
    y0 = np.array([1.0, 0.0, 0.0], dtype=np.complex128)
    # only S and I are amplitudes; Phi gets its own relative error scale
    samples, steps, rejected, drift = _run_adiabatic(y0, grid, params, config)
    return Trajectory(
        params=params,
        tau0=2.0 * half,
        tau=grid,
        S=samples[:, 0].copy(),
        I=samples[:, 1].copy(),
        phase=samples[:, 2].real.copy(),
        averaging=avg_mask,
        steps_taken=int(steps),
        rejected_steps=int(rejected),
        max_norm_drift=float(drift),
    )


def _run_adiabatic(y0, grid, params, config):
    samples, steps, rejected, drift, status, reached = _engine.drive(
        _engine.ADIABATIC, y0, float(grid[0]), grid, params.lam, params.eta, params.n, 2,
        config.rel_tol, config.abs_tol, config.initial_step, config.max_step, MIN_STEP,
    )
    _check(status, reached, params)
    return samples, steps, rejected, drift


def _check(status, reached, params):
    if status != _engine.OK:
        raise IntegrationError(
            f"step size fell below {MIN_STEP:g} at tau={reached:.6g} "
            f"(lam={params.lam:g}, eta={params.eta:g}, n={params.n})"
        )


def asymptotic_probability(params: PulseParams, config: IntegratorConfig | None = None) -> float:
    """Transition probability after the pulse.

    P(tau) oscillates slightly about its limit, so the value returned is the
    mean of P over ``averaging_samples`` evenly spaced times in the final
    ``averaging_fraction`` of the window.
    """
    return integrate(params, config, n_samples=2).asymptotic_probability


def lab_frame_trace(params: PulseParams, config: IntegratorConfig | None = None, *, n_samples: int = 2):
    """Upper-level population from the fixed-basis Schrodinger equation.

    Returns ``(tau, P, averaging_mask, max_norm_drift)``.
    """
    config = config or IntegratorConfig()
    half = half_window(params, config)
    grid, avg_mask = _sample_grid(half, config, n_samples)
    ch, sh = _engine.half_angles(-half)
    field0 = np.exp(1j * (2.0 / params.n) * (params.eta / params.lam) * (-half) ** params.n)
    # lower level |E_-> = (sin(theta/2), -cos(theta/2) e^{i phi})
    y0 = np.array([sh, -ch * field0], dtype=np.complex128)
    samples, _, _, drift, status, reached = _engine.drive(
        _engine.LAB_FRAME, y0, float(grid[0]), grid, params.lam, params.eta, params.n, 2,
        config.rel_tol, config.abs_tol, config.initial_step, config.max_step, MIN_STEP,
    )
    _check(status, reached, params)
    P = np.array([
        _engine.upper_level_population(t, s[0], s[1], params.lam, params.eta, params.n)
        for t, s in zip(grid, samples)
    ]) / np.sum(np.abs(samples) ** 2, axis=1)
    return grid, P, avg_mask, float(drift)


def lab_frame_oracle(params: PulseParams, config: IntegratorConfig | None = None) -> float:
    """Asymptotic transition probability computed without the adiabatic expansion."""
    _, P, avg_mask, _ = lab_frame_trace(params, config)
    return float(np.mean(P[avg_mask]))
