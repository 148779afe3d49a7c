"""Self-consistency checks: analytic limits, representation equivalence, invariants.

Each check measures one worst-case number and compares it with a limit.
``strict=True`` divides every limit by ten.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import quadratic_exact
from .bridge import from_dimensionless, to_dimensionless
from .core_model import PulseParams, twist_angle, twist_rate
from .crossings import predict_crossings
from .dynamics import IntegratorConfig, integrate, lab_frame_oracle

__all__ = ["Check", "ORACLE_PULSES", "QUADRATIC_POINTS", "run_checks"]

QUADRATIC_POINTS = tuple((lam, eta) for lam in (10.0, 3.0) for eta in (-2.0, -0.5, 0.0, 0.5, 0.85, 1.6, 2.5, 4.0))
ORACLE_PULSES = (
    (5.0, 0.0, 2),
    (10.0, 0.5, 2),
    (3.0, -0.02, 3),
    (5.0, 0.05, 3),
    (5.0, 4.6e-4, 4),
    (0.5, 6.45e-3, 4),
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float

    @property
    def passed(self) -> bool:
        return self.value < self.limit

    @property
    def margin(self) -> float:
        """limit / value: how many times over the measured worst case the limit sits."""
        return math.inf if self.value == 0 else self.limit / self.value


def _quadratic(config):
    return max(
        abs(integrate(PulseParams(lam, eta, 2), config, n_samples=2).asymptotic_probability - quadratic_exact(lam, eta))
        for lam, eta in QUADRATIC_POINTS
    )


def _oracle_and_drift(config):
    diff = drift = 0.0
    for lam, eta, n in ORACLE_PULSES:
        params = PulseParams(lam, eta, n)
        traj = integrate(params, config, n_samples=2)
        diff = max(diff, abs(traj.asymptotic_probability - lab_frame_oracle(params, config)))
        drift = max(drift, traj.max_norm_drift)
    return diff, drift


def _finite_difference(rng):
    worst = 0.0
    h = 1e-4
    for _ in range(200):
        params = PulseParams(rng.uniform(0.3, 12), rng.uniform(-0.05, 0.05), int(rng.integers(2, 5)))
        # relative error of the central difference grows like h**2 / tau**2 near 0
        tau = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 30)
        fd = (twist_angle(tau + h, params) - twist_angle(tau - h, params)) / (2 * h)
        exact = twist_rate(tau, params)
        worst = max(worst, abs(fd - exact) / max(abs(exact), 1e-300))
    return worst


def _crossing_residual(rng):
    worst = 0.0
    for _ in range(200):
        params = PulseParams(1.0, rng.choice([-1, 1]) * 10 ** rng.uniform(-4, 0), int(rng.integers(2, 9)))
        for t in predict_crossings(params).locations:
            worst = max(worst, abs(t - params.eta * t ** (params.n - 1)) / max(1.0, abs(t)))
    return worst


def _bridge_roundtrip(rng):
    worst = 0.0
    for _ in range(200):
        params = PulseParams(10 ** rng.uniform(-1, 1.2), rng.uniform(-0.05, 0.05), int(rng.integers(3, 5)))
        back = to_dimensionless(from_dimensionless(params, rng.uniform(100, 1e5), rng.uniform(0.01, 0.2)))
        worst = max(worst, abs(back.lam / params.lam - 1), abs(back.eta - params.eta) / max(abs(params.eta), 1e-300))
    return worst


def run_checks(strict: bool = False, config: IntegratorConfig | None = None) -> list[Check]:
    """Run every check and return the results in a fixed order."""
    config = config or IntegratorConfig()
    scale = 0.1 if strict else 1.0
    rng = np.random.default_rng(20240611)
    diff, drift = _oracle_and_drift(config)
    return [
        Check("quadratic twist matches exact result", _quadratic(config), 5e-3 * scale),
        Check("adiabatic vs lab-frame probability", diff, 1e-3 * scale),
        Check("norm drift", drift, 1e-6 * scale),
        Check("twist rate vs finite difference (relative)", _finite_difference(rng), 1e-6 * scale),
        Check("crossing root residual", _crossing_residual(rng), 1e-9 * scale),
        Check("bridge round trip (relative)", _bridge_roundtrip(rng), 1e-12 * scale),
    ]
