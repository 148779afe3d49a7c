"""Grid sweeps over the twist strength and 1-d searches for quench/pump points.

Rows of a sweep are independent, so they may be farmed out to worker
processes; results are always assembled by grid index, which makes the output
independent of the worker count.  The default count comes from the
``TWISTED_PASSAGE_WORKERS`` environment variable (1 when unset).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .core_model import PulseParams
from .crossings import predict_crossings
from .dynamics import IntegrationError, IntegratorConfig, asymptotic_probability

__all__ = [
    "F_FT",
    "WORKERS_ENV",
    "EtaRange",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "OptimumReport",
    "NoInteriorExtremumError",
    "default_workers",
    "sweep",
    "find_quench",
    "find_pump",
]

#: Fault-tolerance reference fidelity; reported as a flag, never enforced.
F_FT = 0.9999
WORKERS_ENV = "TWISTED_PASSAGE_WORKERS"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class NoInteriorExtremumError(ValueError):
    """No interior probe point beat both of its neighbours."""


@dataclass(frozen=True)
class EtaRange:
    """``count`` evenly spaced values from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 1:
            raise ValueError(f"grid count must be an integer >= 1, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))

    def values(self) -> np.ndarray:
        return np.linspace(float(self.start), float(self.stop), self.count)


@dataclass(frozen=True)
class SweepSpec:
    """One fixed-rate sweep; ``eta_grid`` is explicit values or an :class:`EtaRange`."""

    lam: float
    n: int
    eta_grid: tuple[float, ...] | EtaRange
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self):
        if not isinstance(self.eta_grid, EtaRange):
            grid = tuple(float(x) for x in self.eta_grid)
            if not grid:
                raise ValueError("eta_grid is empty")
            object.__setattr__(self, "eta_grid", grid)
        # validates lam and n up front rather than once per row
        PulseParams(self.lam, self.etas[0], self.n)

    @property
    def etas(self) -> tuple[float, ...]:
        grid = self.eta_grid
        values = grid.values() if isinstance(grid, EtaRange) else np.asarray(grid)
        return tuple(float(v) for v in np.sort(values))


@dataclass(frozen=True)
class SweepRow:
    eta: float
    P: float | None
    crossings: tuple[float, ...]
    error: str | None = None

    @property
    def fidelity(self) -> float | None:
        return None if self.P is None else 1.0 - self.P

    @property
    def meets_ft(self) -> bool | None:
        return None if self.P is None else self.fidelity >= F_FT


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    metadata: dict

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


@dataclass(frozen=True)
class OptimumReport:
    eta_star: float
    P_star: float
    bracket: tuple[float, float]
    evaluations: int
    kind: str = "quench"

    @property
    def fidelity(self) -> float:
        return 1.0 - self.P_star

    @property
    def meets_ft(self) -> bool:
        return self.fidelity >= F_FT


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ValueError(f"{WORKERS_ENV} must be >= 1, got {workers}")
    return workers


def _row(task) -> SweepRow:
    lam, eta, n, config = task
    params = PulseParams(lam, eta, n)
    crossings = predict_crossings(params).locations
    try:
        P = asymptotic_probability(params, config)
    except IntegrationError as exc:
        return SweepRow(eta, None, crossings, str(exc))
    return SweepRow(eta, P, crossings)


def sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    """Asymptotic P at every grid point, ordered by eta.

    A row whose integration fails carries the diagnostic in ``error`` and
    ``P = None``; the rest of the sweep still runs.
    """
    from . import __version__

    workers = default_workers() if workers is None else workers
    tasks = [(spec.lam, eta, spec.n, spec.integrator) for eta in spec.etas]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            rows = tuple(pool.map(_row, tasks))
    else:
        rows = tuple(map(_row, tasks))
    metadata = {
        "lam": spec.lam,
        "n": spec.n,
        "etas": list(spec.etas),
        "integrator": asdict(spec.integrator),
        "engine_version": __version__,
    }
    return SweepResult(rows, metadata)


def _golden(objective, lo, hi, tol, cache):
    """Golden-section search for a minimum of ``objective`` on [lo, hi].

    Returns the final bracket.  ``cache`` maps eta -> objective value and is
    filled with every evaluation.
    """

    def f(x):
        if x not in cache:
            cache[x] = objective(x)
        return cache[x]

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return a, b


def _optimize(lam, n, bracket, tol_eta, config, sign, kind, probe_points):
    lo, hi = sorted(float(x) for x in bracket)
    if not hi > lo:
        raise ValueError(f"bracket must have positive width, got {bracket!r}")
    tol = 1e-2 * (hi - lo) if tol_eta is None else float(tol_eta)
    if tol <= 0:
        raise ValueError("tol_eta must be positive")
    if probe_points < 3:
        raise ValueError("probe_points must be at least 3")
    config = config or IntegratorConfig()
    cache: dict[float, float] = {}

    def objective(eta):
        return sign * asymptotic_probability(PulseParams(lam, eta, n), config)

    xs = [float(x) for x in np.linspace(lo, hi, probe_points)]
    for x in xs:
        cache[x] = objective(x)
    vals = [cache[x] for x in xs]
    # interior probe points that beat both neighbours
    wells = [k for k in range(1, len(xs) - 1) if vals[k] < vals[k - 1] and vals[k] < vals[k + 1]]
    if not wells:
        word = "minimum" if sign > 0 else "maximum"
        shown = ", ".join(f"{sign * v:.6g}" for v in vals)
        raise NoInteriorExtremumError(f"no interior {word} detected in [{lo:g}, {hi:g}]: probe P = {shown}")
    k = min(wells, key=lambda i: vals[i])
    a, b = _golden(objective, xs[k - 1], xs[k + 1], tol, cache)
    # the optimum is the best point evaluated inside the final bracket
    inside = [x for x in cache if a <= x <= b] or [xs[k]]
    eta_star = min(inside, key=lambda x: (cache[x], x))
    return OptimumReport(eta_star, sign * cache[eta_star], (a, b), len(cache), kind)


def find_quench(lam: float, n: int, bracket, tol_eta: float | None = None,
                config: IntegratorConfig | None = None, probe_points: int = 7) -> OptimumReport:
    """Locate a local minimum of the asymptotic P over eta inside ``bracket``.

    P is probed on ``probe_points`` evenly spaced etas.  Among probe points
    lower than both neighbours the lowest is kept, and golden-section search
    between its two neighbours shrinks the bracket below ``tol_eta``
    (default: 1% of the initial width).  ``eta_star`` is the best point
    evaluated inside the final bracket, so re-evaluating it with the same
    config reproduces ``P_star``.

    Raises
    ------
    NoInteriorExtremumError
        If no interior probe point is below both neighbours (e.g. the
        probe is monotone).
    """
    return _optimize(lam, n, bracket, tol_eta, config, 1.0, "quench", probe_points)


def find_pump(lam: float, n: int, bracket, tol_eta: float | None = None,
              config: IntegratorConfig | None = None, probe_points: int = 7) -> OptimumReport:
    """Local maximum of the asymptotic P; otherwise as :func:`find_quench`."""
    return _optimize(lam, n, bracket, tol_eta, config, -1.0, "pump", probe_points)
