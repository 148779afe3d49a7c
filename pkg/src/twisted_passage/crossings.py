"""Number and location of avoided crossings for polynomial twist.

An avoided crossing sits wherever the rotating-frame field has no z
component, tau - eta * tau**(n-1) = 0.  The root tau = 0 always exists; the
remaining n - 2 roots satisfy tau**(n-2) = 1/eta and only the real ones count:

==========  ==========  ==================================
sign(eta)   parity(n)   crossings
==========  ==========  ==================================
 +           odd         0, r
 +           even        -r, 0, r
 -           odd         -r, 0
 -           even        0
==========  ==========  ==================================

with r = |eta|**(-1/(n-2)).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core_model import PulseParams

__all__ = ["CrossingSet", "SingleCrossingError", "predict_crossings", "crossing_separation"]


class SingleCrossingError(ValueError):
    """Raised when a separation is requested but only tau = 0 is a crossing."""


@dataclass(frozen=True)
class CrossingSet:
    locations: tuple[float, ...]
    separation: float | None = None

    def __len__(self):
        return len(self.locations)

    @property
    def max_abs(self) -> float:
        return max(abs(t) for t in self.locations)


def _outer_radius(params: PulseParams) -> float | None:
    if params.n == 2 or params.eta == 0.0:
        return None
    return (1.0 / abs(params.eta)) ** (1.0 / (params.n - 2))


def predict_crossings(params: PulseParams) -> CrossingSet:
    r = _outer_radius(params)
    if r is None:
        return CrossingSet((0.0,))
    if params.n % 2 == 1:
        locs = (0.0, r) if params.eta > 0 else (-r, 0.0)
    elif params.eta > 0:
        locs = (-r, 0.0, r)
    else:
        return CrossingSet((0.0,))
    return CrossingSet(locs, separation=r)


def crossing_separation(params: PulseParams) -> float:
    """Spacing between adjacent crossings; 1/|eta| for cubic, 1/sqrt(eta) for quartic."""
    sep = predict_crossings(params).separation
    if sep is None:
        raise SingleCrossingError(
            f"single crossing: only tau = 0 is an avoided crossing for n={params.n}, eta={params.eta:g}"
        )
    return sep
