"""Closed-form transition probabilities used as ground truth."""
from __future__ import annotations

import math

__all__ = ["landau_zener", "quadratic_exact", "geometric_exponent"]


def _check_lam(lam: float) -> None:
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam!r}")


def landau_zener(lam: float) -> float:
    """Twistless transition probability exp(-pi / lam)."""
    _check_lam(lam)
    return math.exp(-math.pi / lam)


def quadratic_exact(lam: float, eta2: float) -> float:
    """Exact transition probability for quadratic twist.

    Quadratic twist maps onto twistless passage with the inversion rate
    rescaled by (1 - eta2), so P = exp(-pi / (lam |1 - eta2|)).  At eta2 = 1
    the limit is a complete quench and 0.0 is returned.
    """
    _check_lam(lam)
    detuned = abs(1.0 - eta2)
    if detuned == 0.0:
        return 0.0
    return math.exp(-math.pi / (lam * detuned))


def geometric_exponent(lam: float, eta2: float) -> float:
    """Geometric exponent -pi eta2 / lam; P ~ P_LZ exp(exponent) for lam << 1."""
    _check_lam(lam)
    return -math.pi * eta2 / lam
