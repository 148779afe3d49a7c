import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_passage.analytic import geometric_exponent, landau_zener, quadratic_exact

lams = st.floats(0.05, 50.0)


def test_landau_zener_values():
    assert landau_zener(1e6) > 0.999996
    assert landau_zener(5.0) == pytest.approx(0.53349, rel=1e-5)  # [DERIVED] exp(-pi/5)
    assert landau_zener(0.5) == pytest.approx(1.867e-3, rel=1e-3)  # [DERIVED] exp(-2 pi)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_rate_must_be_positive(bad):
    for fn in (landau_zener, lambda lam: quadratic_exact(lam, 0.3), lambda lam: geometric_exponent(lam, 0.3)):
        with pytest.raises(ValueError):
            fn(bad)


def test_quadratic_values():
    assert quadratic_exact(10.0, 1.0) == 0.0
    assert quadratic_exact(10.0, 0.0) == pytest.approx(0.73040, rel=1e-5)  # [DERIVED]
    assert quadratic_exact(3.0, -1.0) == pytest.approx(0.59238, rel=1e-5)  # [DERIVED]
    assert quadratic_exact(3.0, 2.5) == pytest.approx(math.exp(-math.pi / 4.5), rel=1e-14)


def test_geometric_exponent_values():
    assert geometric_exponent(7.0, 0.0) == 0.0
    assert geometric_exponent(10.0, 0.5) == pytest.approx(-0.15708, rel=1e-5)


def test_adiabatic_limit_exponent():
    # For small lam, P2 ~ P_LZ exp(Gamma_g): the exponents agree to first order
    # in eta.  The second-order remainder (pi/lam) eta**2/(1-eta) makes the
    # probabilities themselves differ by ~4% at (0.2, 0.05), so the agreement
    # is asserted on the exponents.
    lam, eta = 0.2, 0.05
    exact = math.log(quadratic_exact(lam, eta))
    approx = math.log(landau_zener(lam)) + geometric_exponent(lam, eta)
    assert abs(exact - approx) / abs(exact) < 1e-2
    ratio = quadratic_exact(lam, eta) / (landau_zener(lam) * math.exp(geometric_exponent(lam, eta)))
    assert ratio == pytest.approx(math.exp(-(math.pi / lam) * eta**2 / (1 - eta)), rel=1e-12)


@given(lams)
def test_reduces_to_landau_zener(lam):
    assert quadratic_exact(lam, 0.0) == landau_zener(lam)


@given(lams, st.floats(0.0, 3.0))
def test_symmetric_about_quench(lam, x):
    assert quadratic_exact(lam, 1 + x) == pytest.approx(quadratic_exact(lam, 1 - x), rel=1e-12)


@given(lams, st.floats(-5.0, 0.99), st.floats(1e-3, 0.5))
def test_falls_toward_quench(lam, eta, step):
    hi = min(eta + step, 0.999)
    assert quadratic_exact(lam, hi) <= quadratic_exact(lam, eta)
