import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_passage.core_model import (
    LabFieldParams,
    PulseParams,
    coupling,
    coupling_detuning_kernel,
    detuning,
    detuning_from_phases,
    eigen_frame,
    gamma_dot_pm,
    rotating_gap,
    twist_angle,
    twist_rate,
)

lams = st.floats(0.3, 12.0)
etas = st.floats(-0.05, 0.05)
orders = st.integers(2, 6)
taus = st.floats(-100.0, 100.0)


def dimensionful_oracle(tau, lam, eta, n, h=1e-6):
    """Coupling and detuning built from the lab field with hbar = b = 1, a = lam.

    theta_dot comes from a finite difference of theta(t) = arccos(a t / E),
    so nothing here reuses the closed forms under test.
    """
    a, b = lam, 1.0
    B = eta * a ** (n - 1) / b ** (n - 2)
    t = tau * b / a

    def theta(s):
        return math.acos(a * s / math.hypot(a * s, b))

    theta_dot = (theta(t + h) - theta(t - h)) / (2 * h)
    phi_dot = 2.0 * B * t ** (n - 1)
    energy = math.hypot(a * t, b)
    cos_t, sin_t = a * t / energy, b / energy
    gamma = theta_dot / 2 - 0.5j * phi_dot * sin_t
    delta = 2 * energy - phi_dot * cos_t
    return (b / a) * gamma, (b / a) * delta


class TestParams:
    def test_lab_field_maps_to_pulse(self):
        p = LabFieldParams(a=2.0, b=0.5, twist_strength=0.3, n=3).to_pulse()
        assert p.lam == pytest.approx(2.0 / 0.25)
        assert p.eta == pytest.approx(0.3 * 0.5 / 4.0)
        assert p.n == 3

    @pytest.mark.parametrize("kw", [dict(lam=0.0, eta=0, n=2), dict(lam=-1, eta=0, n=2),
                                    dict(lam=1, eta=math.nan, n=2), dict(lam=1, eta=0, n=1),
                                    dict(lam=1, eta=0, n=2.5)])
    def test_invalid_pulse(self, kw):
        with pytest.raises(ValueError):
            PulseParams(**kw)

    def test_invalid_lab_field(self):
        with pytest.raises(ValueError):
            LabFieldParams(a=0.0, b=1.0, twist_strength=0.0, n=2)


class TestTwist:
    p3 = PulseParams(5.0, 0.05, 3)

    def test_angle_examples(self):
        assert twist_angle(0.0, self.p3) == 0.0
        assert twist_angle(1.0, self.p3) == pytest.approx(6.6667e-3, rel=1e-4)  # [DERIVED]
        assert twist_angle(-1.0, self.p3) == pytest.approx(-6.6667e-3, rel=1e-4)

    def test_rate_examples(self):
        assert twist_rate(0.0, self.p3) == 0.0
        assert twist_rate(2.0, self.p3) == pytest.approx(0.08, rel=1e-12)  # [DERIVED]
        # at a crossing the twist rate equals 2 tau / lam
        assert twist_rate(50.0, PulseParams(5.0, 0.02, 3)) == pytest.approx(20.0, rel=1e-12)

    def test_parity(self):
        tau = np.linspace(-3, 3, 13)
        assert np.allclose(twist_angle(-tau, self.p3), -twist_angle(tau, self.p3))
        p4 = PulseParams(5.0, 1e-3, 4)
        assert np.allclose(twist_angle(-tau, p4), twist_angle(tau, p4))

    @given(lams, etas, orders, st.floats(0.5, 30.0), st.sampled_from([-1.0, 1.0]))
    def test_rate_is_derivative_of_angle(self, lam, eta, n, mag, sign):
        params = PulseParams(lam, eta, n)
        tau, h = sign * mag, 1e-4
        fd = (twist_angle(tau + h, params) - twist_angle(tau - h, params)) / (2 * h)
        exact = twist_rate(tau, params)
        assert abs(fd - exact) <= 1e-6 * abs(exact) + 1e-15


class TestEigenFrame:
    @given(taus)
    def test_trig_identity_and_energy(self, tau):
        f = eigen_frame(tau, PulseParams(5.0, 0.0, 2))
        assert f.cos_theta**2 + f.sin_theta**2 == pytest.approx(1.0, abs=1e-15)
        assert f.energy >= 1.0

    def test_array_input(self):
        f = eigen_frame(np.array([0.0, 1.0]), PulseParams(5.0, 0.0, 2))
        assert f.energy[0] == 1.0 and f.energy[1] == pytest.approx(math.sqrt(2))


class TestGeometricRates:
    def test_example_at_tau_one(self):
        # [DERIVED] twist_rate(1) = 2*0.05/5 = 0.02, cos(theta) = 1/sqrt(2)
        plus, minus = gamma_dot_pm(1.0, PulseParams(5.0, 0.05, 3))
        assert plus == pytest.approx(-0.01 * (1 - 1 / math.sqrt(2)), rel=1e-12)
        assert minus == pytest.approx(-0.01 * (1 + 1 / math.sqrt(2)), rel=1e-12)
        assert plus == pytest.approx(-2.9289e-3, rel=1e-4)
        assert minus == pytest.approx(-1.70711e-2, rel=1e-5)

    @pytest.mark.parametrize("tau,params", [(3.0, PulseParams(5, 0.0, 3)), (0.0, PulseParams(5, 0.1, 4))])
    def test_vanishing(self, tau, params):
        assert gamma_dot_pm(tau, params) == (0.0, 0.0) or np.allclose(gamma_dot_pm(tau, params), 0.0)

    @given(taus, lams, etas, orders)
    def test_sum_and_difference(self, tau, lam, eta, n):
        params = PulseParams(lam, eta, n)
        plus, minus = gamma_dot_pm(tau, params)
        rate = twist_rate(tau, params)
        cos_t = eigen_frame(tau, params).cos_theta
        assert plus - minus == pytest.approx(rate * cos_t, rel=1e-12, abs=1e-12)
        assert plus + minus == pytest.approx(-rate, rel=1e-12, abs=1e-12)


class TestCouplingDetuning:
    def test_coupling_examples(self):
        assert coupling(0.0, PulseParams(5, 0.05, 3)) == pytest.approx(-0.5 + 0j)
        c = coupling(1.0, PulseParams(5.0, 0.05, 3))
        assert c.real == pytest.approx(-0.25)
        assert c.imag == pytest.approx(-7.0711e-3, rel=1e-4)  # [DERIVED]
        assert abs(coupling(30.0, PulseParams(5, 0.0, 2))) < 1e-3

    def test_detuning_examples(self):
        assert detuning(0.0, PulseParams(5, 0.3, 3)) == pytest.approx(0.4)
        assert detuning(1.0, PulseParams(5, 0.0, 2)) == pytest.approx(0.56569, rel=1e-5)
        # [DERIVED] (2/5) sqrt(2501) - 20 * 50 / sqrt(2501) = 0.4 / sqrt(2501)
        assert detuning(50.0, PulseParams(5.0, 0.02, 3)) == pytest.approx(0.4 / math.sqrt(2501), rel=1e-9)
        assert detuning(50.0, PulseParams(5.0, 0.02, 3)) == pytest.approx(7.9984e-3, rel=1e-4)

    @given(taus, lams)
    def test_twistless_forms(self, tau, lam):
        params = PulseParams(lam, 0.0, 3)
        assert coupling(tau, params) == pytest.approx(-1 / (2 * (1 + tau * tau)), rel=1e-14)
        assert detuning(tau, params) == pytest.approx((2 / lam) * math.sqrt(1 + tau * tau), rel=1e-14)

    @given(taus, lams, etas, orders)
    def test_detuning_from_phases_agrees(self, tau, lam, eta, n):
        params = PulseParams(lam, eta, n)
        direct, via = detuning(tau, params), detuning_from_phases(tau, params)
        assert abs(direct - via) <= 1e-12 * max(1.0, abs(direct), (2 / lam) * math.sqrt(1 + tau * tau))

    @settings(max_examples=50)
    @given(st.floats(-20, 20), lams, etas, st.integers(2, 4))
    def test_against_dimensionful_lab_field(self, tau, lam, eta, n):
        params = PulseParams(lam, eta, n)
        gamma, delta = dimensionful_oracle(tau, lam, eta, n)
        assert coupling(tau, params) == pytest.approx(gamma, rel=1e-6, abs=1e-8)
        assert detuning(tau, params) == pytest.approx(delta, rel=1e-9, abs=1e-9)

    @given(taus, lams, etas, orders)
    def test_fused_kernel_matches(self, tau, lam, eta, n):
        params = PulseParams(lam, eta, n)
        c, d = coupling_detuning_kernel(tau, lam, eta, n)
        assert c == pytest.approx(coupling(tau, params), rel=1e-14, abs=1e-300)
        assert d == pytest.approx(detuning(tau, params), rel=1e-14, abs=1e-300)

    def test_array_shapes(self):
        tau = np.linspace(-2, 2, 6).reshape(2, 3)
        p = PulseParams(5, 0.05, 3)
        assert coupling(tau, p).shape == (2, 3)
        assert detuning(tau, p).shape == (2, 3)


class TestRotatingGap:
    def test_minimum_value_at_crossing(self):
        assert rotating_gap(0.0, PulseParams(5, 0.02, 3)) == 2.0
        assert rotating_gap(50.0, PulseParams(5, 0.02, 3)) == pytest.approx(2.0)
