"""Adaptive fourth-order Runge-Kutta driver.

Error control is by step doubling: every step is taken once with ``h`` and
twice with ``h/2``.  The difference of the two results is the error measure
compared against the tolerance, and the two-half-step result is then improved
by local extrapolation, y += (y_half - y_full) / 15.

Two right-hand sides are compiled in and selected with an integer ``kind`` so
the whole loop lives in one cached numba function:

``ADIABATIC``
    y = (S, I, Phi): amplitudes of the lower and upper instantaneous level and
    the accumulated phase Phi = integral of the detuning.
``LAB_FRAME``
    y = (psi_up, psi_down): the spinor in the fixed sigma_z basis.

Both right-hand sides are linear in y with coefficients that depend on tau
only.  A doubled RK4 step samples tau at just five points (t, t+h/4, t+h/2,
t+3h/4, t+h), so the coefficients are evaluated there once per attempt and
shared between the stages.
"""
import math

import numpy as np
from numba import njit

from .core_model import coupling_detuning_kernel, twist_angle_kernel

ADIABATIC = 0
LAB_FRAME = 1

OK = 0
STEP_UNDERFLOW = 1


@njit(cache=True)
def half_angles(tau):
    """cos(theta/2), sin(theta/2) for cos(theta) = tau / sqrt(1 + tau**2)."""
    energy = math.sqrt(1.0 + tau * tau)
    cos_t = tau / energy
    sin_t = 1.0 / energy
    # take the well-conditioned half first, derive the other from sin(theta)
    if tau < 0.0:
        sh = math.sqrt(0.5 * (1.0 - cos_t))
        return sin_t / (2.0 * sh), sh
    ch = math.sqrt(0.5 * (1.0 + cos_t))
    return ch, sin_t / (2.0 * ch)


@njit(cache=True)
def upper_level_population(tau, up, down, lam, eta, n):
    """|<E_+(tau)|psi>|**2 for a lab-frame spinor (up, down)."""
    ch, sh = half_angles(tau)
    phi = twist_angle_kernel(tau, lam, eta, n)
    return abs(ch * up + sh * complex(math.cos(phi), -math.sin(phi)) * down) ** 2


@njit(cache=True)
def coefficients(kind, tau, lam, eta, n):
    """tau-dependent coefficients (c, r) of the right-hand side.

    ADIABATIC: c = coupling, r = detuning.  LAB_FRAME: c = exp(i phi), r = tau.
    """
    if kind == ADIABATIC:
        return coupling_detuning_kernel(tau, lam, eta, n)
    phi = twist_angle_kernel(tau, lam, eta, n)
    return complex(math.cos(phi), math.sin(phi)), tau


@njit(cache=True, fastmath=True)
def _apply_rhs(kind, c, r, y, inv_lam, rot, phi0, out):
    """Linear right-hand side; ``rot`` = exp(i phi0) for a nearby phase phi0.

    Rotating from phi0 keeps the sine/cosine arguments small: Phi itself grows
    to ~1e6 rad at strong twist, where argument reduction dominates the cost.
    """
    if kind == ADIABATIC:
        d = y[2].real - phi0
        g = c * rot * complex(math.cos(d), math.sin(d))
        out[0] = -g.conjugate() * y[1]
        out[1] = g * y[0]
        out[2] = r
    else:
        # -i/lam [[tau, conj(c)], [c, -tau]] y
        a = r * y[0] + c.conjugate() * y[1]
        b = c * y[0] - r * y[1]
        out[0] = complex(a.imag, -a.real) * inv_lam
        out[1] = complex(b.imag, -b.real) * inv_lam


@njit(cache=True)
def _base_rotation(kind, y):
    if kind == ADIABATIC:
        phi0 = y[2].real
        return complex(math.cos(phi0), math.sin(phi0)), phi0
    return 1.0 + 0.0j, 0.0


@njit(cache=True)
def rhs(kind, tau, y, lam, eta, n, out):
    c, r = coefficients(kind, tau, lam, eta, n)
    rot, phi0 = _base_rotation(kind, y)
    _apply_rhs(kind, c, r, y, 1.0 / lam, rot, phi0, out)


@njit(cache=True, fastmath=True)
def _rk4(kind, y, h, k1, c1, r1, c2, r2, inv_lam, rot, phi0, k2, k3, k4, tmp, out):
    """One classical RK4 step given k1, the coefficients (c1, r1) at the
    midpoint and (c2, r2) at the end."""
    m = y.size
    half = 0.5 * h
    for i in range(m):
        tmp[i] = y[i] + half * k1[i]
    _apply_rhs(kind, c1, r1, tmp, inv_lam, rot, phi0, k2)
    for i in range(m):
        tmp[i] = y[i] + half * k2[i]
    _apply_rhs(kind, c1, r1, tmp, inv_lam, rot, phi0, k3)
    for i in range(m):
        tmp[i] = y[i] + h * k3[i]
    _apply_rhs(kind, c2, r2, tmp, inv_lam, rot, phi0, k4)
    sixth = h / 6.0
    for i in range(m):
        out[i] = y[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])


@njit(cache=True, fastmath=True)
def drive(kind, y0, tau_start, sample_taus, lam, eta, n, n_amp, rtol, atol, h0, hmax, hmin):
    """Integrate from ``tau_start`` through every time in ``sample_taus``.

    ``sample_taus`` must be sorted and >= ``tau_start``; steps are clipped to
    land on each of them exactly.  The first ``n_amp`` components are
    amplitudes: their error is measured against the amplitude norm, and their
    squared norm is tracked for drift.

    Returns (samples, steps, rejected, max_norm_drift, status, tau_reached).
    """
    m = y0.size
    ns = sample_taus.size
    inv_lam = 1.0 / lam
    samples = np.zeros((ns, m), dtype=np.complex128)
    y = y0.copy()
    k1 = np.empty(m, dtype=np.complex128)
    kmid = np.empty(m, dtype=np.complex128)
    k2 = np.empty(m, dtype=np.complex128)
    k3 = np.empty(m, dtype=np.complex128)
    k4 = np.empty(m, dtype=np.complex128)
    tmp = np.empty(m, dtype=np.complex128)
    full = np.empty(m, dtype=np.complex128)
    mid = np.empty(m, dtype=np.complex128)
    two = np.empty(m, dtype=np.complex128)

    tau = tau_start
    h = h0
    steps = 0
    rejected = 0
    drift = 0.0
    status = OK
    j = 0
    while j < ns and sample_taus[j] <= tau:
        samples[j, :] = y
        j += 1
    c0, r0 = coefficients(kind, tau, lam, eta, n)
    rot, phi0 = _base_rotation(kind, y)
    _apply_rhs(kind, c0, r0, y, inv_lam, rot, phi0, k1)

    while j < ns:
        target = sample_taus[j]
        hh = target - tau
        clipped = hh <= h
        if not clipped:
            hh = h
        c1, r1 = coefficients(kind, tau + 0.25 * hh, lam, eta, n)
        c2, r2 = coefficients(kind, tau + 0.5 * hh, lam, eta, n)
        c3, r3 = coefficients(kind, tau + 0.75 * hh, lam, eta, n)
        t_end = target if clipped else tau + hh
        if t_end <= tau:
            # the step is lost in rounding: tau cannot advance
            status = STEP_UNDERFLOW
            break
        c4, r4 = coefficients(kind, t_end, lam, eta, n)

        _rk4(kind, y, hh, k1, c2, r2, c4, r4, inv_lam, rot, phi0, k2, k3, k4, tmp, full)
        _rk4(kind, y, 0.5 * hh, k1, c1, r1, c2, r2, inv_lam, rot, phi0, k2, k3, k4, tmp, mid)
        rot_mid, phi_mid = _base_rotation(kind, mid)
        _apply_rhs(kind, c2, r2, mid, inv_lam, rot_mid, phi_mid, kmid)
        _rk4(kind, mid, 0.5 * hh, kmid, c3, r3, c4, r4, inv_lam, rot_mid, phi_mid, k2, k3, k4, tmp, two)

        amp2 = 0.0
        for i in range(n_amp):
            amp2 += two[i].real ** 2 + two[i].imag ** 2
        amp = math.sqrt(amp2)
        err2 = 0.0
        for i in range(m):
            ref = amp if i < n_amp else max(abs(y[i]), abs(two[i]))
            d = two[i] - full[i]
            scale = atol + rtol * ref
            # scale before squaring and clip: tiny tolerances must not
            # overflow (fastmath assumes finite values)
            er = min(abs(d.real) / scale, 1e150)
            ei = min(abs(d.imag) / scale, 1e150)
            e2 = er * er + ei * ei
            if e2 > err2:
                err2 = e2
        err = math.sqrt(err2)

        if err <= 1.0:
            for i in range(m):
                y[i] = two[i] + (two[i] - full[i]) / 15.0
            tau = t_end
            steps += 1
            norm = 0.0
            for i in range(n_amp):
                norm += y[i].real ** 2 + y[i].imag ** 2
            if abs(norm - 1.0) > drift:
                drift = abs(norm - 1.0)
            c0, r0 = c4, r4
            rot, phi0 = _base_rotation(kind, y)
            _apply_rhs(kind, c0, r0, y, inv_lam, rot, phi0, k1)
            while j < ns and sample_taus[j] <= tau:
                samples[j, :] = y
                j += 1
            if clipped:
                # a step shortened to hit a sample says nothing about h
                continue
        else:
            rejected += 1

        if err < 1e-4:
            # growth is capped at 4 anyway; avoids pow on (flushed) subnormals
            factor = 4.0
        else:
            factor = min(4.0, max(0.1, 0.9 * err ** -0.2))
        h = min(hh * factor, hmax)
        if h < hmin:
            status = STEP_UNDERFLOW
            break
    return samples, steps, rejected, drift, status, tau
