"""Per-segment numeric kernels.

A segment p -> q pulls L_j back to alpha_j + beta_j t on [0, 1], so
omega_j = (2 pi i)^-1 beta_j / (alpha_j + beta_j t) dt.  Two kernels are
provided, each with a numba version and a pure-numpy fallback; set
ARRTOOL_DISABLE_NUMBA=1 to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

TWO_PI_I = 2j * np.pi


def _numba_wanted() -> bool:
    return os.environ.get("ARRTOOL_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")


# --- fallback ---------------------------------------------------------------

def segment_omega_numpy(alpha, beta, nodes, weights):
    """Gauss-Legendre approximation of the integrals of omega_j over one segment."""
    t = nodes[:, None]
    vals = beta[None, :] / (alpha[None, :] + beta[None, :] * t)
    return (weights[:, None] * vals).sum(axis=0) / TWO_PI_I


def _twisted_integrand_numpy(alpha, beta, prefix, twist, eta, t):
    L = alpha + beta * t
    om = beta / L / TWO_PI_I
    partial = prefix + np.log(L / alpha) / TWO_PI_I
    return np.exp(-(twist @ partial)) * (eta @ om)


def cascade_segment_numpy(alpha, beta, prefix, twist, eta, y, steps):
    """RK4 for y_j' = f_j(t) y_{j-1} (y_0 = 1) across one segment, in place."""
    h = 1.0 / steps
    r = eta.shape[0]
    for s in range(steps):
        t0 = s * h
        f0 = _twisted_integrand_numpy(alpha, beta, prefix, twist, eta, t0)
        fm = _twisted_integrand_numpy(alpha, beta, prefix, twist, eta, t0 + 0.5 * h)
        f1 = _twisted_integrand_numpy(alpha, beta, prefix, twist, eta, t0 + h)
        # stages of the linear system; y[0] stays 1
        k1 = np.zeros(r + 1, dtype=np.complex128)
        k2 = np.zeros(r + 1, dtype=np.complex128)
        k3 = np.zeros(r + 1, dtype=np.complex128)
        k4 = np.zeros(r + 1, dtype=np.complex128)
        k1[1:] = f0 * y[:-1]
        tmp = y + 0.5 * h * k1
        k2[1:] = fm * tmp[:-1]
        tmp = y + 0.5 * h * k2
        k3[1:] = fm * tmp[:-1]
        tmp = y + h * k3
        k4[1:] = f1 * tmp[:-1]
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


# --- numba ------------------------------------------------------------------

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

if njit is not None:

    @njit(cache=True)
    def segment_omega_numba(alpha, beta, nodes, weights):
        n = alpha.shape[0]
        out = np.zeros(n, dtype=np.complex128)
        for j in range(n):
            acc = 0j
            for i in range(nodes.shape[0]):
                acc += weights[i] * beta[j] / (alpha[j] + beta[j] * nodes[i])
            out[j] = acc / (2j * np.pi)
        return out

    @njit(cache=True)
    def _integrand_numba(alpha, beta, prefix, twist, eta, t, out):
        n = alpha.shape[0]
        r = eta.shape[0]
        om = np.empty(n, dtype=np.complex128)
        part = np.empty(n, dtype=np.complex128)
        for j in range(n):
            L = alpha[j] + beta[j] * t
            om[j] = beta[j] / L / (2j * np.pi)
            part[j] = prefix[j] + np.log(L / alpha[j]) / (2j * np.pi)
        for i in range(r):
            e = 0j
            f = 0j
            for j in range(n):
                e += twist[i, j] * part[j]
                f += eta[i, j] * om[j]
            out[i] = np.exp(-e) * f

    @njit(cache=True)
    def cascade_segment_numba(alpha, beta, prefix, twist, eta, y, steps):
        h = 1.0 / steps
        r = eta.shape[0]
        f0 = np.empty(r, dtype=np.complex128)
        fm = np.empty(r, dtype=np.complex128)
        f1 = np.empty(r, dtype=np.complex128)
        k1 = np.empty(r, dtype=np.complex128)
        k2 = np.empty(r, dtype=np.complex128)
        k3 = np.empty(r, dtype=np.complex128)
        k4 = np.empty(r, dtype=np.complex128)
        for s in range(steps):
            t0 = s * h
            _integrand_numba(alpha, beta, prefix, twist, eta, t0, f0)
            _integrand_numba(alpha, beta, prefix, twist, eta, t0 + 0.5 * h, fm)
            _integrand_numba(alpha, beta, prefix, twist, eta, t0 + h, f1)
            for i in range(r):
                k1[i] = f0[i] * y[i]
                k2[i] = fm[i] * (y[i] + 0.5 * h * (k1[i - 1] if i > 0 else 0j))
                k3[i] = fm[i] * (y[i] + 0.5 * h * (k2[i - 1] if i > 0 else 0j))
                k4[i] = f1[i] * (y[i] + h * (k3[i - 1] if i > 0 else 0j))
            for i in range(r):
                y[i + 1] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
        return y


def backend() -> str:
    return "numba" if (njit is not None and _numba_wanted()) else "numpy"


def segment_omega(alpha, beta, nodes, weights):
    if backend() == "numba":
        return segment_omega_numba(alpha, beta, nodes, weights)
    return segment_omega_numpy(alpha, beta, nodes, weights)


def cascade_segment(alpha, beta, prefix, twist, eta, y, steps):
    if backend() == "numba":
        return cascade_segment_numba(alpha, beta, prefix, twist, eta, y, steps)
    return cascade_segment_numpy(alpha, beta, prefix, twist, eta, y, steps)
