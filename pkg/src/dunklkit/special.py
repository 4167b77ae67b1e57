"""Normalized Bessel functions, Gegenbauer polynomials, and the
Riemann-Liouville fractional mean.

The normalized Bessel function used everywhere in this package is

    j_alpha(z) = Gamma(alpha+1) * sum_{n>=0} (-1)^n (z/2)^{2n} / (n! Gamma(n+alpha+1)),

i.e. the hypergeometric 0F1(; alpha+1; -z^2/4), normalized so that
j_alpha(0) = 1.  It is even and entire, and for half-integer orders it
collapses to trigonometric closed forms (j_{-1/2} = cos, j_{1/2} = sinc).
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln, iv, jv

from .errors import NumericalError
from .quadrature import gauss_jacobi

__all__ = [
    "bessel_j",
    "bessel_j_envelope",
    "gegenbauer",
    "gegenbauer_hypergeometric",
    "riemann_liouville",
    "radial_bessel_operator",
]

# Power series is used below this |z|; beyond it the series loses digits to
# cancellation and we switch to scipy's Bessel backends.
_SERIES_RADIUS = 12.0
_SERIES_MAX_TERMS = 220


def _series_0f1(alpha: float, w: np.ndarray) -> np.ndarray:
    """sum_n w^n / (n! (alpha+1)_n) with term-ratio stopping."""
    term = np.ones_like(w)
    total = np.ones_like(w)
    for n in range(_SERIES_MAX_TERMS):
        term = term * (w / ((n + 1.0) * (n + 1.0 + alpha)))
        total = total + term
        if np.max(np.abs(term)) <= 1e-17 * max(1.0, float(np.max(np.abs(total)))):
            return total
    raise NumericalError("Bessel series did not converge; argument too large for series branch")


def _prefactor(alpha: float, x: np.ndarray) -> np.ndarray:
    """Gamma(alpha+1) (x/2)^(-alpha) computed in log space, x > 0."""
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(gammaln(alpha + 1.0) - alpha * np.log(0.5 * x))


def _bessel_large_real(alpha: float, x: np.ndarray) -> np.ndarray:
    x = np.abs(x)
    return _prefactor(alpha, x) * jv(alpha, x)


def _bessel_large_imag(alpha: float, y: np.ndarray) -> np.ndarray:
    # j_alpha(i y) = Gamma(alpha+1) (y/2)^(-alpha) I_alpha(y), y real
    y = np.abs(y)
    return _prefactor(alpha, y) * iv(alpha, y)


def _bessel_large_generic(alpha: float, z: np.ndarray) -> np.ndarray:
    import mpmath

    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for i, zz in enumerate(flat):
        w = -(mpmath.mpc(zz) / 2) ** 2
        out[i] = complex(mpmath.hyp0f1(alpha + 1.0, w))
    return out.reshape(z.shape)


def bessel_j(alpha: float, z):
    """Normalized Bessel function j_alpha(z), vectorized over z.

    Parameters
    ----------
    alpha : float
        Order, alpha >= -1/2.
    z : scalar or array, real or complex
        Argument.  j_alpha is even in z.

    Returns
    -------
    Same shape as z; real for real input, complex for complex input.

    Notes
    -----
    |z| <= 12 uses the defining power series with term-ratio stopping at
    1e-16.  Larger arguments go through scipy's J/I Bessel routines
    (real and purely imaginary z) or an arbitrary-precision 0F1 fallback
    for general complex z, since the double-precision series loses too
    many digits to cancellation out there.
    """
    if alpha < -0.5:
        raise ValueError(f"order must satisfy alpha >= -1/2, got {alpha}")
    z_arr = np.asarray(z)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)

    if np.iscomplexobj(z_arr):
        out = np.empty(z_arr.shape, dtype=complex)
        absz = np.abs(z_arr)
        small = absz <= _SERIES_RADIUS
        if np.any(small):
            out[small] = _series_0f1(alpha, -0.25 * z_arr[small] ** 2)
        big = ~small
        if np.any(big):
            zb = z_arr[big]
            ab = absz[big]
            real_like = np.abs(zb.imag) <= 1e-13 * ab
            imag_like = np.abs(zb.real) <= 1e-13 * ab
            res = np.empty(zb.shape, dtype=complex)
            if np.any(real_like):
                res[real_like] = _bessel_large_real(alpha, zb[real_like].real)
            if np.any(imag_like):
                res[imag_like] = _bessel_large_imag(alpha, zb[imag_like].imag)
            rest = ~(real_like | imag_like)
            if np.any(rest):
                res[rest] = _bessel_large_generic(alpha, zb[rest])
            out[big] = res
    else:
        z_arr = z_arr.astype(float, copy=False)
        out = np.empty(z_arr.shape, dtype=float)
        small = np.abs(z_arr) <= _SERIES_RADIUS
        if np.any(small):
            out[small] = _series_0f1(alpha, -0.25 * z_arr[small] ** 2)
        if np.any(~small):
            out[~small] = _bessel_large_real(alpha, z_arr[~small])

    return out[0] if scalar else out


def bessel_j_imag(alpha: float, y):
    """j_alpha(i y) for real y, returned real: equals 0F1(; alpha+1; y^2/4).

    This is the growing direction (I-Bessel), where the series has
    positive terms and loses nothing to cancellation; large arguments go
    through the scaled modified Bessel backend.  Overflows to inf beyond
    y ~ 1400 like cosh does.
    """
    if alpha < -0.5:
        raise ValueError(f"order must satisfy alpha >= -1/2, got {alpha}")
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    out = np.empty(y_arr.shape, dtype=float)
    small = np.abs(y_arr) <= _SERIES_RADIUS
    if np.any(small):
        out[small] = _series_0f1(alpha, 0.25 * y_arr[small] ** 2)
    if np.any(~small):
        out[~small] = _bessel_large_imag(alpha, y_arr[~small])
    return out[0] if scalar else out


def bessel_j_envelope(lam: float, u) -> np.ndarray:
    """Conservative decay envelope for |j_lam| on the real axis.

    Returns min(1, C (u/2)^(-lam) u^(-1/2)) with a safety factor, valid as
    an upper bound once u is past the oscillatory onset.  Used only to
    pick truncation radii for heavy-tailed radial measures; never as a
    substitute for evaluating j itself.
    """
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        amp = 1.3 * np.sqrt(2.0 / np.pi) * np.exp(
            gammaln(lam + 1.0) - lam * np.log(np.maximum(u, 1e-300) / 2.0)
        ) * np.maximum(u, 1e-300) ** (-0.5)
    return np.minimum(1.0, np.where(u > max(8.0, 2.0 * lam * lam), amp, 1.0))


def gegenbauer(n: int, lam: float, t):
    """Gegenbauer polynomial renormalized to 1 at t = 1, degree n, index lam >= 0.

    Evaluated by the three-term recurrence

        p_m(t) = [2 (m + lam - 1) t p_{m-1}(t) - (m - 1) p_{m-2}(t)] / (m + 2 lam - 1),

    started from p_0 = 1, p_1 = t.  At lam = 0 this is exactly the
    Chebyshev recurrence, which realizes the standard renormalized limit.
    """
    if lam < 0:
        raise ValueError(f"index must satisfy lam >= 0, got {lam}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.ones_like(t)[()]
    prev = np.ones_like(t)
    cur = t.copy()
    for m in range(2, n + 1):
        prev, cur = cur, (2.0 * (m + lam - 1.0) * t * cur - (m - 1.0) * prev) / (m + 2.0 * lam - 1.0)
    return cur[()] if cur.ndim == 0 else cur


def gegenbauer_hypergeometric(n: int, lam: float, t):
    """Same polynomial via the terminating 2F1 sum; recurrence cross-check."""
    t = np.asarray(t, dtype=float)
    x = 0.5 * (1.0 - t)
    total = np.ones_like(x)
    term = np.ones_like(x)
    for j in range(n):
        term = term * ((j - n) * (j + n + 2.0 * lam)) / ((j + lam + 0.5) * (j + 1.0)) * x
        total = total + term
    return total[()] if total.ndim == 0 else total


def riemann_liouville(f, alpha: float, t, n: int = 200):
    """Riemann-Liouville type mean of order alpha >= 0,

        R_alpha f(t) = (2 Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2)))
                       * integral_0^1 f(s t) (1 - s^2)^(alpha - 1/2) ds.

    R_alpha intertwines the radial Bessel operator with d^2/dt^2 and sends
    cos(z .) to j_alpha(z .).  The endpoint singularity at s = 1 is handled
    by a Gauss-Jacobi rule, so f only ever sees smooth quadrature.

    t may be a scalar or a 1d array.
    """
    if alpha < 0:
        raise ValueError(f"order must satisfy alpha >= 0, got {alpha}")
    rule = gauss_jacobi(n, alpha - 0.5, 0.0, 0.0, 1.0)
    s = rule.nodes
    smooth = rule.weights * (1.0 + s) ** (alpha - 0.5)
    pref = 2.0 * np.exp(gammaln(alpha + 1.0) - gammaln(alpha + 0.5)) / np.sqrt(np.pi)
    t_arr = np.asarray(t, dtype=float)
    vals = f(np.multiply.outer(s, t_arr))
    out = pref * np.tensordot(smooth, vals, axes=([0], [0]))
    return out[()] if np.ndim(t) == 0 else out


def radial_bessel_operator(alpha: float, u, t: float, h: float = 1e-4) -> float:
    """Finite-difference Bessel operator u'' + (2 alpha + 1) u'/t at t > 0.

    Second-order central differences; used in eigenfunction and wave
    equation residual tests.
    """
    if t <= 0:
        raise ValueError("the radial operator needs t > 0")
    upp = (u(t + h) - 2.0 * u(t) + u(t - h)) / h**2
    up = (u(t + h) - u(t - h)) / (2.0 * h)
    return upp + (2.0 * alpha + 1.0) / t * up
