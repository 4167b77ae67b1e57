"""Dunkl analysis for the sign-change groups Z_2^N on R^N.

Conventions: the reflection group is generated by the coordinate sign
flips sigma_i, the root system is {+-sqrt(2) e_i} so each root has
squared length 2, and one multiplicity k_i >= 0 is attached per axis.
The weight is

    w_k(x) = prod_i |<x, sqrt(2) e_i>|^(2 k_i) = prod_i (2 x_i^2)^(k_i),

homogeneous of degree 2 gamma with gamma = sum k_i.  Everything in this
module factorizes over axes, which is what makes the N-dimensional
theory computable: kernels are products of rank-one kernels and the
intertwining measure is a product of one-dimensional ones.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from . import rank_one
from .errors import ConfigError
from .special import bessel_j, bessel_j_imag

__all__ = [
    "MultiplicityVector",
    "group_elements",
    "weight",
    "dunkl_operator",
    "dunkl_laplacian",
    "dunkl_kernel",
    "dunkl_kernel_unitary",
    "generalized_bessel",
    "generalized_bessel_unitary",
    "intertwiner_atoms",
    "sinhc",
    "alternating_sum_bessel",
]

_AXIS_TOL = 1e-9  # coordinates this small are treated as exactly on the wall


@dataclass(frozen=True)
class MultiplicityVector:
    """Nonnegative multiplicity per coordinate axis."""

    k: tuple[float, ...]

    def __post_init__(self):
        if isinstance(self.k, (int, float)):
            object.__setattr__(self, "k", (float(self.k),))
        else:
            object.__setattr__(self, "k", tuple(float(v) for v in self.k))
        if len(self.k) == 0:
            raise ConfigError("need at least one axis")
        if any(v < 0 for v in self.k):
            raise ConfigError(f"multiplicities must be nonnegative, got {self.k}")

    @property
    def n_axes(self) -> int:
        return len(self.k)

    @property
    def gamma(self) -> float:
        return float(sum(self.k))

    @property
    def lam(self) -> float:
        """Radial index gamma + N/2 - 1; j_lam governs radializations."""
        return self.gamma + 0.5 * self.n_axes - 1.0

    @cached_property
    def c_norm(self) -> float:
        """Gaussian normalization: integral of e^(-|x|^2/2) w_k over R^N."""
        return float(np.prod([2.0 ** (2.0 * ki + 0.5) * np.exp(gammaln(ki + 0.5))
                              for ki in self.k]))

    @cached_property
    def d_norm(self) -> float:
        """Sphere mass: integral of w_k over the unit sphere S^(N-1)."""
        lam = self.lam
        return self.c_norm / (2.0**lam * np.exp(gammaln(lam + 1.0)))

    def to_json(self) -> str:
        return json.dumps({"N": self.n_axes, "k": list(self.k)})

    @classmethod
    def from_json(cls, text: str) -> "MultiplicityVector":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"multiplicity JSON is invalid: {exc}") from exc
        if set(payload) != {"N", "k"}:
            raise ConfigError(f"multiplicity JSON needs exactly N and k, got {sorted(payload)}")
        k = payload["k"]
        if not isinstance(k, list) or len(k) != payload["N"]:
            raise ConfigError("k must be a list of length N")
        return cls(k=tuple(float(v) for v in k))


def _as_kv(kv) -> MultiplicityVector:
    if isinstance(kv, MultiplicityVector):
        return kv
    if isinstance(kv, (int, float)):
        return MultiplicityVector(k=(float(kv),))
    return MultiplicityVector(k=tuple(kv))


def group_elements(N: int) -> np.ndarray:
    """All 2^N sign vectors, one row per group element."""
    if N > 20:
        raise ConfigError(f"2^{N} group elements is not a computation you want")
    return np.array(list(itertools.product((1.0, -1.0), repeat=N)))


def weight(kv, x) -> np.ndarray:
    """w_k(x), vectorized over leading axes of x (last axis = coordinates)."""
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != kv.n_axes:
        raise ConfigError(f"points have {x.shape[-1]} coordinates, expected {kv.n_axes}")
    return np.prod((2.0 * x**2) ** np.asarray(kv.k), axis=-1)


# ---------------------------------------------------------------------------
# differential-difference operators (finite differences in the smooth part)


def _partial(f, x, i, h):
    e = np.zeros_like(x)
    e[i] = 1.0
    return (-f(x + 2*h*e) + 8.0*f(x + h*e) - 8.0*f(x - h*e) + f(x - 2*h*e)) / (12.0 * h)


def _partial2(f, x, i, h):
    e = np.zeros_like(x)
    e[i] = 1.0
    return (-f(x + 2*h*e) + 16.0*f(x + h*e) - 30.0*f(x)
            + 16.0*f(x - h*e) - f(x - 2*h*e)) / (12.0 * h * h)


def _reflected(x, i):
    y = np.array(x, dtype=float)
    y[i] = -y[i]
    return y


def dunkl_operator(kv, f, x, xi, h: float = 1e-5) -> float:
    """Dunkl operator T_xi f(x) for a scalar callable f on R^N:

        T_xi f = d_xi f + sum_i k_i xi_i (f(x) - f(sigma_i x)) / x_i.

    The derivative uses fourth-order central differences with step h; the
    difference part is exact, with the wall limit
    (f - f o sigma_i)/x_i -> 2 d_i f picked up automatically at x_i = 0.
    """
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if x.shape != (kv.n_axes,) or xi.shape != (kv.n_axes,):
        raise ConfigError("x and xi must be points of R^N")
    total = sum(xi[i] * _partial(f, x, i, h) for i in range(kv.n_axes) if xi[i] != 0.0)
    fx = f(x)
    for i, ki in enumerate(kv.k):
        if ki == 0.0 or xi[i] == 0.0:
            continue
        if abs(x[i]) > _AXIS_TOL:
            total += ki * xi[i] * (fx - f(_reflected(x, i))) / x[i]
        else:
            # odd-part derivative: (f(x + s e_i) - f(x - s e_i)) / s at s -> 0
            e = np.zeros_like(x)
            e[i] = 1.0
            total += ki * xi[i] * (-f(x + 2*h*e) + 8.0*f(x + h*e)
                                   - 8.0*f(x - h*e) + f(x - 2*h*e)) / (6.0 * h)
    return float(total)


def dunkl_laplacian(kv, f, x, h: float = 1e-4) -> float:
    """Dunkl Laplacian sum_i T_i^2 f(x), in its explicit one-reflection form:

        Delta_k f = Delta f + sum_i k_i [ 2 d_i f / x_i - (f - f o sigma_i) / x_i^2 ].

    On a wall x_i = 0 the bracket degenerates to 2 k_i d_i^2 f.  Points
    very close to (but not on) a wall suffer the cancellation inherent in
    the bracket; keep |x_i| either zero or above ~1e-4 for full accuracy.
    """
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    if x.shape != (kv.n_axes,):
        raise ConfigError("x must be a point of R^N")
    total = sum(_partial2(f, x, i, h) for i in range(kv.n_axes))
    fx = f(x)
    for i, ki in enumerate(kv.k):
        if ki == 0.0:
            continue
        if abs(x[i]) > _AXIS_TOL:
            total += ki * (2.0 * _partial(f, x, i, h) / x[i]
                           - (fx - f(_reflected(x, i))) / (x[i] * x[i]))
        else:
            total += 2.0 * ki * _partial2(f, x, i, h)
    return float(total)


# ---------------------------------------------------------------------------
# kernels


def dunkl_kernel(kv, x, y):
    """E_k(x, y) for real arguments; the product of rank-one kernels.

    x, y broadcast over leading axes (last axis = coordinates).
    E_k(x, 0) = 1, E_k is symmetric, and E_k(x, y) > 0 on real pairs.
    """
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = rank_one.kernel_real(kv.k[0], x[..., 0], y[..., 0])
    for i, ki in enumerate(kv.k[1:], start=1):
        out = out * rank_one.kernel_real(ki, x[..., i], y[..., i])
    return out


def dunkl_kernel_unitary(kv, x, y):
    """E_k(i x, y) for real x, y: bounded by 1 in modulus."""
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = rank_one.kernel_unitary(kv.k[0], x[..., 0], y[..., 0])
    for i, ki in enumerate(kv.k[1:], start=1):
        out = out * rank_one.kernel_unitary(ki, x[..., i], y[..., i])
    return out


def generalized_bessel(kv, x, y):
    """Group average of the kernel: 2^(-N) sum_g E_k(x, g y).

    Factorizes into prod_i j_{k_i - 1/2}(i x_i y_i); real arguments.
    """
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = bessel_j_imag(kv.k[0] - 0.5, x[..., 0] * y[..., 0])
    for i, ki in enumerate(kv.k[1:], start=1):
        out = out * bessel_j_imag(ki - 0.5, x[..., i] * y[..., i])
    return out


def generalized_bessel_unitary(kv, x, y):
    """Group average of E_k(i x, y) = prod_i j_{k_i - 1/2}(x_i y_i); real output."""
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = bessel_j(kv.k[0] - 0.5, x[..., 0] * y[..., 0])
    for i, ki in enumerate(kv.k[1:], start=1):
        out = out * bessel_j(ki - 0.5, x[..., i] * y[..., i])
    return out


def intertwiner_atoms(kv, x, n_per_axis: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Product intertwining measure at x as points and masses.

    Returns (points, masses) with points.shape = (M, N); the measure is a
    probability measure on the box [-|x_1|, |x_1|] x ... and

        V_k f(x) = sum_j masses_j f(points_j),
        int e^(<xi, y>) dmu_x(xi) = E_k(x, y).
    """
    kv = _as_kv(kv)
    x = np.asarray(x, dtype=float)
    if x.shape != (kv.n_axes,):
        raise ConfigError("x must be a point of R^N")
    axis_nodes, axis_masses = [], []
    for ki, xi in zip(kv.k, x):
        mu = rank_one.intertwiner_measure(ki, float(xi), n=n_per_axis)
        if mu.atoms:
            axis_nodes.append(np.array([p for p, _ in mu.atoms]))
            axis_masses.append(np.array([w for _, w in mu.atoms]))
        else:
            axis_nodes.append(mu.grid)
            axis_masses.append(mu.node_masses)
    grids = np.meshgrid(*axis_nodes, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=-1)
    mass = np.meshgrid(*axis_masses, indexing="ij")
    masses = np.prod(np.stack([m.ravel() for m in mass], axis=0), axis=0)
    return points, masses


# ---------------------------------------------------------------------------
# multiplicity-one generalized Bessel via the alternating group sum


def sinhc(u):
    """sinh(u)/u with the removable singularity filled by its series."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-4
    out = np.empty_like(u)
    us = u[small]
    out[small] = 1.0 + us * us / 6.0 * (1.0 + us * us / 20.0)
    ub = u[~small]
    out[~small] = np.sinh(ub) / ub
    return out[()] if out.ndim == 0 else out


def alternating_sum_bessel(x, y):
    """Generalized Bessel function at multiplicity one per axis, via the
    Weyl-type alternating sum

        J(x, y) = sum_g det(g) e^(<x, g y>) / (2^N pi(x) pi(y)),

    pi(v) = prod_i v_i.  For the sign-change groups the sum factorizes
    axis by axis into sinh(x_i y_i)/(x_i y_i), which is how zeros of pi
    are handled (each axis switches to its series near u_i = 0).  Equals
    prod_i j_{1/2}(i x_i y_i).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim == 0:
        x = x[None]
    if y.ndim == 0:
        y = y[None]
    return np.prod(sinhc(np.atleast_1d(x * y)), axis=-1)
