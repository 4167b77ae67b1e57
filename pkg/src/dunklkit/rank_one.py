"""Rank-one Dunkl analysis on the real line, multiplicity k >= 0.

The kernel E_k(z, w) depends on z, w only through u = z w:

    E_k = j_{k-1/2}(i u) + u / (2k+1) j_{k+1/2}(i u),

with E_0(z, w) = exp(zw).  The generalized translation of point masses is
a signed measure: the radial part is the Bessel-Kingman convolution at
index k - 1/2, mirrored to +/-z with weights built from three cosine-rule
coefficients.  Averaging the translation over t and -t yields the
spherical mean measure, which is a probability measure for every k >= 0.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln, roots_jacobi

from .bessel_kingman import convolve_points_nodes, product_kernel
from .errors import ConfigError
from .measures import LineMeasure, as_weighted_atoms, deposit_on_grid
from .special import bessel_j, bessel_j_imag

__all__ = [
    "kernel_value",
    "kernel_real",
    "kernel_unitary",
    "signed_product_measure",
    "spherical_mean_measure",
    "spherical_mean",
    "convolve",
    "intertwiner_measure",
]


def _check_k(k: float) -> float:
    k = float(k)
    if k < 0:
        raise ConfigError(f"multiplicity must be nonnegative, got {k}")
    return k


def kernel_real(k: float, x, y):
    """E_k(x, y) for real x, y; real-valued, symmetric, E_k(x, 0) = 1."""
    k = _check_k(k)
    u = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    return bessel_j_imag(k - 0.5, u) + u / (2.0 * k + 1.0) * bessel_j_imag(k + 0.5, u)


def kernel_unitary(k: float, x, y):
    """E_k(i x, y) for real x, y: the bounded character, |value| <= 1."""
    k = _check_k(k)
    u = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    return bessel_j(k - 0.5, u) + 1j * u / (2.0 * k + 1.0) * bessel_j(k + 0.5, u)


def kernel_value(k: float, z, w):
    """E_k(z, w) for complex arguments (dispatches to the real/unitary paths)."""
    k = _check_k(k)
    u = np.asarray(z) * np.asarray(w)
    if not np.iscomplexobj(u):
        return kernel_real(k, z, w)
    if np.all(np.abs(u.real) <= 1e-14 * np.abs(u)):
        v = u.imag  # u = i v: E = j(v) + i v/(2k+1) j(v) with real Bessel values
        out = kernel_unitary(k, v, 1.0)
        return out[()] if np.ndim(out) == 0 else out
    iu = 1j * u
    return bessel_j(k - 0.5, iu) + u / (2.0 * k + 1.0) * bessel_j(k + 0.5, iu)


def _sigma(u, v, w):
    """Cosine-rule coefficient (u^2 + v^2 - w^2) / (2 u v), zero when u v = 0."""
    uv = np.asarray(u) * np.asarray(v)
    num = np.square(u) + np.square(v) - np.square(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(uv != 0.0, num / np.where(uv != 0.0, 2.0 * uv, 1.0), 0.0)


def _mirror_weights(x, y, z):
    """Weights of the signed translation measure at +z and -z.

    x, y enter with their signs; z > 0 are radial nodes of the
    Bessel-Kingman convolution of |x| and |y|.
    """
    s1 = _sigma(x, y, z)
    s23 = _sigma(z, x, y) + _sigma(z, y, x)
    return 0.5 * (1.0 - s1 + s23), 0.5 * (1.0 - s1 - s23)


def signed_product_measure(k: float, x: float, y: float, n: int = 128) -> LineMeasure:
    """Product-formula measure mu_{x,y}: for every real or imaginary s,

        E_k(x, s) E_k(y, s) = int E_k(z, s) dmu_{x,y}(z).

    Signed in general, total mass 1, supported on +/-[||x|-|y||, |x|+|y|];
    k = 0 degenerates to the point mass at x+y.  Convention note: pairing
    a radial profile with mu_{x,-y} reproduces kernels of the heat type,
    Gamma_t(x, y) = int F_t(|z|) dmu_{x,-y}(z); the reflection is the
    usual character-convention twist between convolution and semigroup
    pairing.
    """
    k = _check_k(k)
    x, y = float(x), float(y)
    if k == 0.0:
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(x + y, 1.0)], lam=k)
    hi = abs(x) + abs(y)
    # the convolution nodes live on a band of width 2 min(|x|,|y|); once
    # that is below float resolution of the band location the node set
    # collapses, and the measure is the point mass to the same accuracy
    if min(abs(x), abs(y)) <= 1e-11 * hi or hi < 1e-150:
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(x + y, 1.0)], lam=k)
    lam = k - 0.5
    z, masses = convolve_points_nodes(lam, abs(x), abs(y), n=n)
    order = np.argsort(z)
    z, masses = z[order], masses[order]
    w_plus, w_minus = _mirror_weights(x, y, z)
    dens_radial = product_kernel(lam, abs(x), abs(y), z) * z ** (2.0 * k)
    # node density of the signed measure = radial density times the split weight
    grid = np.concatenate([-z[::-1], z])
    node_dens = np.concatenate([(dens_radial * w_minus)[::-1], dens_radial * w_plus])
    node_mass = np.concatenate([(masses * w_minus)[::-1], masses * w_plus])
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(node_dens != 0.0, node_mass / np.where(node_dens != 0.0, node_dens, 1.0), 0.0)
    return LineMeasure(grid=grid, density=node_dens, weights=weights, lam=k)


def spherical_mean_measure(k: float, x: float, t: float, n: int = 128) -> LineMeasure:
    """Probability measure sigma_{x,t} representing the spherical mean:

        M_f(x, t) = int f dsigma_{x,t} = (tau_x f(t) + tau_x f(-t)) / 2.

    Supported on +/-[||x|-t|, |x|+t]; weights (1 +/- sigma)/2 stay in
    [0, 1] on that set for every k >= 0 and every real x.
    """
    k = _check_k(k)
    x, t = float(x), abs(float(t))
    if t <= 1e-11 * abs(x):
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(x, 1.0)], lam=k)
    if k == 0.0 or abs(x) + t < 1e-150:
        # classical mean: half mass at x - t and x + t
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(x - t, 0.5), (x + t, 0.5)], lam=k)
    # same band-collapse threshold as the product measure
    if abs(x) <= 1e-11 * t:
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(-t, 0.5), (t, 0.5)], lam=k)
    lam = k - 0.5
    z, masses = convolve_points_nodes(lam, abs(x), t, n=n)
    order = np.argsort(z)
    z, masses = z[order], masses[order]
    sig = _sigma(z, x, t)
    w_plus, w_minus = 0.5 * (1.0 + sig), 0.5 * (1.0 - sig)
    dens_radial = product_kernel(lam, abs(x), t, z) * z ** (2.0 * k)
    grid = np.concatenate([-z[::-1], z])
    node_dens = np.concatenate([(dens_radial * w_minus)[::-1], dens_radial * w_plus])
    node_mass = np.concatenate([(masses * w_minus)[::-1], masses * w_plus])
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(node_dens != 0.0, node_mass / np.where(node_dens != 0.0, node_dens, 1.0), 0.0)
    return LineMeasure(grid=grid, density=node_dens, weights=weights, lam=k)


def spherical_mean(k: float, f, x: float, t: float, n: int = 128):
    """Evaluate the spherical mean M_f(x, t) = int f dsigma_{x,t}."""
    return spherical_mean_measure(k, x, t, n=n).integrate(f)


def convolve(k: float, mu: LineMeasure, nu: LineMeasure, grid_n: int = 16384,
             atom_cap: int = 2048, points_per_pair: int = 32) -> LineMeasure:
    """Generalized convolution of two (possibly signed) measures on R.

    Atoms of mu x nu are translated pairwise through the signed product
    measure and deposited on a symmetric uniform grid.  Associative and
    commutative up to deposit resolution; degeneracies (zero radii,
    k = 0) fall out of the same formulas.
    """
    k = _check_k(k)
    ax, aw = as_weighted_atoms(mu, cap=atom_cap)
    bx, bw = as_weighted_atoms(nu, cap=atom_cap)
    if ax.size == 0 or bx.size == 0:
        raise ConfigError("cannot convolve an empty measure")

    def _extent(m):
        lo, hi = m.support_bounds()
        return max(abs(lo), abs(hi))

    L = 1.0001 * (_extent(mu) + _extent(nu))
    if L == 0.0:  # both inputs sit at the origin
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(0.0, float(mu.mass() * nu.mass()))], lam=k)
    grid = np.linspace(-L, L, grid_n)
    node_mass = np.zeros(grid_n)

    if k == 0.0:
        pos = (ax[:, None] + bx[None, :]).ravel()
        mass = (aw[:, None] * bw[None, :]).ravel()
        node_mass += deposit_on_grid(pos, mass, grid)
    else:
        lam = k - 0.5
        chunk = max(1, int(2e6) // (bx.size * points_per_pair))
        for i0 in range(0, ax.size, chunk):
            a, wa = ax[i0:i0 + chunk], aw[i0:i0 + chunk]
            z, m = convolve_points_nodes(lam, np.abs(a)[:, None], np.abs(bx)[None, :],
                                         n=points_per_pair)
            w_plus, w_minus = _mirror_weights(a[:, None, None], bx[None, :, None], z)
            pair_w = (wa[:, None] * bw[None, :])[..., None]
            node_mass += deposit_on_grid(z.ravel(), (m * w_plus * pair_w).ravel(), grid)
            node_mass += deposit_on_grid(-z.ravel(), (m * w_minus * pair_w).ravel(), grid)

    h = grid[1] - grid[0]
    return LineMeasure(grid=grid, density=node_mass / h, weights=np.full(grid_n, h), lam=k)


def intertwiner_measure(k: float, x: float, n: int = 64) -> LineMeasure:
    """Representing measure of the intertwining operator at the point x:

        V_k f(x) = int f dmu_x,
        dmu_x = b_k (1 - xi/x)^(k-1) (1 + xi/x)^k / |x| dxi on [-|x|, |x|],

    with b_k = Gamma(k + 1/2) / (sqrt(pi) Gamma(k)).  A probability
    measure; exp integrates to the kernel: int e^(xi y) dmu_x = E_k(x, y).
    k = 0 is the identity (point mass at x).
    """
    k = _check_k(k)
    x = float(x)
    if k == 0.0 or x == 0.0:
        return LineMeasure(grid=np.empty(0), density=np.empty(0), weights=np.empty(0),
                           atoms=[(x, 1.0)], lam=k)
    t, w = roots_jacobi(n, k - 1.0, k)
    b_k = np.exp(gammaln(k + 0.5) - gammaln(k)) / np.sqrt(np.pi)
    nodes = x * t
    masses = b_k * w
    dens = b_k * (1.0 - t) ** (k - 1.0) * (1.0 + t) ** k / abs(x)
    if x < 0:
        nodes, masses, dens = nodes[::-1], masses[::-1], dens[::-1]
    with np.errstate(divide="ignore"):
        weights = masses / dens
    return LineMeasure(grid=nodes, density=dens, weights=weights, lam=k)
