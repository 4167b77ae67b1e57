"""Bessel-Kingman hypergroup on [0, infinity) at index lam > -1/2.

The convolution of two point masses x, y is the probability measure

    d nu_{x,y}(z) = m_lam(x, y, z) z^(2 lam + 1) dz

supported on [|x-y|, x+y], where m_lam is the classical Bessel product
kernel (Watson's formula).  The normalized Bessel functions j_lam are the
characters: hankel(nu_{x,y}) = j_lam(x r) j_lam(y r).

Numerically the point convolution is parameterized by the Gegenbauer
angle, z(u) = sqrt(x^2 + y^2 - 2 x y u), which turns the measure into the
fixed weight (1-u^2)^(lam-1/2) du on [-1, 1].  One Gauss-Jacobi rule then
serves every pair (x, y) uniformly, carries mass exactly 1, and is
spectrally accurate for integrands even in z (the characters are).
"""

from __future__ import annotations

import numpy as np
from scipy.special import betainc, erf, gammainc, gammainccinv, gammaln, roots_jacobi

from .errors import ConfigError, NumericalError, PositivityError, ResolutionError
from .measures import RadialProfileMeasure, deposit_on_grid, dirac, as_weighted_atoms
from .quadrature import gauss_jacobi, panel_gauss_legendre
from .special import bessel_j, bessel_j_envelope

__all__ = [
    "product_kernel",
    "convolve_points",
    "convolve_measures",
    "hankel_transform",
    "hankel_density_transform",
    "rayleigh_measure",
    "rayleigh_density",
    "rayleigh_radial_cdf",
    "cauchy_measure",
    "cauchy_density",
    "cauchy_radial_cdf",
    "stable_half_subordinator",
    "subordinate",
]


def _check_index(lam: float) -> float:
    lam = float(lam)
    if lam <= -0.5:
        raise ConfigError(f"hypergroup index must exceed -1/2, got {lam}")
    return lam


def _angular_norm(lam: float) -> float:
    # Gamma(lam+1) / (sqrt(pi) Gamma(lam+1/2)); normalizes (1-u^2)^(lam-1/2) du
    return float(np.exp(gammaln(lam + 1.0) - gammaln(lam + 0.5)) / np.sqrt(np.pi))


def product_kernel(lam: float, x: float, y: float, z) -> np.ndarray:
    """Density m_lam(x, y, z) of the point convolution w.r.t. z^(2lam+1) dz.

    Vanishes outside [|x-y|, x+y].  Requires x, y > 0.
    """
    lam = _check_index(lam)
    if x <= 0 or y <= 0:
        raise ConfigError("product kernel needs x, y > 0; use convolve_points for the atoms")
    z = np.asarray(z, dtype=float)
    lo, hi = abs(x - y), x + y
    inside = (z > lo) & (z < hi)
    out = np.zeros_like(z)
    zi = z[inside]
    c = 2.0 ** (1.0 - 2.0 * lam) * _angular_norm(lam)
    quad = (zi**2 - lo**2) * (hi**2 - zi**2)
    out[inside] = c * quad ** (lam - 0.5) / (x * y * zi) ** (2.0 * lam)
    return out[()] if out.ndim == 0 else out


def _angle_rule(lam: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    u, w = roots_jacobi(n, lam - 0.5, lam - 0.5)
    return u, w * _angular_norm(lam)


def convolve_points(lam: float, x: float, y: float, n: int = 128) -> RadialProfileMeasure:
    """Convolution of the point masses at x and y, as a node measure.

    The returned measure carries Gauss nodes in the Gegenbauer angle, so
    integrate() is spectrally accurate for smooth even integrands and the
    mass is exactly 1.  Atom degeneracies (x = 0 or y = 0) return the
    matching point mass.
    """
    lam = _check_index(lam)
    if x < 0 or y < 0:
        raise ConfigError("points must be nonnegative radii")
    if x == 0.0 or y == 0.0:
        return dirac(x + y, lam=lam)
    u, w = _angle_rule(lam, n)
    z = np.sqrt(np.maximum(x * x + y * y - 2.0 * x * y * u, 0.0))
    order = np.argsort(z)
    z, masses = z[order], w[order]
    dens = product_kernel(lam, x, y, z) * z ** (2.0 * lam + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(dens > 0, masses / np.where(dens > 0, dens, 1.0), 0.0)
    mu = RadialProfileMeasure(grid=z, density=dens, weights=weights, lam=lam)
    if abs(mu.mass() - 1.0) > 1e-9:
        raise NumericalError(f"point convolution mass {mu.mass()} is off; node budget too small?")
    return mu


def convolve_points_nodes(lam: float, x: np.ndarray, y: np.ndarray,
                          n: int = 32) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized node/mass arrays for many point pairs at once.

    x, y are broadcast against each other; the result gains a trailing
    node axis of length n.  Zero radii are handled by the z(u) formula
    collapsing all nodes onto the surviving radius.
    """
    lam = _check_index(lam)
    u, w = _angle_rule(lam, n)
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    z = np.sqrt(np.maximum(x * x + y * y - 2.0 * x * y * u, 0.0))
    masses = np.broadcast_to(w, z.shape)
    return z, masses


def convolve_measures(lam: float, sigma: RadialProfileMeasure, tau: RadialProfileMeasure,
                      grid_n: int = 16384, atom_cap: int = 2048,
                      points_per_pair: int = 32) -> RadialProfileMeasure:
    """Hypergroup convolution of two nonnegative radial measures.

    Both inputs are collapsed to weighted atoms (Gauss nodes pass through
    unchanged when they fit the cap), every atom pair is convolved with
    the shared angle rule, and the resulting point cloud is deposited on
    a uniform output grid with a cubic mass/moment-preserving kernel.
    Far outliers beyond the contiguous support (e.g. bookkeeping atoms of
    heavy-tailed inputs) stay explicit atoms at their rms radius.
    """
    lam = _check_index(lam)
    for m in (sigma, tau):
        if m.grid.size and np.min(m.node_masses) < -1e-12 * max(1.0, m.total_variation()):
            raise PositivityError("convolve_measures expects nonnegative measures")

    def _is_unit_point(m: RadialProfileMeasure) -> bool:
        return (not m.grid.size and len(m.atoms) == 1
                and m.atoms[0][0] == 0.0 and m.atoms[0][1] == 1.0)

    # the point mass at 0 is the hypergroup identity; keep it exact
    if _is_unit_point(tau):
        return sigma
    if _is_unit_point(sigma):
        return tau
    ax, aw = as_weighted_atoms(sigma, cap=atom_cap)
    bx, bw = as_weighted_atoms(tau, cap=atom_cap)
    if ax.size == 0 or bx.size == 0:
        raise ConfigError("cannot convolve an empty measure")

    # contiguous support estimate: sums of the density supports plus any
    # atoms within a factor ~4 of them; everything further out is tail
    core_a = sigma.grid[-1] if sigma.grid.size else np.max(ax)
    core_b = tau.grid[-1] if tau.grid.size else np.max(bx)
    z_max = 1.0001 * (core_a + core_b)
    grid = np.linspace(0.0, z_max, grid_n)
    node_mass = np.zeros(grid_n)
    far_atoms: dict[float, float] = {}

    chunk = max(1, int(2e6) // (bx.size * points_per_pair))
    for i0 in range(0, ax.size, chunk):
        a = ax[i0:i0 + chunk]
        wa = aw[i0:i0 + chunk]
        z, m = convolve_points_nodes(lam, a[:, None], bx[None, :], n=points_per_pair)
        m = m * (wa[:, None] * bw[None, :])[..., None]
        z, m = z.ravel(), m.ravel()
        ok = z <= z_max
        if np.any(ok):
            node_mass += deposit_on_grid(z[ok], m[ok], grid)
        if np.any(~ok):
            # collapse each out-of-range pair at its rms radius
            zz, mm = z[~ok], m[~ok]
            key = np.round(np.sqrt(np.mean(zz**2))).item()
            far_atoms[key] = far_atoms.get(key, 0.0) + float(mm.sum())

    h = grid[1] - grid[0]
    return RadialProfileMeasure(grid=grid, density=node_mass / h,
                                weights=np.full(grid_n, h),
                                atoms=sorted(far_atoms.items()), lam=lam)


def hankel_transform(lam: float, mu: RadialProfileMeasure, r):
    """Hankel image of a measure: integral of j_lam(r z) d mu(z)."""
    lam = _check_index(lam)
    r = np.asarray(r, dtype=float)
    node_vals = bessel_j(lam, np.multiply.outer(mu.grid, r)) if mu.grid.size else None
    atom_vals = (bessel_j(lam, np.multiply.outer(np.array([p for p, _ in mu.atoms]), r))
                 if mu.atoms else None)
    total = 0.0
    if node_vals is not None:
        total = total + np.tensordot(mu.node_masses, node_vals, axes=([0], [0]))
    if atom_vals is not None:
        masses = np.array([w for _, w in mu.atoms])
        total = total + np.tensordot(masses, atom_vals, axes=([0], [0]))
    return total


def hankel_density_transform(lam: float, g, s, r_max: float, n: int = 512):
    """Hankel transform of a density on [0, r_max]:

        H(g)(s) = (1 / (2^lam Gamma(lam+1))) int_0^rmax g(r) j_lam(r s) r^(2lam+1) dr
    """
    lam = _check_index(lam)
    rule = gauss_jacobi(n, 0.0, 2.0 * lam + 1.0, 0.0, r_max)
    s = np.asarray(s, dtype=float)
    vals = g(rule.nodes)[:, None] * bessel_j(lam, np.multiply.outer(rule.nodes, s))
    norm = np.exp(-lam * np.log(2.0) - gammaln(lam + 1.0))
    return norm * np.tensordot(rule.weights, vals, axes=([0], [0]))


# ---------------------------------------------------------------------------
# canonical one-parameter families


def rayleigh_density(lam: float, t: float, r):
    r = np.asarray(r, dtype=float)
    norm = (2.0 * t) ** (lam + 1.0) * 2.0**lam * np.exp(gammaln(lam + 1.0))
    return r ** (2.0 * lam + 1.0) * np.exp(-r * r / (4.0 * t)) / norm


def rayleigh_radial_cdf(lam: float, t: float, r):
    return gammainc(lam + 1.0, np.asarray(r, dtype=float) ** 2 / (4.0 * t))


def rayleigh_measure(lam: float, t: float, n: int = 256) -> RadialProfileMeasure:
    """Radial heat profile at time t: density prop. to r^(2lam+1) exp(-r^2/4t).

    Hankel image exp(-t r^2); the hypergroup convolution semigroup.
    Nodes come from a Gauss rule with the r^(2lam+1) factor absorbed, so
    mass and smooth moments hold to rounding.  t = 0 gives the identity.
    """
    lam = _check_index(lam)
    if t < 0:
        raise ConfigError("time must be nonnegative")
    if t == 0.0:
        return dirac(0.0, lam=lam)
    u_max = float(gammainccinv(lam + 1.0, 1e-14))
    r_max = 2.0 * np.sqrt(t * u_max)
    rule = gauss_jacobi(n, 0.0, 2.0 * lam + 1.0, 0.0, r_max)
    norm = (2.0 * t) ** (lam + 1.0) * 2.0**lam * np.exp(gammaln(lam + 1.0))
    masses = rule.weights * np.exp(-rule.nodes**2 / (4.0 * t)) / norm
    dens = rayleigh_density(lam, t, rule.nodes)
    with np.errstate(divide="ignore"):
        weights = masses / dens
    return RadialProfileMeasure(grid=rule.nodes, density=dens, weights=weights, lam=lam,
                                density_fn=lambda r, lam=lam, t=t: rayleigh_density(lam, t, r))


def cauchy_density(lam: float, t: float, r):
    r = np.asarray(r, dtype=float)
    c = 2.0 * np.exp(gammaln(lam + 1.5) - gammaln(lam + 1.0)) / np.sqrt(np.pi)
    return c * t * r ** (2.0 * lam + 1.0) / (t * t + r * r) ** (lam + 1.5)


def cauchy_radial_cdf(lam: float, t: float, r):
    r = np.asarray(r, dtype=float)
    return betainc(lam + 1.0, 0.5, r * r / (r * r + t * t))


def _oscillation_panels(z_lo: float, z_cut: float, freq_max: float,
                        max_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Geometric panels on [z_lo, z_cut] with node counts resolving freq_max."""
    edges = [0.0, z_lo] if z_lo > 0 else [0.0]
    z = max(z_lo, 1e-6)
    while z < z_cut:
        z = min(z * 2.0, z_cut)
        edges.append(z)
    edges = np.unique(np.asarray(edges))
    widths = np.diff(edges)
    counts = np.maximum(24, (0.55 * freq_max * widths).astype(int) + 12)
    if counts.sum() > max_nodes:
        raise ResolutionError(
            f"resolving frequencies up to {freq_max} over [0, {z_cut:.3g}] needs "
            f"{counts.sum()} nodes (cap {max_nodes}); lower freq_max or raise the cap")
    return edges, counts


def _far_atom_radius(lam: float, r_min: float, z_start: float,
                     atom_mass: float, tol: float) -> float:
    """Radius where an atom of the given mass stays below tol in any
    Hankel image at frequencies r >= r_min."""
    z = max(z_start, 1.0)
    while abs(atom_mass) * bessel_j_envelope(lam, r_min * z) > tol and z < 1e300:
        z *= 4.0
    return z


def cauchy_measure(lam: float, t: float, freq_max: float = 8.0, r_min: float = 0.25,
                   tail_tol: float = 5e-9, max_nodes: int = 200_000) -> RadialProfileMeasure:
    """Radial Poisson profile at time t (Hankel image exp(-t r)).

    The closed-form density has a heavy z^(-2) tail that cannot be
    gridded, but the profile is the 1/2-stable time mixture of the
    Gaussian family, so it is built by subordination: mixture times whose
    Gaussian image at frequency r_min falls below tail_tol are dropped to
    one far bookkeeping atom carrying the exact mass remainder.
    Truncating whole mixture times (rather than the density in z) keeps
    the certificate honest, because a slice's transform bound exp(-s r^2)
    applies only to the complete slice.  Transforms are then accurate at
    r = 0 and for r >= r_min.
    """
    lam = _check_index(lam)
    if t <= 0:
        raise ConfigError("time must be positive")
    rho = stable_half_subordinator(t, tail_mass=min(1e-9, 0.1 * tail_tol))
    return subordinate(lam, lambda s: rayleigh_measure(lam, s), rho,
                       freq_max=freq_max, r_min=r_min, tail_tol=tail_tol,
                       max_nodes=max_nodes,
                       image_bound=lambda s, r: np.exp(-s * r * r))


def stable_half_subordinator(t: float, tail_mass: float = 1e-9,
                             nodes_per_decade: int = 16) -> RadialProfileMeasure:
    """Law of the 1/2-stable subordinator at time t.

    Density t exp(-t^2/4s) / (2 sqrt(pi) s^(3/2)) on s > 0; Laplace
    transform exp(-t sqrt(u)).  Log-scale Gauss panels cover the bulk and
    the slowly decaying s^(-3/2) tail up to the requested residual mass,
    which is then carried by a single far atom (the CDF is erfc(t/2sqrt(s)),
    so the cut is exact).
    """
    if t <= 0:
        raise ConfigError("time must be positive")
    s_lo = t * t / 160.0
    s_hi = (t / (np.sqrt(np.pi) * tail_mass)) ** 2
    n_dec = int(np.ceil(np.log10(s_hi / s_lo)))
    edges = np.geomspace(s_lo, s_hi, n_dec + 1)
    rule = panel_gauss_legendre(edges, nodes_per_decade)

    def dens_fn(s, t=t):
        s = np.asarray(s, dtype=float)
        return t * np.exp(-t * t / (4.0 * s)) / (2.0 * np.sqrt(np.pi) * s**1.5)

    dens = dens_fn(rule.nodes)
    residual = float(erf(t / (2.0 * np.sqrt(s_hi))))  # mass beyond s_hi
    low_missed = 1.0 - residual - float(np.sum(rule.weights * dens))
    atoms = [(4.0 * s_hi, residual)]
    if abs(low_missed) > 1e-12:
        # whatever the panels missed numerically (should be ~0) is kept explicit
        atoms.append((s_lo, low_missed))
    return RadialProfileMeasure(grid=rule.nodes, density=dens, weights=rule.weights,
                                atoms=atoms, density_fn=dens_fn)


def subordinate(lam: float, base, rho: RadialProfileMeasure, freq_max: float = 8.0,
                r_min: float = 0.25, tail_tol: float = 5e-8,
                max_nodes: int = 200_000, image_bound=None) -> RadialProfileMeasure:
    """Mixture measure integral sigma_s d rho(s) for a measure family base(s).

    base maps s > 0 to a RadialProfileMeasure; measures carrying an
    analytic density_fn are mixed exactly, others through a cubic spline
    of their sampled density.

    When rho has a heavy tail the mixture cannot be gridded in full.
    image_bound(s, r), if given, must dominate the Hankel image of
    base(s) at frequency r (for the Gaussian family: exp(-s r^2)); the
    construction then drops mixture times whose combined image at r_min
    is below tail_tol, grids the rest on oscillation-resolving panels,
    and parks the exact mass remainder in one far bookkeeping atom.  The
    resulting transform is certified at r = 0 and r >= r_min.  Without
    image_bound every mixture time is kept.
    """
    lam = _check_index(lam)
    s_pos, s_mass = as_weighted_atoms(rho, cap=10**9)
    if np.any(s_pos <= 0):
        raise ConfigError("subordination needs a measure on s > 0")

    if image_bound is not None:
        order = np.argsort(s_pos)
        s_pos, s_mass = s_pos[order], s_mass[order]
        dropped_image = np.cumsum((np.abs(s_mass) * image_bound(s_pos, r_min))[::-1])[::-1]
        keep = dropped_image > 0.5 * tail_tol
        if not np.any(keep):
            raise ResolutionError("image bound drops every mixture time; lower tail_tol")
        s_pos, s_mass = s_pos[keep], s_mass[keep]

    sup = np.empty(s_pos.size)
    dens_fns = []
    for j, s in enumerate(s_pos):
        m = base(float(s))
        if not isinstance(m, RadialProfileMeasure):
            raise ConfigError("base(s) must return a RadialProfileMeasure")
        sup[j] = m.support_bounds()[1]
        if m.density_fn is not None:
            dens_fns.append(m.density_fn)
        else:
            from scipy.interpolate import CubicSpline

            spl = CubicSpline(m.grid, m.density, extrapolate=False)
            lo, hi = m.grid[0], m.grid[-1]
            dens_fns.append(lambda r, spl=spl, lo=lo, hi=hi: np.where(
                (np.asarray(r) >= lo) & (np.asarray(r) <= hi),
                np.nan_to_num(spl(np.clip(r, lo, hi))), 0.0))

    z_cut = float(np.max(sup))
    edges, counts = _oscillation_panels(0.0, z_cut, freq_max, max_nodes)
    rule = panel_gauss_legendre(edges, counts)

    def mixture_density(r):
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape)
        for w, fn in zip(s_mass, dens_fns):
            out += w * np.asarray(fn(r))
        return out

    dens = mixture_density(rule.nodes)
    lump = float(rho.mass()) - float(np.sum(rule.weights * dens))
    z_far = _far_atom_radius(lam, r_min, 4.0 * z_cut, lump, 0.5 * tail_tol)
    return RadialProfileMeasure(grid=rule.nodes, density=dens, weights=rule.weights,
                                atoms=[(z_far, lump)], lam=lam,
                                density_fn=mixture_density)
