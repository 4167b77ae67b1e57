"""h-harmonics on the circle for the group Z_2 x Z_2 (N = 2).

A degree-n h-harmonic is a homogeneous polynomial killed by the Dunkl
Laplacian; for the sign-change group the Laplacian acts on monomials
x^a y^b through one coefficient per axis,

    phi_k(a) = a (a - 1 + 2k)   (a even),
               (a - 1) (a + 2k) (a odd),

so harmonic spaces, Gram matrices (through exact sphere moments), and
reproducing kernels are all available without any quadrature error.
The sphere quadrature itself folds the weight's endpoint powers into a
per-quadrant Gauss-Jacobi rule and integrates trigonometric moments of
w_k exactly.

The module also carries the scalar expansion identities in the radial
index lam (Gegenbauer addition theorem, plane-wave expansion), which the
verification suite replays as convergence checks.
"""

from __future__ import annotations

import json

import numpy as np
from scipy.linalg import null_space
from scipy.special import betaln, gammaln

from .core import MultiplicityVector, _as_kv, dunkl_kernel_unitary, intertwiner_atoms
from .errors import ConfigError, ConsistencyError
from .special import bessel_j, gegenbauer
from .quadrature import gauss_jacobi

__all__ = [
    "SphereQuadrature",
    "sphere_moment",
    "laplacian_coefficient",
    "apply_laplacian",
    "harmonic_basis",
    "harmonic_basis_json",
    "eval_homogeneous",
    "reproducing_kernel",
    "kernel_series",
    "funk_hecke_pair",
    "radialize_kernel",
    "orbit_integral",
    "addition_theorem_residual",
    "plane_wave_residual",
]


def _require_planar(kv) -> MultiplicityVector:
    kv = _as_kv(kv)
    if kv.n_axes != 2:
        raise ConfigError("harmonic machinery is implemented for N = 2")
    return kv


class SphereQuadrature:
    """Quadrature for integral_{S^1} F(y) w_k(y) dsigma(y).

    method "jacobi" (default): per quadrant, u = cos^2(theta) turns the
    integral into 2^(gamma-1) int_0^1 F u^(k1-1/2) (1-u)^(k2-1/2) du,
    and a Gauss-Jacobi rule absorbs both endpoint powers; n nodes per
    quadrant integrate trigonometric polynomials of degree ~4n against
    w_k exactly, for every k >= 0.

    method "trapezoid": midpoint rule in theta; spectrally accurate only
    when 2 k_i are even integers, kept as an independent cross-check.
    """

    def __init__(self, kv, n: int = 64, method: str = "jacobi"):
        self.kv = _require_planar(kv)
        k1, k2 = self.kv.k
        if method == "jacobi":
            rule = gauss_jacobi(n, k2 - 0.5, k1 - 0.5, 0.0, 1.0)
            c = np.sqrt(rule.nodes)
            s = np.sqrt(1.0 - rule.nodes)
            pts, wts = [], []
            for sc in (1.0, -1.0):
                for ss in (1.0, -1.0):
                    pts.append(np.stack([sc * c, ss * s], axis=-1))
                    wts.append(2.0 ** (self.kv.gamma - 1.0) * rule.weights)
            self.points = np.concatenate(pts, axis=0)
            self.weights = np.concatenate(wts)
        elif method == "trapezoid":
            m = max(8 * n, 64)
            theta = (np.arange(m) + 0.5) * (2.0 * np.pi / m)
            self.points = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
            wk = (2.0 * self.points[:, 0] ** 2) ** k1 * (2.0 * self.points[:, 1] ** 2) ** k2
            self.weights = wk * (2.0 * np.pi / m)
        else:
            raise ConfigError(f"unknown sphere quadrature method '{method}'")

    @property
    def mass(self) -> float:
        """Total weight; equals the sphere mass d_norm of the multiplicity."""
        return float(np.sum(self.weights))

    def integrate(self, f):
        return np.tensordot(self.weights, np.asarray(f(self.points)), axes=([0], [0]))

    def integrate_values(self, values):
        return np.tensordot(self.weights, np.asarray(values), axes=([0], [0]))

    def average(self, f):
        """Integral against the probability measure w_k dsigma / d_norm."""
        return self.integrate(f) / self.kv.d_norm


def sphere_moment(kv, i: int, j: int) -> float:
    """Exact even moment integral_{S^1} y1^(2i) y2^(2j) w_k dsigma."""
    kv = _require_planar(kv)
    k1, k2 = kv.k
    return float(2.0 ** (kv.gamma + 1.0)
                 * np.exp(betaln(i + k1 + 0.5, j + k2 + 0.5)))


def laplacian_coefficient(k: float, a: int) -> float:
    """One-axis action: T^2 maps x^a to this multiple of x^(a-2)."""
    if a % 2 == 0:
        return a * (a - 1.0 + 2.0 * k)
    return (a - 1.0) * (a + 2.0 * k)


def apply_laplacian(kv, coeffs: np.ndarray) -> np.ndarray:
    """Dunkl Laplacian on a homogeneous polynomial of degree n.

    coeffs[a] multiplies x^a y^(n-a); the result is the coefficient
    vector of a degree n-2 polynomial.
    """
    kv = _require_planar(kv)
    k1, k2 = kv.k
    n = coeffs.size - 1
    out = np.zeros(max(n - 1, 0))
    for a in range(n + 1):
        c = coeffs[a]
        if c == 0.0:
            continue
        if a >= 2:
            out[a - 2] += laplacian_coefficient(k1, a) * c
        if n - a >= 2:
            out[a] += laplacian_coefficient(k2, n - a) * c
    return out


def _gram(kv, n: int, basis: np.ndarray) -> np.ndarray:
    """Gram matrix of degree-n coefficient vectors in L^2(w_k dsigma / d_norm)."""
    d = kv.d_norm
    cols = basis.shape[1]
    g = np.zeros((cols, cols))
    for p in range(cols):
        for q in range(p, cols):
            total = 0.0
            for a in range(n + 1):
                for b in range(n + 1):
                    if (a + b) % 2 or basis[a, p] == 0.0 or basis[b, q] == 0.0:
                        continue
                    total += basis[a, p] * basis[b, q] * sphere_moment(kv, (a + b) // 2,
                                                                       (2 * n - a - b) // 2)
            g[p, q] = g[q, p] = total / d
    return g


_basis_cache: dict[tuple, list[np.ndarray]] = {}


def harmonic_basis(kv, n: int) -> list[np.ndarray]:
    """Orthonormal basis of the degree-n h-harmonics, as coefficient vectors.

    Orthonormal in L^2(w_k dsigma / d_norm) on the circle; dimension 1
    for n = 0 and 2 for n >= 1.  Memoized per (k, n); callers must not
    mutate the returned vectors.
    """
    kv = _require_planar(kv)
    key = (kv.k, n)
    if key in _basis_cache:
        return _basis_cache[key]
    _basis_cache[key] = _build_basis(kv, n)
    return _basis_cache[key]


def _build_basis(kv, n: int) -> list[np.ndarray]:
    if n == 0:
        return [np.array([1.0])]
    if n == 1:
        raw = np.eye(2)
    else:
        rows = []
        for a in range(n + 1):
            e = np.zeros(n + 1)
            e[a] = 1.0
            rows.append(apply_laplacian(kv, e))
        raw = null_space(np.stack(rows, axis=-1))
        if raw.shape[1] != 2:
            raise ConsistencyError(
                f"harmonic space of degree {n} came out {raw.shape[1]}-dimensional")
    g = _gram(kv, n, raw)
    vals, vecs = np.linalg.eigh(g)
    if np.min(vals) <= 0:
        raise ConsistencyError("harmonic Gram matrix is not positive definite")
    ortho = raw @ vecs @ np.diag(vals**-0.5)
    return [ortho[:, j] for j in range(ortho.shape[1])]


def harmonic_basis_json(kv, n_max: int) -> str:
    """Coefficient tables of the orthonormal bases up to degree n_max.

    The JSON document maps each degree to a list of coefficient vectors
    (coeffs[a] multiplies x^a y^(n-a)), for external inspection.
    """
    kv = _require_planar(kv)
    bases = {str(n): [[float(c) for c in coeffs] for coeffs in harmonic_basis(kv, n)]
             for n in range(n_max + 1)}
    return json.dumps({"N": 2, "k": list(kv.k), "bases": bases}, indent=2)


def eval_homogeneous(coeffs: np.ndarray, pts) -> np.ndarray:
    """Evaluate sum_a coeffs[a] x^a y^(n-a) at points (..., 2)."""
    pts = np.asarray(pts, dtype=float)
    n = coeffs.size - 1
    x, y = pts[..., 0], pts[..., 1]
    out = np.zeros(x.shape)
    for a in range(n + 1):
        if coeffs[a] != 0.0:
            out = out + coeffs[a] * x**a * y ** (n - a)
    return out


def _gegenbauer_constant(lam: float, n: int) -> float:
    """(n + lam) (2 lam)_n / (lam n!), with the lam -> 0 limit filled in."""
    if lam == 0.0:
        return 1.0 if n == 0 else 2.0
    return float((n + lam) / lam * np.exp(gammaln(2.0 * lam + n) - gammaln(2.0 * lam)
                                          - gammaln(n + 1.0)))


def _series_weight(lam: float, n: int) -> float:
    """b_n = Gamma(lam+1) / (2^n Gamma(n+lam+1)) = 1 / (2^n (lam+1)_n)."""
    return float(np.exp(gammaln(lam + 1.0) - n * np.log(2.0) - gammaln(n + lam + 1.0)))


def reproducing_kernel(kv, n: int, x, y, method: str = "basis",
                       n_intertwiner: int = 64):
    """Reproducing kernel P_n(x, y) of the degree-n harmonics.

    "basis" sums Y_j(x) Y_j(y) over the orthonormal basis (exact up to
    null-space rounding).  "gegenbauer" uses the intertwined Gegenbauer
    form c_n (|x||y|)^n V_k[C~_n(<x/|x|, .>)](y/|y|); the two agree and
    are cross-checked in the verification suite.
    """
    kv = _require_planar(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if method == "basis":
        total = 0.0
        for coeffs in harmonic_basis(kv, n):
            total = total + eval_homogeneous(coeffs, x) * eval_homogeneous(coeffs, y)
        return total
    if method != "gegenbauer":
        raise ConfigError(f"unknown reproducing kernel method '{method}'")
    if x.shape != (2,) or y.shape != (2,):
        raise ConfigError("gegenbauer route evaluates one pair at a time")
    rx, ry = float(np.hypot(*x)), float(np.hypot(*y))
    if n == 0:
        return 1.0
    if rx == 0.0 or ry == 0.0:
        return 0.0
    lam = kv.lam
    pts, masses = intertwiner_atoms(kv, y / ry, n_per_axis=n_intertwiner)
    cos_vals = pts @ (x / rx)
    v_geg = float(np.sum(masses * gegenbauer(n, lam, cos_vals)))
    return _gegenbauer_constant(lam, n) * (rx * ry) ** n * v_geg


def kernel_series(kv, x, y, n_max: int = 20) -> complex:
    """Harmonic expansion of the unitary kernel:

        E_k(ix, y) = sum_n b_n i^n j_{n+lam}(|x||y|) P_n(x, y),

    truncated at n_max.  Converges super-exponentially once
    n > e |x||y| / 2.
    """
    kv = _require_planar(kv)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx, ry = float(np.hypot(*x)), float(np.hypot(*y))
    lam = kv.lam
    total = 0.0 + 0.0j
    for n in range(n_max + 1):
        pn = reproducing_kernel(kv, n, x, y)
        total += (_series_weight(lam, n) * (1j**n)
                  * bessel_j(n + lam, rx * ry) * pn)
    return total


def funk_hecke_pair(kv, coeffs: np.ndarray, x, rule: SphereQuadrature | None = None):
    """Both sides of the Funk-Hecke identity for a degree-n harmonic Y:

        (1/d) int E_k(ix, eta) Y(eta) w_k dsigma(eta)
            = b_n i^n j_{n+lam}(|x|) Y(x).

    Returns (lhs, rhs); their difference measures quadrature plus kernel
    evaluation error only, the identity itself is exact.
    """
    kv = _require_planar(kv)
    if rule is None:
        rule = SphereQuadrature(kv, n=96)
    x = np.asarray(x, dtype=float)
    n = coeffs.size - 1
    vals = dunkl_kernel_unitary(kv, x, rule.points) * eval_homogeneous(coeffs, rule.points)
    lhs = rule.integrate_values(vals) / kv.d_norm
    rhs = (_series_weight(kv.lam, n) * (1j**n)
           * bessel_j(n + kv.lam, float(np.hypot(*x))) * eval_homogeneous(coeffs, x))
    return complex(lhs), complex(rhs)


def radialize_kernel(kv, z, t: float, n: int = 96, check: bool = True,
                     tol: float = 1e-9) -> float:
    """Spherical average (1/d) int E_k(i t eta, z) w_k dsigma(eta) = j_lam(t |z|).

    Computed by sphere quadrature and compared with the closed form; a
    disagreement beyond tol raises ConsistencyError (check=False skips
    the quadrature and returns the closed form directly).
    """
    kv = _require_planar(kv)
    z = np.asarray(z, dtype=float)
    closed = float(bessel_j(kv.lam, t * float(np.hypot(*z))))
    if not check:
        return closed
    rule = SphereQuadrature(kv, n=n)
    quad = rule.integrate_values(dunkl_kernel_unitary(kv, t * rule.points, z)) / kv.d_norm
    if abs(quad - closed) > tol:
        raise ConsistencyError(
            f"kernel radialization mismatch: quadrature {quad} vs closed form {closed}")
    return closed


def orbit_integral(kv, x, z, r: float, n: int = 96, n_intertwiner: int = 64,
                   check: bool = True, tol: float = 1e-6) -> float:
    """Two-kernel spherical average

        I(x, z, r) = (1/d) int_{S^1} E_k(ix, r eta) E_k(-iz, r eta) w_k dsigma(eta),

    evaluated through the intertwined radial form

        I(x, z, r) = int j_lam( r sqrt(|x|^2 + |z|^2 - 2 <x, eta>) ) dmu_z(eta),

    which collapses the two oscillating kernels into one Bessel profile
    over the intertwining measure of z.  With check=True the direct
    sphere quadrature of the first form is also computed and the two
    must agree within tol; the routes share no code, which makes this
    the strongest internal cross-check the package has.  The value is
    real and symmetric in x <-> z; x = 0 or z = 0 degenerates to the
    plain radialization j_lam(r |z|) resp. j_lam(r |x|).
    """
    kv = _require_planar(kv)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    pts, masses = intertwiner_atoms(kv, z, n_per_axis=n_intertwiner)
    arg = np.sqrt(np.maximum(float(x @ x) + float(z @ z) - 2.0 * (pts @ x), 0.0))
    radial = float(np.sum(masses * bessel_j(kv.lam, r * arg)))
    if not check:
        return radial
    rule = SphereQuadrature(kv, n=n)
    vals = (dunkl_kernel_unitary(kv, x, r * rule.points)
            * np.conj(dunkl_kernel_unitary(kv, z, r * rule.points)))
    direct = complex(rule.integrate_values(vals)) / kv.d_norm
    if abs(direct - radial) > tol:
        raise ConsistencyError(
            f"orbit integral routes disagree: quadrature {direct} vs intertwined {radial}")
    return radial


def addition_theorem_residual(lam: float, s: float, t: float, costheta,
                              n_max: int = 40) -> float:
    """Truncation residual of the Gegenbauer addition theorem

        j_lam(sqrt(s^2 + t^2 - 2 s t c)) =
            sum_n c_n(lam) b_n^2 (s t)^n j_{n+lam}(s) j_{n+lam}(t) C~_n(c).
    """
    c = np.asarray(costheta, dtype=float)
    arg = np.sqrt(np.maximum(s * s + t * t - 2.0 * s * t * c, 0.0))
    lhs = bessel_j(lam, arg)
    rhs = np.zeros_like(c)
    for n in range(n_max + 1):
        rhs = rhs + (_gegenbauer_constant(lam, n) * _series_weight(lam, n) ** 2
                     * (s * t) ** n * bessel_j(n + lam, s) * bessel_j(n + lam, t)
                     * gegenbauer(n, lam, c))
    return float(np.max(np.abs(lhs - rhs)))


def plane_wave_residual(lam: float, r: float, tgrid, n_max: int = 40) -> float:
    """Truncation residual of the Gegenbauer plane-wave expansion

        e^(i r t) = sum_n (i r / 2)^n [(2 lam)_n / ((lam)_n n!)]
                    j_{n+lam}(r) C~_n(t),   t in [-1, 1].
    """
    t = np.asarray(tgrid, dtype=float)
    lhs = np.exp(1j * r * t)
    rhs = np.zeros_like(t, dtype=complex)
    for n in range(n_max + 1):
        if lam == 0.0:
            coef = 1.0 if n == 0 else 2.0 / float(np.exp(gammaln(n + 1.0)))
        else:
            coef = float(np.exp(gammaln(2.0 * lam + n) - gammaln(2.0 * lam)
                                - gammaln(lam + n) + gammaln(lam) - gammaln(n + 1.0)))
        rhs = rhs + (0.5j * r) ** n * coef * bessel_j(n + lam, r) * gegenbauer(n, lam, t)
    return float(np.max(np.abs(lhs - rhs)))
