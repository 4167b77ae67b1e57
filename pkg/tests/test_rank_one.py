"""Rank-one kernels and their representing measures.

Kernel reference values were frozen from a 40-digit mpmath evaluation of
j_a(z) = Gamma(a+1) (2/z)^a J_a(z) continued to imaginary argument, i.e.
not through the package's own series/scipy dispatch.
"""

import numpy as np
import pytest

from dunklkit import (
    ConfigError,
    intertwiner_measure,
    kernel_real,
    kernel_unitary,
    kernel_value,
    signed_product_measure,
    spherical_mean,
    spherical_mean_measure,
)
from dunklkit.rank_one import convolve

# k, x, y, E_k(x, y)
REAL_KERNEL = [
    (1.3, 0.8, -1.1, 0.84955527799331602),
    (0.5, 2.0, 2.0, 21.0613871058407804),
    (2.5, 1.0, 0.5, 1.10564035669531327),
]

# k, x, y, E_k(ix, y)
UNITARY_KERNEL = [
    (0.6, 1.9, 2.3, -0.323651661897583041 - 0.130328742728712085j),
    (1.0, 0.5, 1.0, 0.958851077208406001 + 0.162537030636066569j),
]


@pytest.mark.parametrize("k, x, y, expected", REAL_KERNEL)
def test_kernel_real_frozen_values(k, x, y, expected):
    assert kernel_real(k, x, y) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("k, x, y, expected", UNITARY_KERNEL)
def test_kernel_unitary_frozen_values(k, x, y, expected):
    got = kernel_unitary(k, x, y)
    assert abs(got - expected) < 1e-14 * abs(expected)


def test_kernel_real_structure():
    xs = np.linspace(-3.0, 3.0, 13)
    for k in (0.0, 0.5, 1.7):
        assert kernel_real(k, xs, 0.0) == pytest.approx(np.ones_like(xs))
        np.testing.assert_allclose(kernel_real(k, xs, 1.3),
                                   kernel_real(k, 1.3, xs), rtol=1e-15)
    # k = 0 degenerates to the exponential
    np.testing.assert_allclose(kernel_real(0.0, xs, 0.7), np.exp(0.7 * xs),
                               rtol=1e-14)


def test_kernel_unitary_is_bounded_by_one():
    xs = np.linspace(-8.0, 8.0, 41)
    for k in (0.0, 0.25, 1.0, 3.5):
        vals = kernel_unitary(k, xs[:, None], xs[None, :])
        assert np.max(np.abs(vals)) <= 1.0 + 1e-11


def test_kernel_value_dispatch():
    # real arguments take the real path
    assert kernel_value(1.3, 0.8, -1.1) == pytest.approx(
        kernel_real(1.3, 0.8, -1.1), rel=1e-15)
    # purely imaginary first slot reproduces the unitary kernel
    got = kernel_value(0.6, 1.9j, 2.3)
    assert abs(got - kernel_unitary(0.6, 1.9, 2.3)) < 1e-14
    # fully complex arguments agree with the hypergeometric route used for
    # the frozen complex Bessel values in test_special
    z, w = 1.0 + 0.5j, 0.25 - 1.0j
    u = z * w
    from dunklkit.special import bessel_j
    k = 0.75
    direct = bessel_j(k - 0.5, 1j * u) + u / (2 * k + 1) * bessel_j(k + 0.5, 1j * u)
    assert abs(kernel_value(k, z, w) - direct) < 1e-13 * abs(direct)


def test_kernel_negative_multiplicity_rejected():
    with pytest.raises(ConfigError):
        kernel_real(-0.1, 1.0, 1.0)
    with pytest.raises(ConfigError):
        signed_product_measure(-1.0, 1.0, 1.0)


# ---------------------------------------------------------------------------
# product-formula measure


@pytest.mark.parametrize("k", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("x, y", [(1.0, 0.5), (-1.0, 2.0), (0.7, -0.7)])
def test_signed_product_measure_mass_and_support(k, x, y):
    mu = signed_product_measure(k, x, y)
    assert mu.mass() == pytest.approx(1.0, abs=1e-12)
    r = np.abs(mu.grid)
    lo, hi = abs(abs(x) - abs(y)), abs(x) + abs(y)
    assert r.min() >= lo - 1e-12
    assert r.max() <= hi + 1e-12


@pytest.mark.parametrize("k", [0.5, 1.0, 2.5])
def test_signed_product_measure_reproduces_kernel_products(k):
    rng = np.random.default_rng(7)
    zs = np.linspace(0.0, 5.0, 20)
    for _ in range(4):
        x, y = rng.uniform(-2.0, 2.0, size=2)
        mu = signed_product_measure(k, x, y)
        lhs = np.array([mu.integrate(lambda s, z=z: kernel_unitary(k, z, s))
                        for z in zs])
        rhs = kernel_unitary(k, zs, x) * kernel_unitary(k, zs, y)
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)


def test_signed_product_measure_degenerate_cases():
    # zero multiplicity: classical translation, a point mass at x + y
    mu = signed_product_measure(0.0, 1.25, -0.5)
    assert mu.atoms == [(0.75, 1.0)]
    # translation by zero is the identity
    mu = signed_product_measure(1.5, 0.8, 0.0)
    assert mu.atoms == [(0.8, 1.0)]


def test_signed_product_measure_can_go_negative():
    # the measure is genuinely signed; same-sign arguments expose the
    # negative branch near the inner support radius
    mu = signed_product_measure(0.5, 1.0, 1.0)
    assert mu.node_masses.min() < -1e-4
    assert mu.total_variation() > 1.0 + 1e-2


# ---------------------------------------------------------------------------
# spherical means


@pytest.mark.parametrize("k", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("x, t", [(1.0, 0.5), (-0.7, 1.3), (2.0, 2.0)])
def test_spherical_mean_measure_is_probability(k, x, t):
    sig = spherical_mean_measure(k, x, t)
    sig.check_probability(tol=1e-10)
    r = np.abs(sig.grid)
    assert r.min() >= abs(abs(x) - t) - 1e-12
    assert r.max() <= abs(x) + t + 1e-12


def test_spherical_mean_measure_averages_translations():
    # sigma_{x,t} = (mu_{x,t} + mu_{x,-t}) / 2, checked through a smooth f
    k, x, t = 1.5, 0.9, 1.4
    f = lambda s: np.cos(0.8 * s) * np.exp(-0.1 * s * s)
    plus = signed_product_measure(k, x, t).integrate(f)
    minus = signed_product_measure(k, x, -t).integrate(f)
    assert spherical_mean(k, f, x, t) == pytest.approx(0.5 * (plus + minus),
                                                       abs=1e-12)


def test_spherical_mean_degenerate_cases():
    assert spherical_mean_measure(1.0, 0.6, 0.0).atoms == [(0.6, 1.0)]
    assert spherical_mean_measure(0.0, 0.75, 0.25).atoms == [(0.5, 0.5), (1.0, 0.5)]
    assert spherical_mean_measure(2.0, 0.0, 0.4).atoms == [(-0.4, 0.5), (0.4, 0.5)]
    # constants are fixed points of the mean
    assert spherical_mean(1.0, lambda s: np.ones_like(s), 1.1, 0.7) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# convolution of line measures


def test_convolve_point_masses_matches_product_measure():
    from dunklkit.measures import LineMeasure, dirac

    k, x, y = 1.0, 1.2, -0.7
    dx = dirac(x, cls=LineMeasure, lam=k)
    dy = dirac(y, cls=LineMeasure, lam=k)
    conv = convolve(k, dx, dy, grid_n=8192)
    mu = signed_product_measure(k, x, y)
    assert conv.mass() == pytest.approx(1.0, abs=1e-10)
    for z in (0.0, 0.6, 1.7, 3.1):
        lhs = conv.integrate_values(kernel_unitary(k, z, conv.grid))
        rhs = mu.integrate(lambda s: kernel_unitary(k, z, s))
        assert abs(lhs - rhs) < 5e-6


def test_convolve_empty_measure_rejected():
    from dunklkit.measures import LineMeasure

    empty = LineMeasure(grid=np.empty(0), density=np.empty(0),
                        weights=np.empty(0), lam=1.0)
    with pytest.raises(ConfigError):
        convolve(1.0, empty, empty)


# ---------------------------------------------------------------------------
# intertwining operator


@pytest.mark.parametrize("k, x", [(0.5, 1.0), (1.0, -1.3), (2.5, 0.4)])
def test_intertwiner_measure_reproduces_kernel(k, x):
    nu = intertwiner_measure(k, x)
    nu.check_probability(tol=1e-12)
    lo, hi = nu.support_bounds()
    assert lo >= -abs(x) - 1e-12 and hi <= abs(x) + 1e-12
    for y in (-2.0, -0.5, 0.3, 1.7):
        got = nu.integrate(lambda s, y=y: np.exp(s * y))
        assert got == pytest.approx(kernel_real(k, x, y), rel=1e-12)


def test_intertwiner_measure_unitary_route():
    # the same measure gives the bounded kernel through e^{i s y}
    k, x = 1.5, 0.9
    nu = intertwiner_measure(k, x)
    for y in (0.5, 2.0, 4.0):
        got = nu.integrate_values(np.exp(1j * nu.grid * y))
        assert abs(got - kernel_unitary(k, x, y)) < 1e-12


def test_intertwiner_identity_cases():
    assert intertwiner_measure(0.0, 1.7).atoms == [(1.7, 1.0)]
    assert intertwiner_measure(1.2, 0.0).atoms == [(0.0, 1.0)]
