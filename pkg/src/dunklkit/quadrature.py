"""Quadrature rules used throughout the package.

Everything here is a thin, explicit layer over Gauss rules from
scipy.special.  The convention is uniform: a rule is a pair of node and
weight arrays such that ``sum(w * f(x))`` approximates the target
integral, with any singular endpoint factors absorbed into the weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import roots_jacobi, roots_legendre

from .errors import QuadratureError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_jacobi",
    "panel_gauss_legendre",
    "log_panel_rule",
    "adaptive_quad",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for ``integral ~ sum(weights * f(nodes))``."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must have matching shapes")

    @property
    def n(self) -> int:
        return self.nodes.size

    def integrate(self, f) -> float | complex:
        return np.sum(self.weights * f(self.nodes))

    def apply(self, values: np.ndarray):
        """Contract precomputed integrand values against the weights."""
        return np.tensordot(self.weights, values, axes=([0], [0]))


def gauss_legendre(n: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Legendre rule with n nodes on [a, b]."""
    x, w = roots_legendre(n)
    half = 0.5 * (b - a)
    return QuadratureRule(a + half * (x + 1.0), half * w)


def gauss_jacobi(n: int, alpha: float, beta: float, a: float, b: float) -> QuadratureRule:
    """Gauss-Jacobi rule on [a, b] for the weight (b-x)^alpha (x-a)^beta.

    The endpoint factors are folded into the returned weights, so the
    caller integrates only the smooth remainder of the integrand:

        integral_a^b g(x) (b-x)^alpha (x-a)^beta dx ~ sum(w * g(nodes)).

    Requires alpha, beta > -1.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise QuadratureError(f"Jacobi exponents must exceed -1, got ({alpha}, {beta})")
    x, w = roots_jacobi(n, alpha, beta)
    half = 0.5 * (b - a)
    # the affine map contributes half^(alpha+beta+1) from the weight factors
    return QuadratureRule(a + half * (x + 1.0), w * half ** (alpha + beta + 1.0))


def panel_gauss_legendre(edges: np.ndarray, n_per_panel) -> QuadratureRule:
    """Composite Gauss-Legendre rule over the panels defined by ``edges``.

    ``n_per_panel`` is either an int or a sequence with one entry per panel.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise QuadratureError("panel edges must be strictly increasing")
    counts = np.broadcast_to(np.asarray(n_per_panel, dtype=int), (edges.size - 1,))
    nodes, weights = [], []
    for a, b, n in zip(edges[:-1], edges[1:], counts):
        r = gauss_legendre(int(n), a, b)
        nodes.append(r.nodes)
        weights.append(r.weights)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights))


def log_panel_rule(a: float, b: float, nodes_per_decade: int = 16,
                   min_total: int = 0) -> QuadratureRule:
    """Composite Gauss rule on [a, b] with panels split per decade of x.

    Suited to integrands that are smooth on a log scale over many orders
    of magnitude (subordinator densities, heavy radial tails).  When
    ``min_total`` is given, the per-panel order is raised until the rule
    holds at least that many nodes.
    """
    if not (0.0 < a < b):
        raise QuadratureError("log panels need 0 < a < b")
    n_dec = max(1, int(np.ceil(np.log10(b / a))))
    edges = np.geomspace(a, b, n_dec + 1)
    n = nodes_per_decade
    if min_total > 0:
        n = max(n, int(np.ceil(min_total / n_dec)))
    return panel_gauss_legendre(edges, n)


def adaptive_quad(f, a: float, b: float, tol: float = 1e-11) -> float:
    """scipy adaptive quadrature with the failure modes surfaced as errors."""
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, err = quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)
        except IntegrationWarning as exc:
            raise QuadratureError(f"adaptive quadrature on [{a}, {b}] failed: {exc}") from exc
    if not np.isfinite(val):
        raise QuadratureError(f"adaptive quadrature returned {val}")
    return val
