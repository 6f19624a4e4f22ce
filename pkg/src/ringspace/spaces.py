"""Norms and inner products for the three Hilbert spaces on the ring.

Three tags: boundary arclength (Smirnov), boundary harmonic measure at the
base point (Hardy), and normalized area (Bergman), each optionally weighted
by ``|u|^2`` for a supplied analytic ``u``.  Everything is expressed in the
Laurent monomial basis, so weighted problems reduce to dense Hermitian
linear algebra on Gram matrices assembled by quadrature.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ArgumentError
from .geometry import INNER, OUTER, AnnulusDomain, boundary_angles, boundary_nodes
from .harmonic import GreenFunction, measure_density
from .laurent import LaurentPolynomial, to_laurent  # noqa: F401  (re-export)


class SpaceKind(enum.Enum):
    SMIRNOV_ARCLENGTH = "smirnov"
    HARDY_HARMONIC_MEASURE = "hardy"
    BERGMAN_AREA = "bergman"


@dataclass(frozen=True)
class SpaceTag:
    """Which inner product to use, plus an optional ``|weight_fn|^2`` weight."""

    kind: SpaceKind
    weight_fn: Optional[Callable] = None

    @property
    def weighted(self) -> bool:
        return self.weight_fn is not None

    def weight_values(self, z: np.ndarray) -> np.ndarray:
        if self.weight_fn is None:
            return np.ones(np.shape(z))
        return np.abs(np.asarray(self.weight_fn(z), dtype=complex))**2


def smirnov_tag(weight_fn=None) -> SpaceTag:
    return SpaceTag(SpaceKind.SMIRNOV_ARCLENGTH, weight_fn)


def hardy_tag(weight_fn=None) -> SpaceTag:
    return SpaceTag(SpaceKind.HARDY_HARMONIC_MEASURE, weight_fn)


def bergman_tag(weight_fn=None) -> SpaceTag:
    return SpaceTag(SpaceKind.BERGMAN_AREA, weight_fn)


_GAUSS_RADIAL = 64  # exact for the polynomial radial integrands used in tests


def boundary_quadrature(domain: AnnulusDomain, m: int):
    """Points and arclength weights for both circles, m nodes each."""
    theta = boundary_angles(m)
    r = domain.inner_radius
    pts = np.concatenate([np.exp(1j * theta), r * np.exp(1j * theta)])
    w = np.concatenate([np.full(m, 2.0 * np.pi / m), np.full(m, 2.0 * np.pi * r / m)])
    return pts, w


def area_quadrature(domain: AnnulusDomain, m: int, n_radial: int = _GAUSS_RADIAL):
    """Points and weights for normalized area measure dA = dx dy / pi.

    Tensor product of Gauss-Legendre in radius and trapezoid in angle;
    weights include the polar metric factor rho.
    """
    r = domain.inner_radius
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    rho = 0.5 * (1.0 - r) * x + 0.5 * (1.0 + r)
    wr = 0.5 * (1.0 - r) * wx
    theta = boundary_angles(m)
    wt = 2.0 * np.pi / m
    pts = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    w = ((wr * rho)[:, None] * np.full(m, wt)[None, :]).ravel() / np.pi
    return pts, w


def measure_quadrature(domain: AnnulusDomain, m: int, N_green: int = 128,
                       green_fn: GreenFunction | None = None):
    """Points and harmonic-measure weights (density times arclength weight)."""
    nodes = boundary_nodes(domain, OUTER, m) + boundary_nodes(domain, INNER, m)
    pts = np.array([s.point for s in nodes])
    ds = np.array([s.weight for s in nodes])
    dens = measure_density(domain, nodes, N=N_green, green_fn=green_fn)
    return pts, dens * ds


def quadrature_for(domain: AnnulusDomain, tag: SpaceTag, m: int,
                   green_fn: GreenFunction | None = None):
    """Quadrature points and measure weights for a tag (weight function excluded)."""
    if tag.kind is SpaceKind.SMIRNOV_ARCLENGTH:
        return boundary_quadrature(domain, m)
    if tag.kind is SpaceKind.BERGMAN_AREA:
        return area_quadrature(domain, m)
    if tag.kind is SpaceKind.HARDY_HARMONIC_MEASURE:
        return measure_quadrature(domain, m, green_fn=green_fn)
    raise ArgumentError(f"unknown space tag {tag.kind}")


def monomial_norms(domain: AnnulusDomain, tag: SpaceTag, N: int) -> np.ndarray:
    """Diagonal Gram entries ``||z^n||^2`` for n = -N..N.

    Arclength: ``2 pi (1 + r^{2n+1})``.  Normalized area:
    ``(1 - r^{2n+2})/(n+1)`` with the logarithmic value ``2 log(1/r)`` at
    ``n = -1``.  Harmonic measure: quadrature against the Green density
    (the closed form ``omega_1(z0) + r^{2n} omega_2(z0)`` is left to tests).
    """
    if tag.weighted:
        raise ArgumentError("monomial norms are diagonal only without a weight; "
                            "use gram_matrix for weighted inner products")
    r = domain.inner_radius
    ns = np.arange(-N, N + 1, dtype=float)
    if tag.kind is SpaceKind.SMIRNOV_ARCLENGTH:
        return 2.0 * np.pi * (1.0 + r**(2.0 * ns + 1.0))
    if tag.kind is SpaceKind.BERGMAN_AREA:
        out = np.empty(ns.size)
        for i, n in enumerate(ns):
            if n == -1.0:
                out[i] = 2.0 * math.log(1.0 / r)
            else:
                out[i] = (1.0 - r**(2.0 * n + 2.0)) / (n + 1.0)
        return out
    if tag.kind is SpaceKind.HARDY_HARMONIC_MEASURE:
        m = max(512, 4 * N + 4)
        pts, w = measure_quadrature(domain, m)
        rho = np.abs(pts)
        return np.array([float(np.sum(w * rho**(2.0 * n))) for n in ns])
    raise ArgumentError(f"unknown space tag {tag.kind}")


def _vandermonde(pts: np.ndarray, N: int) -> np.ndarray:
    """V[s, j] = pts[s]^(j - N) for columns j = 0..2N."""
    ns = np.arange(-N, N + 1, dtype=float)
    return pts[:, None]**ns[None, :]


def gram_matrix(domain: AnnulusDomain, tag: SpaceTag, N: int, m: int,
                green_fn: GreenFunction | None = None) -> np.ndarray:
    """Hermitian Gram ``G[j, k] = <z^j, z^k>`` on the window -N..N, weight included.

    ``m`` counts angular nodes per circle (boundary tags) or per radial ring
    (area tag); fewer than ``4N + 4`` aliases the top frequencies.
    """
    if m < 4 * N + 4:
        raise ArgumentError(f"need m >= 4N+4 = {4 * N + 4} quadrature nodes, got {m}")
    pts, w = quadrature_for(domain, tag, m, green_fn=green_fn)
    wv = w * tag.weight_values(pts)
    V = _vandermonde(pts, N)
    M = (V.conj().T * wv) @ V  # M[j, k] = <z^k, z^j>
    M = 0.5 * (M + M.conj().T)
    return M.conj()


def inner_product(f: LaurentPolynomial, g: LaurentPolynomial,
                  domain: AnnulusDomain, tag: SpaceTag, m: int = 512) -> complex:
    """Sesquilinear ``<f, g>`` in the tagged space, by quadrature."""
    if m < 4:
        raise ArgumentError("need at least 4 quadrature nodes")
    pts, w = quadrature_for(domain, tag, m)
    wv = w * tag.weight_values(pts)
    return complex(np.sum(wv * f(pts) * np.conj(g(pts))))


def norm(f, domain: AnnulusDomain, tag: SpaceTag, m: int = 512) -> float:
    """Space norm of an arbitrary evaluator by quadrature."""
    pts, w = quadrature_for(domain, tag, m)
    wv = w * tag.weight_values(pts)
    vals = np.asarray(f(pts), dtype=complex)
    return float(np.sqrt(np.sum(wv * np.abs(vals)**2).real))


def equilibrated(G: np.ndarray):
    """Symmetric diagonal scaling ``D^-1/2 G D^-1/2`` and the scale vector.

    The raw monomial Gram has diagonal spanning ``r^{-(2N+1)}`` orders of
    magnitude, so conditioning is always measured after equilibration.
    """
    d = np.sqrt(np.real(np.diag(G)))
    Gs = G / d[:, None] / d[None, :]
    return Gs, d
