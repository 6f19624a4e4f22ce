"""Reproducing kernels on the ring and argument-principle zero counting.

Unweighted arclength and area kernels are diagonal series over the monomial
norms.  Weighted kernels (and the harmonic-measure kernel, whose monomials
are not orthogonal because the base point breaks rotational symmetry) come
from the inverse Gram matrix on the truncated window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import ArgumentError, ConvergenceError, SingularGramError, ZeroOnContourError
from .geometry import AnnulusDomain, boundary_angles
from .laurent import LaurentPolynomial
from .spaces import (SpaceKind, SpaceTag, equilibrated, gram_matrix, monomial_norms,
                     quadrature_for)


class KernelForm(enum.Enum):
    DIAGONAL_SERIES = "diagonal"
    GRAM_INVERSE = "gram"


@dataclass
class KernelEvaluator:
    """Reproducing kernel ``K(z, w)`` of the tagged space on window -N..N.

    ``K(z, w) = conj(K(w, z))`` and ``K(w, w) > 0`` for interior ``w``.
    """

    domain: AnnulusDomain
    tag: SpaceTag
    N: int
    form: KernelForm
    norms: Optional[np.ndarray] = None        # diagonal form
    gram_inv: Optional[np.ndarray] = None     # gram form: inverse of <z^j, z^k>

    def _powers(self, z):
        ns = np.arange(-self.N, self.N + 1, dtype=float)
        return np.asarray(z, dtype=complex)[..., None]**ns

    def __call__(self, z, w):
        z = np.asarray(z, dtype=complex)
        pz = self._powers(z)
        qw = np.conj(self._powers(complex(w)))
        if self.form is KernelForm.DIAGONAL_SERIES:
            out = (pz * qw / self.norms).sum(axis=-1)
        else:
            # K(z, w) = sum_{j,k} (G^-1)[k, j] z^j conj(w)^k
            out = pz @ (self.gram_inv.T @ qw)
        return out if out.shape else complex(out)

    def section(self, w):
        """The Laurent polynomial ``K(., w)`` for fixed second argument."""
        qw = np.conj(self._powers(complex(w)))
        if self.form is KernelForm.DIAGONAL_SERIES:
            coeffs = qw / self.norms
        else:
            coeffs = self.gram_inv.T @ qw
        return LaurentPolynomial(-self.N, self.N, coeffs)


def build_kernel(domain: AnnulusDomain, tag: SpaceTag, N: int = 64,
                 m: int | None = None) -> KernelEvaluator:
    """Build the reproducing kernel for a tagged space.

    Unweighted arclength/area kernels use the diagonal monomial series.
    Weighted kernels invert the quadrature Gram; so does the unweighted
    harmonic-measure kernel, whose Gram is dense.  A scaled condition number
    above 1e14 raises ``SingularGramError``.
    """
    needs_gram = tag.weighted or tag.kind is SpaceKind.HARDY_HARMONIC_MEASURE
    if not needs_gram:
        return KernelEvaluator(domain, tag, N, KernelForm.DIAGONAL_SERIES,
                               norms=monomial_norms(domain, tag, N))
    m = m or max(512, 4 * N + 4)
    G = gram_matrix(domain, tag, N, m)
    Gs, d = equilibrated(G)
    cond = np.linalg.cond(Gs)
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularGramError(f"weighted Gram is numerically singular "
                                f"(scaled condition {cond:.3e})")
    inv_scaled = scipy.linalg.inv(Gs)
    inv_scaled = 0.5 * (inv_scaled + inv_scaled.conj().T)
    gram_inv = inv_scaled / d[:, None] / d[None, :]
    return KernelEvaluator(domain, tag, N, KernelForm.GRAM_INVERSE, gram_inv=gram_inv)


@dataclass(frozen=True)
class ReproduceReport:
    residual: float
    out_of_window: bool


def reproduce_check(K: KernelEvaluator, f: LaurentPolynomial, w: complex,
                    m: int = 512) -> ReproduceReport:
    """Residual ``|<f, K(., w)> - f(w)|`` by quadrature in the kernel's space."""
    pts, weights = quadrature_for(K.domain, K.tag, m)
    wv = weights * K.tag.weight_values(pts)
    kv = K(pts, w)
    lhs = complex(np.sum(wv * f(pts) * np.conj(kv)))
    residual = abs(lhs - f(complex(w)))
    out = not (-K.N <= f.lo and f.hi <= K.N)
    return ReproduceReport(residual=residual, out_of_window=out)


def _winding_on_circle(f, rho: float, m: int) -> int:
    """Winding number of ``f`` along ``|z| = rho`` by phase unwrapping.

    Doubles the node count when consecutive phase jumps exceed pi/2, which is
    the documented guard against unwrap ambiguity.
    """
    while True:
        theta = boundary_angles(m)
        z = rho * np.exp(1j * theta)
        vals = np.asarray(f(z), dtype=complex)
        vals = np.append(vals, vals[0])
        if np.min(np.abs(vals)) < 1e-10:
            raise ZeroOnContourError(
                f"|f| dips below 1e-10 on the circle |z| = {rho}; cannot count")
        phase = np.unwrap(np.angle(vals))
        jumps = np.abs(np.diff(phase))
        total = (phase[-1] - phase[0]) / (2.0 * np.pi)
        if np.max(jumps) <= 0.5 * np.pi:
            rounded = int(round(total))
            if abs(total - rounded) > 0.25:
                raise ConvergenceError(
                    f"winding number did not settle on an integer: {total}")
            return rounded
        if m >= 2**20:
            raise ConvergenceError(f"phase unwrapping failed to settle at m = {m}")
        m *= 2


def count_zeros(f, domain: AnnulusDomain, ring: tuple[float, float],
                m: int = 512) -> int:
    """Zeros of ``f`` (with multiplicity) in ``{ring[0] < |z| < ring[1]}``.

    Argument principle: winding along the outer sampling circle minus winding
    along the inner one.
    """
    rho_lo, rho_hi = ring
    if not (domain.inner_radius <= rho_lo < rho_hi <= 1.0):
        raise ArgumentError(f"ring {ring} is not inside the annulus")
    return _winding_on_circle(f, rho_hi, m) - _winding_on_circle(f, rho_lo, m)


def full_ring(domain: AnnulusDomain, margin: float = 1e-4) -> tuple[float, float]:
    """The counting ring covering the annulus up to a small contour margin."""
    gap = 1.0 - domain.inner_radius
    return (domain.inner_radius + margin * gap, 1.0 - margin * gap)


@dataclass(frozen=True)
class ZeroReport:
    contour_count: int
    locations: tuple[complex, ...]
    residual: float


def _derivative(f, z, h: float = 1e-6):
    return (np.asarray(f(z + h)) - np.asarray(f(z - h))) / (2.0 * h)


def _newton_polish(f, z0: complex, tol: float = 1e-10, maxiter: int = 60):
    z = complex(z0)
    with np.errstate(all="ignore"):
        best = (abs(complex(f(z))), z)
        for _ in range(maxiter):
            fz = complex(f(z))
            if not np.isfinite(fz):
                break
            if abs(fz) < best[0]:
                best = (abs(fz), z)
            if abs(fz) <= tol:
                return z, abs(fz)
            dz = complex(_derivative(f, z))
            if dz == 0.0:
                break
            step = fz / dz
            if not np.isfinite(step):
                break
            z = z - step
        fz = abs(complex(f(z)))
    if np.isfinite(fz) and fz <= tol:
        return z, fz
    return None, min(fz if np.isfinite(fz) else np.inf, best[0])


def locate_zeros(f, domain: AnnulusDomain, expected: int,
                 ring: tuple[float, float] | None = None,
                 grid: int = 64, tol: float = 1e-10) -> ZeroReport:
    """Locate the zeros found by the argument principle.

    Scans a polar grid for local minima of ``|f|`` and polishes the best
    candidate cells with Newton iterations until ``expected`` distinct roots
    reach ``|f| <= tol``.
    """
    ring = ring or full_ring(domain)
    count = count_zeros(f, domain, ring, m=512)
    if count != expected:
        raise ConvergenceError(
            f"argument principle found {count} zeros where {expected} were expected")
    if expected == 0:
        return ZeroReport(contour_count=0, locations=(), residual=0.0)
    rho = np.linspace(ring[0], ring[1], grid)
    theta = boundary_angles(grid)
    Z = rho[:, None] * np.exp(1j * theta)[None, :]
    vals = np.abs(np.asarray(f(Z.ravel()))).reshape(Z.shape)
    # Seed Newton from grid-local minima (wrapping in angle), so a shallow
    # boundary dip cannot crowd out a genuine interior zero; fall back to the
    # globally smallest cells afterwards.
    interior = vals.copy()
    is_min = np.ones_like(vals, dtype=bool)
    for dr in (-1, 0, 1):
        for dt in (-1, 0, 1):
            if dr == 0 and dt == 0:
                continue
            shifted = np.roll(interior, dt, axis=1)
            if dr == -1:
                neighbor = np.vstack([shifted[1:], np.full((1, grid), np.inf)])
            elif dr == 1:
                neighbor = np.vstack([np.full((1, grid), np.inf), shifted[:-1]])
            else:
                neighbor = shifted
            is_min &= vals <= neighbor
    minima = np.flatnonzero(is_min.ravel())
    minima = minima[np.argsort(vals.ravel()[minima])]
    rest = np.argsort(vals.ravel())
    seeds = np.concatenate([minima, rest])
    roots: list[complex] = []
    best_residual = np.inf
    residuals: list[float] = []
    for flat in seeds[: minima.size + 8 * expected + 16]:
        z0 = Z.ravel()[flat]
        root, res = _newton_polish(f, z0, tol=tol)
        best_residual = min(best_residual, res)
        if root is None:
            continue
        if not (ring[0] - 1e-8 < abs(root) < ring[1] + 1e-8):
            continue
        if any(abs(root - rr) < 1e-6 for rr in roots):
            continue
        roots.append(root)
        residuals.append(res)
        if len(roots) == expected:
            return ZeroReport(contour_count=count, locations=tuple(roots),
                              residual=float(max(residuals)))
    raise ConvergenceError(
        f"Newton refinement found {len(roots)} of {expected} zeros",
        best_residual=float(best_residual))
