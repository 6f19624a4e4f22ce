"""Constrained least-norm extremal problems and divisor probes.

The two classical formulations (maximize |f(z0)| at unit norm with prescribed
zeros / minimize the norm with f(z0) = 1 and the same zeros) are equivalent;
the solver works the linearly constrained form as a bordered KKT system on
the Laurent window and the maximizing form is recovered from reproducing
kernel sections, which doubles as an independent cross-check.

The candidate divisor removes the extraneous kernel zero from the extremal
by dividing out a Blaschke factor at that zero, and the operator-norm ladder
measures quasi-contractivity of division on the zero-based subspace as a
generalized eigenvalue of a Gram pencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, GeometryError, SingularConstraintsError
from .geometry import AnnulusDomain, boundary_angles
from .inner import InnerFunctionSpec, blaschke_factor
from .kernels import KernelEvaluator, build_kernel, count_zeros, full_ring, locate_zeros
from .laurent import LaurentPolynomial
from .spaces import (SpaceKind, SpaceTag, area_quadrature, bergman_tag,
                     equilibrated, gram_matrix, monomial_norms, quadrature_for)


@dataclass(frozen=True)
class ExtremalProblem:
    """Least-norm data: value 1 at ``base``, zeros at ``zeros``, window ``truncation``."""

    domain: AnnulusDomain
    space: SpaceTag
    base: complex
    zeros: tuple[complex, ...]
    truncation: int

    def __post_init__(self):
        object.__setattr__(self, "base", complex(self.base))
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        for z in (self.base, *self.zeros):
            if not self.domain.contains(z, margin=1e-9):
                raise GeometryError(f"point {z} is not strictly inside the annulus")
        if any(abs(z - self.base) < 1e-12 for z in self.zeros):
            raise GeometryError("base point must not be among the zeros")


@dataclass(frozen=True)
class DivisorReport:
    """Operator-norm ladder for the division map on a zero-based subspace."""

    constant_estimate: float
    per_truncation: tuple[tuple[int, float], ...]
    zero_locations_of_kernel: tuple[complex, ...]
    notes: str


def _space_gram(p: ExtremalProblem, m: int) -> np.ndarray:
    tag = p.space
    if not tag.weighted and tag.kind in (SpaceKind.SMIRNOV_ARCLENGTH, SpaceKind.BERGMAN_AREA):
        return np.diag(monomial_norms(p.domain, tag, p.truncation)).astype(complex)
    return gram_matrix(p.domain, tag, p.truncation, m)


def _constraint_rows(p: ExtremalProblem) -> tuple[np.ndarray, np.ndarray]:
    ns = np.arange(-p.truncation, p.truncation + 1, dtype=float)
    points = [p.base, *p.zeros]
    E = np.array([complex(pt)**ns for pt in points])
    b = np.zeros(len(points), dtype=complex)
    b[0] = 1.0
    return E, b


def solve_extremal(p: ExtremalProblem, m: int = 512) -> LaurentPolynomial:
    """Minimize the space norm subject to the evaluation constraints.

    Bordered system [[G, E*], [E, 0]] [a; mu] = [0; b] solved in the
    diagonally equilibrated basis; the quadratic form is positive definite so
    the solution is unique whenever the constraint rows are independent.
    """
    G = _space_gram(p, m)
    Gs, d = equilibrated(G)
    E, b = _constraint_rows(p)
    Es = E / d[None, :]
    k = Es.shape[0]
    if np.linalg.matrix_rank(Es, tol=1e-12) < k:
        raise SingularConstraintsError(
            "evaluation constraints are linearly dependent on this window")
    n = Gs.shape[0]
    kkt = np.zeros((n + k, n + k), dtype=complex)
    kkt[:n, :n] = Gs
    kkt[:n, n:] = Es.conj().T
    kkt[n:, :n] = Es
    rhs = np.concatenate([np.zeros(n, dtype=complex), b])
    sol = np.linalg.solve(kkt, rhs)
    coeffs = sol[:n] / d
    return LaurentPolynomial(-p.truncation, p.truncation, coeffs)


def extremal_maximizer(p: ExtremalProblem, m: int = 512) -> LaurentPolynomial:
    """Unit-norm maximizer of ``|f(base)|`` over the zero-constrained window.

    Projects the kernel section at the base point off the span of the
    sections at the zeros (a small solve on the kernel matrix), then
    normalizes.  Independent of the KKT route; the two agree after dividing
    by the base value.
    """
    K = build_kernel(p.domain, p.space, p.truncation, m)
    section = K.section(p.base)
    if p.zeros:
        kz = np.array([[complex(K(zi, zj)) for zj in p.zeros] for zi in p.zeros])
        rhs = np.array([complex(K(zi, p.base)) for zi in p.zeros])
        c = np.linalg.solve(kz, rhs)
        for cj, zj in zip(c, p.zeros):
            section = section + K.section(zj) * (-cj)
    value = complex(section(p.base))  # equals ||section||^2, positive real
    return section * (1.0 / math.sqrt(value.real))


def polar_grid(domain: AnnulusDomain, n: int, inset: float = 0.2) -> np.ndarray:
    """n x n polar grid with a radial inset keeping truncation tails small."""
    r = domain.inner_radius
    gap = 1.0 - r
    rho = np.linspace(r + inset * gap, 1.0 - inset * gap, n)
    theta = boundary_angles(n)
    return (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()


def extremal_identity_check(p: ExtremalProblem, m: int = 512, grid: int = 32) -> float:
    """Deviation between the KKT extremal and ``B_z1 * weighted-kernel``.

    Builds the single-zero Blaschke factor, the ``|B|^2``-weighted kernel
    section at the base point, matches the value-1-at-base normalization, and
    returns the max pointwise deviation on an interior polar grid.
    """
    if len(p.zeros) != 1:
        raise ArgumentError("the kernel-product identity check needs exactly one zero")
    z1 = p.zeros[0]
    G = solve_extremal(p, m)
    B = blaschke_factor(p.domain, z1)
    weighted = SpaceTag(p.space.kind, weight_fn=B)
    Kw = build_kernel(p.domain, weighted, p.truncation, m)
    pts = polar_grid(p.domain, grid)
    formula = np.asarray(B(pts)) * np.asarray(Kw(pts, p.base))
    base_val = complex(B(p.base)) * complex(Kw(p.base, p.base))
    return float(np.max(np.abs(G(pts) - formula / base_val)))


def repro_fact_check(G: LaurentPolynomial, p: ExtremalProblem, m: int = 512) -> float:
    """Max residual of the reproducing identity for the normalized extremal:
    ``max_F | integral F |G|^2 d omega - F(base) |`` over monomials ``|n| <= N/2``.

    Each monomial's residual is scaled by ``max(1, |F(base)|)``: the negative
    powers grow like ``|base|^-n``, so an unscaled maximum would only measure
    the largest member of the family.
    """
    if p.space.kind is not SpaceKind.HARDY_HARMONIC_MEASURE:
        raise ArgumentError("the reproducing identity lives in the harmonic-measure space")
    pts, w = quadrature_for(p.domain, p.space, m)
    gsq = np.abs(np.asarray(G(pts), dtype=complex))**2
    worst = 0.0
    half = p.truncation // 2
    for n in range(-half, half + 1):
        lhs = complex(np.sum(w * pts**n * gsq))
        target = complex(p.base)**n
        worst = max(worst, abs(lhs - target) / max(1.0, abs(target)))
    return worst


@dataclass(frozen=True)
class CandidateDivisor:
    """One-zero divisor candidate ``B_z1 * K_w(., z0) / B_kernel_zero``."""

    domain: AnnulusDomain
    zero: complex
    base: complex
    kernel_zero: complex
    blaschke: InnerFunctionSpec
    kernel: KernelEvaluator
    kernel_zero_factor: InnerFunctionSpec

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        num = np.asarray(self.blaschke(z)) * np.asarray(self.kernel(z, self.base))
        out = num / np.asarray(self.kernel_zero_factor(z))
        return out if out.shape else complex(out)


def candidate_divisor(domain: AnnulusDomain, z1: complex, N: int = 96,
                      m: int = 512, base: complex | None = None) -> CandidateDivisor:
    """Bergman divisor candidate vanishing only at ``z1``.

    Locates the single zero of the ``|B_z1|^2``-weighted Bergman kernel
    section and divides it out by a Blaschke factor, leaving exactly one ring
    zero at ``z1`` (verified by the argument principle).  Windows below about
    96 leave truncation zeros of the Gram-inverse kernel hugging the boundary
    circles, which the argument-principle check would count.
    """
    z0 = complex(base) if base is not None else domain.base_point
    B = blaschke_factor(domain, z1)
    Kw = build_kernel(domain, bergman_tag(weight_fn=B), N, m)
    report = locate_zeros(Kw.section(z0), domain, expected=1)
    w_star = report.locations[0]
    Bg = blaschke_factor(domain, w_star)
    cand = CandidateDivisor(domain=domain, zero=complex(z1), base=z0,
                            kernel_zero=w_star, blaschke=B, kernel=Kw,
                            kernel_zero_factor=Bg)
    ring_zeros = count_zeros(cand, domain, full_ring(domain))
    if ring_zeros != 1:
        raise ArgumentError(
            f"candidate divisor has {ring_zeros} ring zeros instead of 1")
    return cand


def _division_grams(G, z1: complex, domain: AnnulusDomain, N: int, m: int):
    """Gram pencil of the basis (z - z1) z^n and of the same basis divided by G."""
    ns = np.arange(-N, N + 1, dtype=float)
    pts, w = area_quadrature(domain, m)
    phi = (pts - z1)[:, None] * pts[:, None]**ns[None, :]
    g_vals = np.asarray(G(pts), dtype=complex)
    psi = phi / g_vals[:, None]
    def hermitian_gram(V):
        M = (V.conj().T * w) @ V
        M = 0.5 * (M + M.conj().T)
        return M.conj()
    return hermitian_gram(phi), hermitian_gram(psi)


def quasicontract_estimate(G, z1: complex, domain: AnnulusDomain,
                           ladder: tuple[int, ...] = (8, 16, 24, 32),
                           m: int = 512) -> DivisorReport:
    """Operator norm of ``f -> f / G0`` on the subspace vanishing at ``z1``.

    ``G0`` is ``G`` scaled to unit Bergman norm (a canonical gauge so the
    estimate is invariant under rescaling ``G``).  For each window size the
    squared norm is the top generalized eigenvalue of (divided Gram, plain
    Gram); the reported estimates are the square roots, nondecreasing in the
    window.  Extraneous zeros of ``G`` beyond ``z1`` make the quotients
    meromorphic and the ladder grow without settling; they are detected by
    the argument principle and flagged.
    """
    pts, w = area_quadrature(domain, m)
    g_norm = math.sqrt(float(np.sum(w * np.abs(np.asarray(G(pts), dtype=complex))**2)))
    def g0(z):
        return np.asarray(G(z), dtype=complex) / g_norm
    ring = full_ring(domain)
    total = count_zeros(G, domain, ring, m=512)
    notes = ""
    extra_locations: tuple[complex, ...] = ()
    if total != 1:
        notes = (f"EXTRANEOUS_ZERO: {total} ring zeros where 1 was prescribed; "
                 "division is meromorphic and the ladder will not settle")
        try:
            report = locate_zeros(G, domain, expected=total)
            extra_locations = tuple(z for z in report.locations
                                    if abs(z - z1) > 1e-4)
        except Exception:
            extra_locations = ()
    estimates = []
    for N in ladder:
        A, B = _division_grams(g0, z1, domain, N, m)
        A_s, d = equilibrated(A)
        B_s = B / d[:, None] / d[None, :]
        eig = scipy.linalg.eigh(B_s, A_s, eigvals_only=True)
        estimates.append((int(N), float(math.sqrt(max(eig)))))
    return DivisorReport(constant_estimate=estimates[-1][1],
                         per_truncation=tuple(estimates),
                         zero_locations_of_kernel=extra_locations,
                         notes=notes)
