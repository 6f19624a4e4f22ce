"""Inner functions on the ring: Blaschke factors and products, singular inner
functions, period removal, verification, and quasi-contractive divisors.

Every constructed inner function is held in closed multiplicative form

    f(z) = z^power * exp(series(z)) * prod_j (z - a_j),

where ``series`` is a truncated Laurent series collecting the analytic
completions of the Green correctors, point-mass kernels, and the period
remover.  Choosing the removal exponent ``lambda`` on the lattice
``log(1/r) * Z`` makes the log-term coefficient an exact integer, which is
the ``z^power`` factor; single-valuedness is then structural and the
numerical period check guards the bookkeeping.

A factor with zero ``a`` uses ``lambda = log(1/r) * omega_2(a)``, the minimal
representative in ``(0, log(1/r)]``; its boundary modulus is ``1`` on the
inner circle and ``e^lambda = 1/|a|`` on the outer one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import (ArgumentError, BlaschkeDivergenceError, GeometryError,
                     PeriodError)
from .geometry import INNER, OUTER, AnnulusDomain, boundary_angles
from .harmonic import (HarmonicRepresentation, _log_kernel_data,
                       analytic_completion, green, harmonic_measure,
                       point_mass_kernel, solve_dirichlet)
from .laurent import LaurentPolynomial
from .spaces import hardy_tag, norm

_PERIOD_TOL = 1e-8


@dataclass(frozen=True)
class ZeroSet:
    """Prescribed zeros with multiplicity; ``points`` may be a finite sequence
    or a lazy iterable/generator for infinite sequences."""

    points: object

    @property
    def is_lazy(self) -> bool:
        return not isinstance(self.points, (list, tuple, np.ndarray))

    def iter_points(self) -> Iterator[complex]:
        for p in self.points:
            yield complex(p)

    def finite_points(self) -> tuple[complex, ...]:
        if self.is_lazy:
            raise ArgumentError("zero set is lazily generated; take a finite prefix")
        return tuple(complex(p) for p in self.points)


@dataclass(frozen=True)
class AtomicSingularMeasure:
    """Finitely many non-positive point masses on the boundary circles."""

    atoms: tuple[tuple[complex, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms",
                           tuple((complex(p), float(m)) for p, m in self.atoms))
        for point, mass in self.atoms:
            if mass > 0.0:
                raise ArgumentError(f"singular masses must be non-positive, got {mass}")

    @classmethod
    def empty(cls) -> "AtomicSingularMeasure":
        return cls(atoms=())


def _atom_component(domain: AnnulusDomain, point: complex) -> int:
    rho = abs(point)
    if abs(rho - 1.0) <= 1e-9:
        return OUTER
    if abs(rho - domain.inner_radius) <= 1e-9:
        return INNER
    raise GeometryError(f"singular atom {point} is not on the boundary")


@dataclass(frozen=True)
class InnerFunctionSpec:
    """Closed-form inner function ``z^power * exp(series) * prod (z - a_j)``."""

    domain: AnnulusDomain
    zeros: tuple[complex, ...]
    singular: AtomicSingularMeasure
    lam: float
    power: int
    series: LaurentPolynomial
    boundary_moduli: tuple[float, float]
    period_residual: float = 0.0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.exp(self.series(z))
        if self.power != 0:
            out = out * z**self.power
        for a in self.zeros:
            out = out * (z - a)
        return out if out.shape else complex(out)

    def log_modulus(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.real(self.series(z)) + self.power * np.log(np.abs(z))
        for a in self.zeros:
            out = out + np.log(np.abs(z - a))
        return out


def _loop_period_residual(rep: HarmonicRepresentation, rho: float, m: int = 512) -> float:
    """Deviation of the numerically integrated conjugate period of ``rep``
    around ``|z| = rho`` from the nearest multiple of 2*pi.

    Uses the polar Cauchy-Riemann relation d(conj)/d(theta) = rho * d(rep)/d(rho).
    """
    theta = boundary_angles(m)
    z = rho * np.exp(1j * theta)
    period = float(np.sum(rho * rep.radial_derivative(z)) * 2.0 * np.pi / m)
    return abs(period - 2.0 * np.pi * round(period / (2.0 * np.pi)))


def _reduce_lattice(domain: AnnulusDomain, lam: float, power: int,
                    series: LaurentPolynomial):
    """Shift ``lam`` by lattice multiples into ``(0, L]``; each downward step
    divides by ``e^L z``, i.e. decrements the power and the series constant."""
    L = domain.log_gap
    k = math.ceil(lam / L) - 1
    if lam - k * L <= 0.0:  # guard roundoff at the lattice edge
        k -= 1
    if k != 0:
        lam = lam - k * L
        power = power - k
        series = series + LaurentPolynomial.constant(-k * L)
    return lam, power, series


def _normalize_phase(domain: AnnulusDomain, spec_value: complex,
                     series: LaurentPolynomial) -> LaurentPolynomial:
    """Rotate by a unimodular constant so the value is positive real.

    A unimodular factor is an invertible inner function, so this does not
    change any modulus; it pins the free additive constant of the conjugates
    and makes infinite products converge factorwise.
    """
    if spec_value == 0.0 or not np.isfinite(spec_value):
        return series
    return series + LaurentPolynomial.constant(-1j * np.angle(spec_value))


def _auto_truncation(domain: AnnulusDomain, a: complex, N: Optional[int]) -> int:
    if N is not None:
        return N
    q = max(abs(a), domain.inner_radius / abs(a))
    n = int(math.ceil(math.log(1e-12) / math.log(q))) if q < 1.0 else 4096
    return int(np.clip(n, 64, 4096))


def blaschke_factor(domain: AnnulusDomain, a: complex, N: Optional[int] = None,
                    lattice_shift: int = 0) -> InnerFunctionSpec:
    """Single-zero inner factor ``exp(-p(., a) + lambda (omega_1 + i conj))``.

    The conjugate of ``-g(., a)`` has period ``-2 pi omega_2(a)`` around the
    inner circle and the period remover contributes ``2 pi lambda / log(1/r)``,
    so the minimal cancelling exponent is ``lambda = log(1/r) * omega_2(a)``.
    The log terms then cancel exactly and the factor collapses to
    ``(z - a) * exp(Laurent series)``, normalized positive at the base point.
    """
    a = complex(a)
    if not domain.contains(a):
        raise GeometryError(f"Blaschke zero {a} must be strictly interior")
    N = _auto_truncation(domain, a, N)
    L = domain.log_gap
    # Same corrector as the Green's function, without its pole-margin guard:
    # zeros of convergent products legitimately approach the boundary.
    outer_data, inner_data = _log_kernel_data(domain, a, N)
    corrector = solve_dirichlet(domain, outer_data, inner_data, N)
    omega2_a = corrector.clog  # equals omega_2(a) = log|a| / log(r)
    lam = L * omega2_a + lattice_shift * L
    power = lattice_shift
    completion = analytic_completion(corrector)
    series = (completion.series * (-1.0)) + LaurentPolynomial.constant(lam)
    # Residual of the period cancellation, measured on the exponent.
    exponent_rep = corrector.scale(-1.0) + harmonic_measure(domain, OUTER).scale(lam)
    residual = abs(2.0 * np.pi * (exponent_rep.clog - power))
    assert residual <= _PERIOD_TOL, "Blaschke period bookkeeping failed"
    spec = InnerFunctionSpec(domain=domain, zeros=(a,),
                             singular=AtomicSingularMeasure.empty(),
                             lam=lam, power=power, series=series,
                             boundary_moduli=(math.exp(lam), 1.0),
                             period_residual=residual)
    z0 = domain.base_point
    value = complex(spec(z0)) if abs(z0 - a) > 1e-12 else \
        complex(z0**power * np.exp(series(z0)))
    series = _normalize_phase(domain, value, series)
    return InnerFunctionSpec(domain=domain, zeros=(a,), singular=spec.singular,
                             lam=lam, power=power, series=series,
                             boundary_moduli=spec.boundary_moduli,
                             period_residual=residual)


def multiply(f: InnerFunctionSpec, g: InnerFunctionSpec) -> InnerFunctionSpec:
    """Product of two inner specs with the running exponent reduced to one
    lattice cell, so boundary moduli stay within ``[1, 1/r]``."""
    domain = f.domain
    lam = f.lam + g.lam
    power = f.power + g.power
    series = f.series + g.series
    lam, power, series = _reduce_lattice(domain, lam, power, series)
    atoms = f.singular.atoms + g.singular.atoms
    return InnerFunctionSpec(domain=domain, zeros=f.zeros + g.zeros,
                             singular=AtomicSingularMeasure(atoms),
                             lam=lam, power=power, series=series,
                             boundary_moduli=(math.exp(lam), 1.0),
                             period_residual=max(f.period_residual, g.period_residual))


def unit_inner(domain: AnnulusDomain) -> InnerFunctionSpec:
    """The constant 1 as an inner spec (empty product)."""
    return InnerFunctionSpec(domain=domain, zeros=(),
                             singular=AtomicSingularMeasure.empty(),
                             lam=0.0, power=0,
                             series=LaurentPolynomial.constant(0.0),
                             boundary_moduli=(1.0, 1.0))


def blaschke_sum(domain: AnnulusDomain, zeros: ZeroSet, prefix: int = 200,
                 N: int = 64) -> float:
    """Partial sum of ``g(z_j, z0)`` over (a prefix of) the zero sequence."""
    g0 = green(domain, domain.base_point, N)
    total = 0.0
    for j, a in enumerate(zeros.iter_points()):
        if j >= prefix:
            break
        total += float(g0(a))
    return total


def _test_grid(domain: AnnulusDomain, n: int = 16) -> np.ndarray:
    """Polar grid strictly inside the ring (10% inset) for product truncation."""
    r = domain.inner_radius
    gap = 1.0 - r
    rho = np.linspace(r + 0.1 * gap, 1.0 - 0.1 * gap, n)
    theta = boundary_angles(n)
    return (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()


def blaschke_product(domain: AnnulusDomain, zeros: ZeroSet, tol: float = 1e-8,
                     N: Optional[int] = None, max_factors: int = 500,
                     divergence_bound: float = 20.0) -> InnerFunctionSpec:
    """Product of single-zero factors over a prescribed zero set.

    Finite sets use every zero.  Lazy sets append factors until the latest
    one moves the product by less than ``tol`` on an interior test grid;
    they are rejected with ``BlaschkeDivergenceError`` once the partial sums
    of ``g(z_j, z0)`` pass ``divergence_bound`` without that happening, which
    is how non-summable sequences (no tail decay) surface.
    """
    lazy = zeros.is_lazy
    points: Iterable[complex] = zeros.iter_points()
    g0 = green(domain, domain.base_point, 64) if lazy else None
    product = unit_inner(domain)
    grid = _test_grid(domain)
    values = np.ones(grid.size, dtype=complex)
    gsum = 0.0
    count = 0
    for a in points:
        factor = blaschke_factor(domain, a, N=N)
        if lazy:
            gsum += float(g0(a))
            if gsum > divergence_bound:
                raise BlaschkeDivergenceError(
                    f"partial sums of g(z_j, z0) reached {gsum:.3f} without the "
                    f"product settling; the sequence violates the summability condition")
        product = multiply(product, factor)
        new_values = values * factor(grid)
        change = float(np.max(np.abs(new_values - values)))
        values = new_values
        count += 1
        if lazy and change < tol:
            break
        if count >= max_factors:
            if lazy:
                raise BlaschkeDivergenceError(
                    f"product did not settle within {max_factors} factors")
            break
    return product


def singular_inner(domain: AnnulusDomain, mu: AtomicSingularMeasure,
                   N: int = 64) -> InnerFunctionSpec:
    """Zero-free inner function driven by a non-positive atomic measure.

    Exponent ``(1/2pi) sum_k m_k (P_k + i conj(P_k)) + lambda (omega_1 + i conj)``
    where ``P_k = -dg/dn_zeta(., zeta_k)`` is the positive Poisson-type kernel
    of the atom (the truncated point-mass solve), so non-positive masses pull
    the modulus down toward the atoms and ``|S|`` is locally constant on each
    circle away from them.  ``lambda`` in ``(0, log(1/r)]`` cancels the
    numerically measured period; with no atoms this forces ``lambda = log(1/r)``
    and the result is the invertible inner function ``z / r``.

    Atoms must stay off the quadrature nodes used later for evaluation; shift
    the nodes otherwise.
    """
    L = domain.log_gap
    r = domain.inner_radius
    for attempt_N in (N, 2 * N):
        series = LaurentPolynomial.constant(0.0)
        clog_total = 0.0
        exponent_rep = None
        for point, mass in mu.atoms:
            component = _atom_component(domain, point)
            scale = mass / (2.0 * np.pi) * (1.0 if component == OUTER else 1.0 / r)
            kernel = point_mass_kernel(domain, component, float(np.angle(point)) % (2 * np.pi),
                                       attempt_N)
            comp = analytic_completion(kernel)
            series = series + comp.series * scale
            clog_total += kernel.clog * scale
            contrib = kernel.scale(scale)
            exponent_rep = contrib if exponent_rep is None else exponent_rep + contrib
        power = math.floor(clog_total) + 1
        lam = L * (power - clog_total)
        if not (0.0 < lam <= L + 1e-12):
            lam, power = lam - L, power - 1  # roundoff at the lattice edge
        series = series + LaurentPolynomial.constant(lam)
        omega1_part = harmonic_measure(domain, OUTER).scale(lam)
        exponent_rep = omega1_part if exponent_rep is None else exponent_rep + omega1_part
        residual = _loop_period_residual(exponent_rep, math.sqrt(r))
        if residual <= _PERIOD_TOL:
            spec = InnerFunctionSpec(domain=domain, zeros=(), singular=mu,
                                     lam=lam, power=power, series=series,
                                     boundary_moduli=(math.exp(lam), 1.0),
                                     period_residual=residual)
            value = complex(spec(domain.base_point))
            series = _normalize_phase(domain, value, series)
            return InnerFunctionSpec(domain=domain, zeros=(), singular=mu,
                                     lam=lam, power=power, series=series,
                                     boundary_moduli=spec.boundary_moduli,
                                     period_residual=residual)
    raise PeriodError(
        f"period cancellation residual {residual:.3e} above {_PERIOD_TOL} even "
        f"after doubling the truncation to {2 * N}")


@dataclass(frozen=True)
class InnerVerification:
    """Per-circle mean modulus and maximal deviation of a candidate inner function."""

    c1: float
    c2: float
    dev1: float
    dev2: float

    @property
    def passed(self) -> bool:
        return self.dev1 <= 1e-6 * self.c1 and self.dev2 <= 1e-6 * self.c2


def verify_inner(f: Callable, domain: AnnulusDomain, m: int = 256) -> InnerVerification:
    """Check constancy of ``|f|`` on each boundary circle at ``m`` nodes."""
    theta = boundary_angles(m)
    outer = np.abs(np.asarray(f(np.exp(1j * theta)), dtype=complex))
    inner_v = np.abs(np.asarray(f(domain.inner_radius * np.exp(1j * theta)), dtype=complex))
    c1, c2 = float(outer.mean()), float(inner_v.mean())
    return InnerVerification(c1=c1, c2=c2,
                             dev1=float(np.max(np.abs(outer - c1))),
                             dev2=float(np.max(np.abs(inner_v - c2))))


def check_orthogonality(f: LaurentPolynomial, domain: AnnulusDomain, N: int) -> float:
    """``max_{0 < |n| <= N} |<z^n f, f>|`` in the arclength space.

    In the monomial basis the pairing is diagonal:
    ``<z^n f, f> = sum_j f_j conj(f_{j+n}) ||z^{j+n}||^2``.
    """
    r = domain.inner_radius
    worst = 0.0
    idx = np.arange(f.lo, f.hi + 1)
    coeffs = f.coeffs
    for n in range(-N, N + 1):
        if n == 0:
            continue
        shifted = idx + n
        inside = (shifted >= f.lo) & (shifted <= f.hi)
        if not inside.any():
            continue
        js = idx[inside]
        norms_sq = 2.0 * np.pi * (1.0 + r**(2.0 * (js + n).astype(float) + 1.0))
        val = np.sum(coeffs[js - f.lo] * np.conj(coeffs[js + n - f.lo]) * norms_sq)
        worst = max(worst, abs(complex(val)))
    return worst


def schottky_fit(f: Callable, domain: AnnulusDomain, m: int = 512,
                 N_green: int = 128) -> tuple[float, float]:
    """Least-squares fit of ``|f|^2 - 1`` against the Schottky function ``s_1``
    over all boundary nodes; residual in the boundary arclength norm."""
    from .geometry import boundary_nodes
    from .harmonic import schottky as schottky_values
    nodes = boundary_nodes(domain, OUTER, m) + boundary_nodes(domain, INNER, m)
    pts = np.array([s.point for s in nodes])
    ds = np.array([s.weight for s in nodes])
    s1 = np.asarray(schottky_values(domain, 1, nodes, N=N_green))
    y = np.abs(np.asarray(f(pts), dtype=complex))**2 - 1.0
    denom = float(np.sum(ds * s1 * s1))
    lam1 = float(np.sum(ds * s1 * y) / denom)
    residual = float(np.sqrt(np.sum(ds * (y - lam1 * s1)**2)))
    return lam1, residual


def qc_divisor(domain: AnnulusDomain, zeros: ZeroSet | None = None,
               mu: AtomicSingularMeasure | None = None, N: int = 64,
               tol: float = 1e-8) -> tuple[InnerFunctionSpec, float]:
    """Quasi-contractive divisor ``G = B_Z * S_mu`` and its domain constant.

    With the combined removal exponent reduced into one period cell
    ``(0, log(1/r)]``, the boundary moduli satisfy ``1 <= |G| <= 1/r``
    (away from singular atoms), so the divisor constant is ``C = 1/r``.
    """
    zeros = zeros if zeros is not None else ZeroSet(points=())
    mu = mu if mu is not None else AtomicSingularMeasure.empty()
    B = blaschke_product(domain, zeros, tol=tol)
    S = singular_inner(domain, mu, N=N)
    G = multiply(B, S)
    return G, 1.0 / domain.inner_radius


def _random_laurent(rng: np.random.Generator, window: int) -> LaurentPolynomial:
    c = rng.standard_normal(2 * window + 1) + 1j * rng.standard_normal(2 * window + 1)
    return LaurentPolynomial(-window, window, c)


@dataclass(frozen=True)
class DivisionBoundReport:
    max_ratio: float
    min_ratio: float
    trials: int


def division_bound_check(G: InnerFunctionSpec, C: float, domain: AnnulusDomain,
                         trials: int = 100, seed: int = 0, window: int = 8,
                         m: int = 512) -> DivisionBoundReport:
    """Empirical two-sided division bounds for the normalized divisor.

    Draws random Laurent ``h``, forms ``f = G0 h`` with ``G0 = G / ||G||``,
    and records ``||f / G0|| / ||f|| = ||h|| / ||f||`` per trial; the max must
    stay below ``C`` and the min above ``1/C``.
    """
    tag = hardy_tag()
    g_norm = norm(G, domain, tag, m=m)
    rng = np.random.default_rng(seed)
    from .spaces import quadrature_for
    pts, w = quadrature_for(domain, tag, m)
    g_vals = np.asarray(G(pts)) / g_norm
    ratios = []
    for _ in range(trials):
        h = _random_laurent(rng, window)
        h_vals = h(pts)
        norm_h = math.sqrt(float(np.sum(w * np.abs(h_vals)**2)))
        norm_f = math.sqrt(float(np.sum(w * np.abs(g_vals * h_vals)**2)))
        ratios.append(norm_h / norm_f)
    return DivisionBoundReport(max_ratio=float(np.max(ratios)),
                               min_ratio=float(np.min(ratios)), trials=trials)
