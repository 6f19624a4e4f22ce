"""Harmonic machinery on the annulus via Fourier matching.

A harmonic function on the ring splits into angular modes; each nonzero mode
``n`` is a combination ``Re[(A_n rho^n + B_n rho^-n) e^{i n theta}]`` and the
zero mode is ``c0 + clog * log(rho)``.  Matching Fourier data on the two
circles gives one uniform Dirichlet solver that realizes everything built
here: harmonic measures, Green's functions, Poisson-type point-mass kernels,
Schottky functions, and multi-valued analytic completions with explicit
period bookkeeping.

Mode coefficients are stored in the scaled form ``Bhat_n = B_n r^{-n}`` so the
2x2 matching systems stay perfectly conditioned and evaluation never forms
``rho^-n`` against a large coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, GeometryError
from .geometry import INNER, OUTER, AnnulusDomain, BoundarySample
from .laurent import LaurentPolynomial


def _as_points(s):
    """Split a BoundarySample or a sequence of them into component arrays."""
    if isinstance(s, BoundarySample):
        return [s]
    return list(s)


class HarmonicRepresentation:
    """Harmonic function ``c0 + clog*log(rho) + sum_n Re[(A_n rho^n + B_n rho^-n) e^{in theta}]``.

    Modes with negative ``n`` are folded into positive keys on construction
    (a ``-n`` mode equals the ``+n`` mode with conjugated coefficients).  The
    conjugate of the function is multi-valued with period ``2*pi*clog``
    around the inner circle.
    """

    def __init__(self, c0: float, clog: float, modes: dict[int, tuple[complex, complex]],
                 rref: float, _scaled: bool = False):
        self.c0 = float(c0)
        self.clog = float(clog)
        self.rref = float(rref)
        folded: dict[int, list[complex]] = {}
        for n, (a, b) in modes.items():
            if n == 0:
                raise ArgumentError("mode index 0 belongs to (c0, clog), not to modes")
            k = abs(n)
            if n < 0:
                a, b = np.conj(a), np.conj(b)
            entry = folded.setdefault(k, [0.0 + 0.0j, 0.0 + 0.0j])
            entry[0] += a
            entry[1] += b
        ns = np.array(sorted(folded), dtype=int)
        self._ns = ns
        self._A = np.array([folded[k][0] for k in ns], dtype=complex)
        braw = np.array([folded[k][1] for k in ns], dtype=complex)
        if _scaled:
            self._Bhat = braw
        else:
            self._Bhat = braw * self.rref**(-ns.astype(float))

    @property
    def modes(self) -> dict[int, tuple[complex, complex]]:
        """Raw ``(A_n, B_n)`` pairs keyed by positive mode index."""
        return {int(n): (complex(a), complex(bh * self.rref**float(n)))
                for n, a, bh in zip(self._ns, self._A, self._Bhat)}

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        rho = np.abs(z)
        theta = np.angle(z)
        out = self.c0 + self.clog * np.log(rho)
        if self._ns.size:
            ns = self._ns[:, None]
            rp = rho.ravel()[None, :]
            tp = theta.ravel()[None, :]
            term = (self._A[:, None] * rp**ns
                    + self._Bhat[:, None] * (self.rref / rp)**ns) * np.exp(1j * ns * tp)
            out = out + np.real(term.sum(axis=0)).reshape(rho.shape)
        return out if out.shape else float(out)

    def radial_derivative(self, z):
        """d/d(rho) at the points ``z``."""
        z = np.asarray(z, dtype=complex)
        rho = np.abs(z)
        theta = np.angle(z)
        out = self.clog / rho
        if self._ns.size:
            ns = self._ns[:, None]
            rp = rho.ravel()[None, :]
            tp = theta.ravel()[None, :]
            term = (ns / rp) * (self._A[:, None] * rp**ns
                                - self._Bhat[:, None] * (self.rref / rp)**ns) \
                * np.exp(1j * ns * tp)
            out = out + np.real(term.sum(axis=0)).reshape(rho.shape)
        return out if out.shape else float(out)

    def scale(self, factor: float) -> "HarmonicRepresentation":
        out = HarmonicRepresentation(self.c0 * factor, self.clog * factor, {}, self.rref)
        out._ns = self._ns.copy()
        out._A = self._A * factor
        out._Bhat = self._Bhat * factor
        return out

    def __add__(self, other: "HarmonicRepresentation") -> "HarmonicRepresentation":
        if abs(self.rref - other.rref) > 1e-15:
            raise ArgumentError("cannot add representations scaled on different annuli")
        keys = sorted(set(self._ns.tolist()) | set(other._ns.tolist()))
        out = HarmonicRepresentation(self.c0 + other.c0, self.clog + other.clog,
                                     {}, self.rref)
        amap = dict(zip(self._ns.tolist(), self._A))
        bmap = dict(zip(self._ns.tolist(), self._Bhat))
        amap2 = dict(zip(other._ns.tolist(), other._A))
        bmap2 = dict(zip(other._ns.tolist(), other._Bhat))
        out._ns = np.array(keys, dtype=int)
        out._A = np.array([amap.get(k, 0) + amap2.get(k, 0) for k in keys], dtype=complex)
        out._Bhat = np.array([bmap.get(k, 0) + bmap2.get(k, 0) for k in keys], dtype=complex)
        return out


@dataclass(frozen=True)
class GreenFunction:
    """``g(z) = -log|z - pole| + corrector(z)``, vanishing on both circles."""

    domain: AnnulusDomain
    pole: complex
    corrector: HarmonicRepresentation
    truncation: int

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = -np.log(np.abs(z - self.pole)) + self.corrector(z)
        return out if out.shape else float(out)


def _validate_conjugate_symmetry(data: np.ndarray, N: int, what: str):
    scale = max(1.0, float(np.max(np.abs(data))))
    flipped = np.conj(data[::-1])
    if np.max(np.abs(data - flipped)) > 1e-12 * scale:
        raise ArgumentError(f"{what} Fourier data is not conjugate-symmetric (real data required)")


def solve_dirichlet(domain: AnnulusDomain, outer_data, inner_data, N: int) -> HarmonicRepresentation:
    """Solve the Dirichlet problem from Fourier data on the two circles.

    ``outer_data``/``inner_data`` hold complex coefficients for frequencies
    ``-N..N`` (index 0 is frequency ``-N``).  Each mode ``n >= 1`` solves the
    2x2 system matching ``A rho^n + B rho^-n`` at ``rho = 1`` and ``rho = r``;
    in the scaled unknowns ``(A, Bhat)`` the determinant is ``1 - r^{2n}``,
    which is bounded away from zero for every ``r`` in (0, 1).
    """
    outer = np.asarray(outer_data, dtype=complex)
    inner = np.asarray(inner_data, dtype=complex)
    if outer.shape != (2 * N + 1,) or inner.shape != (2 * N + 1,):
        raise ArgumentError(f"boundary data must have length 2N+1 = {2 * N + 1}")
    _validate_conjugate_symmetry(outer, N, "outer")
    _validate_conjugate_symmetry(inner, N, "inner")
    r = domain.inner_radius
    f0_out = float(np.real(outer[N]))
    f0_in = float(np.real(inner[N]))
    c0 = f0_out
    clog = (f0_in - f0_out) / math.log(r)
    rep = HarmonicRepresentation(c0, clog, {}, r, _scaled=True)
    ns = np.arange(1, N + 1)
    rn = r**ns.astype(float)
    det = 1.0 - rn**2
    assert det.min() > 0.0
    dout = 2.0 * outer[N + ns]
    din = 2.0 * inner[N + ns]
    # [[1, r^n], [r^n, 1]] @ [A, Bhat] = [dout, din]
    A = (dout - rn * din) / det
    Bhat = (din - rn * dout) / det
    keep = (A != 0) | (Bhat != 0)
    rep._ns = ns[keep]
    rep._A = A[keep]
    rep._Bhat = Bhat[keep]
    return rep


def harmonic_measure(domain: AnnulusDomain, j: int) -> HarmonicRepresentation:
    """Closed-form harmonic measure of boundary component ``j``.

    ``omega_1 = log(|z|/r) / log(1/r)`` (outer), ``omega_2 = log|z| / log(r)``
    (inner); they sum to 1.
    """
    r = domain.inner_radius
    if j == OUTER:
        return HarmonicRepresentation(1.0, 1.0 / domain.log_gap, {}, r)
    if j == INNER:
        return HarmonicRepresentation(0.0, 1.0 / math.log(r), {}, r)
    raise ArgumentError(f"boundary component must be 1 or 2, got {j}")


def _log_kernel_data(domain: AnnulusDomain, pole: complex, N: int):
    """Fourier coefficients of ``log|zeta - pole|`` on the two circles.

    Outer circle: ``log|e^{i t} - a| = -sum_k Re[(a e^{-i t})^k] / k``.
    Inner circle (valid since ``|pole| > r``):
    ``log|r e^{i t} - a| = log|a| - sum_k Re[(r e^{i t}/a)^k] / k``.
    """
    r = domain.inner_radius
    a = complex(pole)
    ks = np.arange(1, N + 1, dtype=float)
    outer_pos = -np.conj(a)**ks / (2.0 * ks)
    inner_pos = -(r / a)**ks / (2.0 * ks)
    outer = np.concatenate([np.conj(outer_pos[::-1]), [0.0], outer_pos])
    inner = np.concatenate([np.conj(inner_pos[::-1]), [math.log(abs(a))], inner_pos])
    return outer, inner


def green(domain: AnnulusDomain, pole: complex, N: int = 64) -> GreenFunction:
    """Green's function of the annulus with the given interior pole.

    The corrector solves the Dirichlet problem with data ``log|zeta - pole|``,
    so the boundary values vanish up to the series truncation error, which
    decays like ``|pole|^N`` (outer data) and ``(r/|pole|)^N`` (inner data).
    """
    if N < 8:
        raise ArgumentError(f"Green truncation must be at least 8, got {N}")
    r = domain.inner_radius
    a = complex(pole)
    if abs(a) <= r + 1e-9 or abs(a) >= 1.0 - 1e-9:
        raise GeometryError(f"pole {pole} is on or within 1e-9 of the boundary")
    outer, inner = _log_kernel_data(domain, a, N)
    corrector = solve_dirichlet(domain, outer, inner, N)
    return GreenFunction(domain=domain, pole=a, corrector=corrector, truncation=N)


def _radial_derivative_total(h, z):
    if isinstance(h, GreenFunction):
        z = np.asarray(z, dtype=complex)
        diff = z - h.pole
        # d/d(rho) of -log|z - a| along the ray through z.
        sing = -np.real((z / np.abs(z)) * np.conj(diff)) / np.abs(diff)**2
        return sing + h.corrector.radial_derivative(z)
    return h.radial_derivative(z)


def normal_derivative(h, s):
    """Outward-normal derivative of ``h`` at boundary sample(s) ``s``.

    Outward means ``+d/d(rho)`` on the unit circle and ``-d/d(rho)`` on the
    inner circle.
    """
    samples = _as_points(s)
    pts = np.array([p.point for p in samples], dtype=complex)
    sign = np.array([1.0 if p.component_index == OUTER else -1.0 for p in samples])
    vals = sign * _radial_derivative_total(h, pts)
    return float(vals[0]) if isinstance(s, BoundarySample) else vals


def measure_density(domain: AnnulusDomain, samples, N: int = 128,
                    green_fn: GreenFunction | None = None) -> np.ndarray:
    """Density of harmonic measure at ``domain.base_point`` w.r.t. arclength:
    ``-(1/2 pi) dg/dn``."""
    g = green_fn or green(domain, domain.base_point, N)
    vals = normal_derivative(g, list(samples))
    return -np.asarray(vals) / (2.0 * np.pi)


def schottky(domain: AnnulusDomain, j: int, s, N: int = 128,
             green_fn: GreenFunction | None = None):
    """Schottky function ``s_1 = (d omega_1/dn) / (dg/dn)`` at boundary sample(s).

    The annulus has a single independent Schottky function, so only ``j = 1``
    is accepted; the Green pole sits at the domain's base point.
    """
    if j != 1:
        raise ArgumentError(f"the annulus has one Schottky function; j must be 1, got {j}")
    g = green_fn or green(domain, domain.base_point, N)
    omega = harmonic_measure(domain, OUTER)
    samples = _as_points(s)
    num = normal_derivative(omega, samples)
    den = normal_derivative(g, samples)
    den_arr = np.asarray(den)
    # dg/dn < 0 on an analytic boundary with an interior pole; guard anyway.
    assert np.min(np.abs(den_arr)) > 1e-14, "dg/dn vanished on the boundary"
    vals = np.asarray(num) / den_arr
    return float(vals[0]) if isinstance(s, BoundarySample) else vals


def conjugate_period(h: HarmonicRepresentation) -> float:
    """Period of the multi-valued harmonic conjugate around the inner circle."""
    return 2.0 * np.pi * h.clog


def log_cut(z):
    """log with branch cut along the positive real axis (argument in [0, 2 pi))."""
    z = np.asarray(z, dtype=complex)
    theta = np.angle(z)
    theta = np.where(theta < 0.0, theta + 2.0 * np.pi, theta)
    out = np.log(np.abs(z)) + 1j * theta
    return out if out.shape else complex(out)


@dataclass(frozen=True)
class AnalyticCompletion:
    """Evaluator for ``h + i*conj(h)`` on the ring cut along the positive real axis.

    ``series`` is the single-valued Laurent part; the multi-valued part is
    ``log_coeff * log(z)``, so the period around the inner circle is
    ``2 pi i * log_coeff`` and ``exp`` of the completion is single-valued
    exactly when ``log_coeff`` is an integer.
    """

    series: LaurentPolynomial
    log_coeff: float

    @property
    def period(self) -> complex:
        return 2.0j * np.pi * self.log_coeff

    def __call__(self, z):
        out = self.series(z)
        if self.log_coeff != 0.0:
            out = out + self.log_coeff * log_cut(z)
        return out


def analytic_completion(h: HarmonicRepresentation) -> AnalyticCompletion:
    """Multi-valued analytic completion ``F`` with ``Re F = h``.

    The mode ``Re[(A_n rho^n + B_n rho^-n) e^{in theta}]`` completes to
    ``A_n z^n + conj(B_n) z^-n``; the log mode completes to ``clog * log z``.
    """
    coeffs: dict[int, complex] = {0: complex(h.c0)}
    r = h.rref
    for n, a, bh in zip(h._ns, h._A, h._Bhat):
        n = int(n)
        coeffs[n] = coeffs.get(n, 0.0) + a
        coeffs[-n] = coeffs.get(-n, 0.0) + np.conj(bh) * r**float(n)
    return AnalyticCompletion(series=LaurentPolynomial.from_dict(coeffs),
                              log_coeff=h.clog)


def point_mass_kernel(domain: AnnulusDomain, component: int, angle: float,
                      N: int = 64) -> HarmonicRepresentation:
    """Truncated Poisson-type kernel for a unit point mass on one circle.

    Returns the harmonic function ``p`` with boundary data ``2 pi *
    delta(theta - angle)`` on the chosen circle and 0 on the other, truncated
    at frequency ``N``; then ``(1/2pi) integral f(t) p(z; t) dt`` is the
    harmonic extension of boundary data ``f`` supported on that circle.  The
    density of harmonic measure w.r.t. arclength on the carrier circle is
    ``p / (2 pi rho)``.
    """
    ns = np.arange(-N, N + 1, dtype=float)
    data = np.exp(-1j * ns * angle)
    zero = np.zeros(2 * N + 1, dtype=complex)
    if component == OUTER:
        return solve_dirichlet(domain, data, zero, N)
    if component == INNER:
        return solve_dirichlet(domain, zero, data, N)
    raise ArgumentError(f"component index must be 1 or 2, got {component}")
