"""Truncated Laurent series: the universal finite-dimensional function
representation on the annulus.

Rational functions with poles off the closed ring are dense in every space
this library works with, and on the annulus they reduce to Laurent
polynomials, so a coefficient window ``lo..hi`` is the one basis everything
else (Grams, kernels, extremal solves) is expressed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finite Laurent sum ``f(z) = sum_{n=lo..hi} c_n z^n``.

    ``coeffs[k]`` holds the coefficient of ``z^(lo + k)``.  Evaluation splits
    into a Horner pass for the nonnegative powers and a Horner pass in ``1/z``
    for the negative ones, which avoids overflow of bare ``z**-n`` factors.
    """

    lo: int
    hi: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if self.lo > self.hi:
            raise ValueError(f"empty window: lo={self.lo} > hi={self.hi}")
        if c.shape != (self.hi - self.lo + 1,):
            raise ValueError(
                f"coefficient array of length {c.size} does not match window "
                f"[{self.lo}, {self.hi}]"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, d: dict[int, complex]) -> "LaurentPolynomial":
        if not d:
            return cls(0, 0, np.zeros(1, dtype=complex))
        lo, hi = min(d), max(d)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for n, v in d.items():
            c[n - lo] = v
        return cls(lo, hi, c)

    @classmethod
    def constant(cls, value: complex) -> "LaurentPolynomial":
        return cls(0, 0, np.array([value], dtype=complex))

    @classmethod
    def monomial(cls, n: int, value: complex = 1.0) -> "LaurentPolynomial":
        return cls(n, n, np.array([value], dtype=complex))

    def coefficient(self, n: int) -> complex:
        if self.lo <= n <= self.hi:
            return complex(self.coeffs[n - self.lo])
        return 0.0 + 0.0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        nonneg_lo = max(self.lo, 0)
        result = np.zeros(z.shape, dtype=complex)
        if self.hi >= 0:
            # Horner, highest power first; then multiply by z**nonneg_lo.
            pos = self.coeffs[nonneg_lo - self.lo:]
            acc = np.zeros(z.shape, dtype=complex)
            for c in pos[::-1]:
                acc = acc * z + c
            if nonneg_lo > 0:
                acc = acc * z**nonneg_lo
            result = result + acc
        if self.lo < 0:
            w = 1.0 / z
            acc = np.zeros(z.shape, dtype=complex)
            # lowest power first; exactly |lo| multiplications by 1/z, with
            # zero coefficients where the window stops above -1
            for k in range(self.lo, 0):
                c = self.coeffs[k - self.lo] if k <= min(self.hi, -1) else 0.0
                acc = (acc + c) * w
            result = result + acc
        return result if result.shape else complex(result)

    def derivative(self) -> "LaurentPolynomial":
        ns = np.arange(self.lo, self.hi + 1)
        return LaurentPolynomial(self.lo - 1, self.hi - 1, self.coeffs * ns)

    def conjugate_coeffs(self) -> "LaurentPolynomial":
        """Coefficient-wise conjugate; equals conj(f(conj(z)))."""
        return LaurentPolynomial(self.lo, self.hi, np.conj(self.coeffs))

    def __add__(self, other):
        if np.isscalar(other) or isinstance(other, complex):
            other = LaurentPolynomial.constant(other)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        c = np.zeros(hi - lo + 1, dtype=complex)
        c[self.lo - lo: self.lo - lo + self.coeffs.size] += self.coeffs
        c[other.lo - lo: other.lo - lo + other.coeffs.size] += other.coeffs
        return LaurentPolynomial(lo, hi, c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, other):
        if np.isscalar(other) or isinstance(other, complex):
            return LaurentPolynomial(self.lo, self.hi, self.coeffs * other)
        c = np.convolve(self.coeffs, other.coeffs)
        return LaurentPolynomial(self.lo + other.lo, self.hi + other.hi, c)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by z^k."""
        return LaurentPolynomial(self.lo + k, self.hi + k, self.coeffs.copy())

    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def trim(self, tol: float = 0.0) -> "LaurentPolynomial":
        """Drop zero (or below-tol) coefficients at the window edges."""
        mask = np.abs(self.coeffs) > tol
        if not mask.any():
            return LaurentPolynomial(0, 0, np.zeros(1, dtype=complex))
        first = int(np.argmax(mask))
        last = int(len(mask) - 1 - np.argmax(mask[::-1]))
        return LaurentPolynomial(self.lo + first, self.lo + last,
                                 self.coeffs[first:last + 1].copy())


def to_laurent(f, domain, lo: int, hi: int, samples: int | None = None,
               radius: float | None = None) -> LaurentPolynomial:
    """Laurent coefficients of an analytic function by FFT on one circle.

    Any radius inside the ring gives the same coefficients exactly (Cauchy);
    the geometric mean ``sqrt(r)`` balances aliasing from the two ends of the
    window.  ``samples`` defaults to eight times the window width.
    """
    width = hi - lo + 1
    m = samples or max(256, 8 * width)
    rho = radius if radius is not None else np.sqrt(domain.inner_radius)
    theta = 2.0 * np.pi * np.arange(m) / m
    vals = np.asarray(f(rho * np.exp(1j * theta)), dtype=complex)
    hat = np.fft.fft(vals) / m  # hat[k] = sum_n c_n rho^n delta(n = k mod m)
    ns = np.arange(lo, hi + 1)
    idx = ns % m
    return LaurentPolynomial(lo, hi, hat[idx] * rho**(-ns.astype(float)))
