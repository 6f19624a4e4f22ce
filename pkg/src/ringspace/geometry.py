"""Annulus geometry: domain values, boundary quadrature nodes, exhaustions.

The library works on the normal-form annulus ``{z : r < |z| < 1}``; any other
annulus is a rescaling of this one and callers rescale externally.  Component
index 1 is the outer unit circle, component 2 the inner circle of radius
``r``.  All values are immutable and every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, GeometryError

OUTER = 1
INNER = 2


@dataclass(frozen=True)
class AnnulusDomain:
    """The ring ``{r < |z| < 1}`` with a marked interior base point.

    The base point fixes the harmonic measure used by the Hardy-space inner
    product and serves as the default pole/normalization point everywhere.
    """

    inner_radius: float
    base_point: complex

    def __post_init__(self):
        r = self.inner_radius
        if not (0.0 < r < 1.0):
            raise GeometryError(f"inner radius must lie in (0, 1), got {r}")
        if not (r < abs(self.base_point) < 1.0):
            raise GeometryError(
                f"base point {self.base_point} is not strictly inside the annulus "
                f"({r} < |z| < 1)"
            )

    def contains(self, z, margin: float = 0.0) -> bool:
        """True if ``z`` lies strictly inside, at least ``margin`` from each circle."""
        a = abs(z)
        return self.inner_radius + margin < a < 1.0 - margin

    @property
    def log_gap(self) -> float:
        """log(1/r): the spacing of the period lattice of the conjugate of
        the outer harmonic measure."""
        return math.log(1.0 / self.inner_radius)


@dataclass(frozen=True)
class BoundarySample:
    """One quadrature node on the boundary.

    ``weight`` is the trapezoid weight in arclength, so the weights on each
    circle sum to its circumference.
    """

    component_index: int
    angle: float
    point: complex
    weight: float


@dataclass(frozen=True)
class ExhaustionStage:
    """One stage ``{inner_radius < |z| < outer_radius}`` of a regular exhaustion."""

    inner_radius: float
    outer_radius: float


@dataclass(frozen=True)
class Exhaustion:
    """Nested sub-annuli increasing to the target annulus."""

    stages: tuple[ExhaustionStage, ...]


def make_annulus(r: float, base: complex) -> AnnulusDomain:
    """Validate and build the annulus ``{r < |z| < 1}`` with base point ``base``."""
    return AnnulusDomain(inner_radius=float(r), base_point=complex(base))


def circle_radius(domain: AnnulusDomain, component: int) -> float:
    if component == OUTER:
        return 1.0
    if component == INNER:
        return domain.inner_radius
    raise ArgumentError(f"component index must be 1 (outer) or 2 (inner), got {component}")


def boundary_angles(m: int) -> np.ndarray:
    """``m`` equispaced angles in [0, 2*pi)."""
    return 2.0 * np.pi * np.arange(m) / m


def boundary_nodes(domain: AnnulusDomain, component: int, m: int) -> list[BoundarySample]:
    """``m`` equispaced trapezoid nodes on one boundary circle.

    Uniform weights ``2*pi*rho/m`` in arclength; spectrally accurate for the
    smooth periodic integrands that occur on circles.
    """
    if m < 4:
        raise ArgumentError(f"need at least 4 boundary nodes, got {m}")
    rho = circle_radius(domain, component)
    angles = boundary_angles(m)
    w = 2.0 * np.pi * rho / m
    return [
        BoundarySample(component_index=component, angle=float(t),
                       point=rho * complex(math.cos(t), math.sin(t)), weight=w)
        for t in angles
    ]


def exhaustion_of(domain: AnnulusDomain, stages: int) -> Exhaustion:
    """Regular exhaustion with shrink schedule ``delta_k = (1-r)/(4*(k+1))``.

    Stage ``k`` (1-based) is ``{r + delta_k < |z| < 1 - delta_k}``.  The
    schedule is an artifact choice; only nesting and exhaustion matter.
    """
    if stages < 1:
        raise ArgumentError(f"need at least one stage, got {stages}")
    r = domain.inner_radius
    out = []
    for k in range(1, stages + 1):
        delta = (1.0 - r) / (4.0 * (k + 1))
        out.append(ExhaustionStage(inner_radius=r + delta, outer_radius=1.0 - delta))
    first = out[0]
    if not (first.inner_radius < abs(domain.base_point) < first.outer_radius):
        raise GeometryError(
            f"base point {domain.base_point} is excluded from the first exhaustion "
            f"stage ({first.inner_radius}, {first.outer_radius})"
        )
    return Exhaustion(stages=tuple(out))
