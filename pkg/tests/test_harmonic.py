import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ringspace as rs
from ringspace.errors import ArgumentError, GeometryError
from ringspace.harmonic import (HarmonicRepresentation, log_cut, point_mass_kernel,
                                solve_dirichlet)

from oracles import green_images


# ---------------------------------------------------------------- Dirichlet

def test_dirichlet_single_cosine_mode(dom):
    # outer data cos(theta), inner 0: A + B = 1, A r + B / r = 0.
    N = 8
    outer = np.zeros(2 * N + 1, dtype=complex)
    outer[N + 1] = 0.5
    outer[N - 1] = 0.5
    inner = np.zeros(2 * N + 1, dtype=complex)
    h = solve_dirichlet(dom, outer, inner, N)
    r = 0.5
    B = -(r**2) / (1 - r**2)
    A = 1.0 - B
    (a1, b1) = h.modes[1]
    assert a1 == pytest.approx(A)
    assert b1 == pytest.approx(B)
    assert h(np.exp(0.3j)) == pytest.approx(np.cos(0.3), abs=1e-13)
    assert h(r * np.exp(0.3j)) == pytest.approx(0.0, abs=1e-13)


def test_dirichlet_matches_random_trig_data(dom):
    rng = np.random.default_rng(7)
    N = 32
    deg = N // 2
    pos = rng.standard_normal(deg) + 1j * rng.standard_normal(deg)
    outer = np.zeros(2 * N + 1, dtype=complex)
    outer[N] = rng.standard_normal()
    outer[N + 1: N + deg + 1] = pos
    outer[N - deg: N] = np.conj(pos[::-1])
    inner = np.zeros(2 * N + 1, dtype=complex)
    inner[N] = rng.standard_normal()
    h = solve_dirichlet(dom, outer, inner, N)
    theta = 2 * np.pi * np.arange(256) / 256
    ns = np.arange(-N, N + 1)
    data_vals = np.real(np.exp(1j * np.outer(theta, ns)) @ outer)
    assert np.max(np.abs(h(np.exp(1j * theta)) - data_vals)) < 1e-10
    inner_vals = np.real(np.exp(1j * np.outer(theta, ns)) @ inner)
    assert np.max(np.abs(h(0.5 * np.exp(1j * theta)) - inner_vals)) < 1e-10


def test_dirichlet_constant_data_recovers_measures(dom):
    # outer data 1, inner 0 gives omega_1; swapped data gives omega_2
    N = 4
    ones = np.zeros(2 * N + 1, dtype=complex)
    ones[N] = 1.0
    zero = np.zeros(2 * N + 1, dtype=complex)
    h1 = solve_dirichlet(dom, ones, zero, N)
    w1 = rs.harmonic_measure(dom, 1)
    assert h1.c0 == pytest.approx(w1.c0) and h1.clog == pytest.approx(w1.clog)
    h2 = solve_dirichlet(dom, zero, ones, N)
    w2 = rs.harmonic_measure(dom, 2)
    assert h2.c0 == pytest.approx(w2.c0) and h2.clog == pytest.approx(w2.clog)


def test_green_truncation_precondition(dom):
    with pytest.raises(ArgumentError):
        rs.green(dom, 0.7, N=4)


def test_dirichlet_rejects_nonreal_data(dom):
    N = 4
    outer = np.zeros(2 * N + 1, dtype=complex)
    outer[N + 1] = 1.0  # e^{i theta} alone is not conjugate-symmetric
    with pytest.raises(ArgumentError):
        solve_dirichlet(dom, outer, np.zeros(2 * N + 1), N)


# --------------------------------------------------------- harmonic measure

def test_harmonic_measure_geometric_mean_value():
    d = rs.make_annulus(0.25, 0.5)
    assert rs.harmonic_measure(d, 1)(0.5) == pytest.approx(0.5)


def test_measures_partition_unity(dom):
    rng = np.random.default_rng(1)
    w1 = rs.harmonic_measure(dom, 1)
    w2 = rs.harmonic_measure(dom, 2)
    rho = rng.uniform(0.51, 0.99, 20)
    th = rng.uniform(0, 2 * np.pi, 20)
    z = rho * np.exp(1j * th)
    assert np.max(np.abs(w1(z) + w2(z) - 1.0)) < 1e-14


def test_measure_boundary_values(dom):
    w1 = rs.harmonic_measure(dom, 1)
    theta = 2 * np.pi * np.arange(32) / 32
    assert np.max(np.abs(w1(np.exp(1j * theta)) - 1.0)) < 1e-14
    assert np.max(np.abs(w1(0.5 * np.exp(1j * theta)))) < 1e-14


def test_measure_bad_component(dom):
    with pytest.raises(ArgumentError):
        rs.harmonic_measure(dom, 3)


# ------------------------------------------------------------------ Green

def test_green_boundary_residual(dom):
    g = rs.green(dom, 0.7, N=64)
    theta = 2 * np.pi * np.arange(256) / 256
    res = max(np.max(np.abs(g(np.exp(1j * theta)))),
              np.max(np.abs(g(0.5 * np.exp(1j * theta)))))
    assert res <= 1e-10


def test_green_matches_image_series(dom):
    g = rs.green(dom, 0.7, N=64)
    pts = [0.6 + 0.1j, -0.8, 0.55j, 0.9, -0.52 - 0.3j, 0.97]
    for z in pts:
        assert g(z) == pytest.approx(green_images(z, 0.7, 0.5), abs=5e-12)


def test_green_symmetry(dom):
    rng = np.random.default_rng(3)
    for _ in range(10):
        r = 0.5
        za, zb = [rho * np.exp(1j * t)
                  for rho, t in zip(rng.uniform(r + 0.08, 0.92, 2),
                                    rng.uniform(0, 2 * np.pi, 2))]
        ga = rs.green(dom, za, N=64)
        gb = rs.green(dom, zb, N=64)
        assert abs(ga(zb) - gb(za)) <= 1e-8


def test_green_positive_inside(dom):
    g = rs.green(dom, 0.7, N=64)
    rho = np.linspace(0.505, 0.995, 50)
    theta = 2 * np.pi * np.arange(50) / 50
    Z = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    assert np.min(g(Z)) > 0


def test_green_rejects_boundary_pole(dom):
    with pytest.raises(GeometryError):
        rs.green(dom, 0.5 + 5e-10)
    with pytest.raises(GeometryError):
        rs.green(dom, 1.2)


# ------------------------------------------------- normal derivative & mass

def test_normal_derivative_of_measure_closed_form(dom):
    L = math.log(2.0)
    w1 = rs.harmonic_measure(dom, 1)
    outer = rs.boundary_nodes(dom, 1, 16)
    inner = rs.boundary_nodes(dom, 2, 16)
    dn_out = rs.normal_derivative(w1, outer)
    dn_in = rs.normal_derivative(w1, inner)
    assert np.max(np.abs(dn_out - 1.0 / L)) < 1e-14
    assert np.max(np.abs(dn_in + 1.0 / (0.5 * L))) < 1e-14


def test_measure_mass_is_one(dom):
    for pole in (0.7, 0.55 - 0.2j, 0.9j):
        g = rs.green(dom, pole, N=64)
        nodes = rs.boundary_nodes(dom, 1, 512) + rs.boundary_nodes(dom, 2, 512)
        ds = np.array([s.weight for s in nodes])
        mass = np.sum(-np.asarray(rs.normal_derivative(g, nodes)) / (2 * np.pi) * ds)
        assert mass == pytest.approx(1.0, abs=1e-10)


def test_measure_density_positive(dom):
    nodes = rs.boundary_nodes(dom, 1, 64) + rs.boundary_nodes(dom, 2, 64)
    dens = rs.measure_density(dom, nodes)
    assert np.min(dens) > 0


# ----------------------------------------------------------------- Schottky

def test_schottky_reflection_symmetry():
    d = rs.make_annulus(0.5, math.sqrt(0.5) * np.exp(1j * np.pi / 4))
    m = 16
    nodes = rs.boundary_nodes(d, 1, m)
    vals = rs.schottky(d, 1, nodes)
    # reflection through the axis arg z = pi/4: theta -> pi/2 - theta
    for k in range(m):
        theta_ref = (np.pi / 2 - nodes[k].angle) % (2 * np.pi)
        j = int(round(theta_ref / (2 * np.pi / m))) % m
        assert vals[k] == pytest.approx(vals[j], rel=1e-10, abs=1e-10)


def test_schottky_measure_pairing_vanishes(dom):
    # integral of s_1 d omega = -(1/2pi) integral of d omega_1/dn ds = flux = 0
    nodes = rs.boundary_nodes(dom, 1, 256) + rs.boundary_nodes(dom, 2, 256)
    ds = np.array([s.weight for s in nodes])
    dens = rs.measure_density(dom, nodes)
    s1 = rs.schottky(dom, 1, nodes)
    assert np.sum(s1 * dens * ds) == pytest.approx(0.0, abs=1e-10)
    # oracle: direct quadrature of the measure-density numerator
    w1 = rs.harmonic_measure(dom, 1)
    flux = np.sum(np.asarray(rs.normal_derivative(w1, nodes)) * ds)
    assert flux == pytest.approx(0.0, abs=1e-10)


# Frozen from an N=128 run of this solver (regression fixture).
SCHOTTKY_OUTER_8 = [-0.3332271429309069, -5.6197432621467005, -196.89292889586457,
                    -6915.264730748424, -121643.94154092442, -6915.264730755784,
                    -196.89292889585562, -5.61974326214671]
SCHOTTKY_INNER_8 = [0.304060415819724, 5.590576535066371, 196.86376220694848,
                    6915.235611157691, 121643.92695791823, 6915.23561115769,
                    196.8637622069455, 5.590576535066378]


def test_schottky_eight_node_fixture(dom):
    outer = rs.schottky(dom, 1, rs.boundary_nodes(dom, 1, 8), N=128)
    inner = rs.schottky(dom, 1, rs.boundary_nodes(dom, 2, 8), N=128)
    assert outer == pytest.approx(SCHOTTKY_OUTER_8, rel=1e-12)
    assert inner == pytest.approx(SCHOTTKY_INNER_8, rel=1e-12)


def test_schottky_component_restriction(dom):
    with pytest.raises(ArgumentError):
        rs.schottky(dom, 2, rs.boundary_nodes(dom, 1, 8))


# -------------------------------------------------------- conjugate periods

def test_conjugate_periods_of_measures():
    d = rs.make_annulus(math.exp(-1.0), 0.6)
    assert rs.conjugate_period(rs.harmonic_measure(d, 1)) == pytest.approx(2 * np.pi)
    assert rs.conjugate_period(rs.harmonic_measure(d, 2)) == pytest.approx(-2 * np.pi)


def test_conjugate_period_of_pure_mode():
    h = HarmonicRepresentation(0.0, 0.0, {3: (1.0 + 0.5j, 0.25)}, 0.5)
    assert rs.conjugate_period(h) == 0.0


@settings(max_examples=20, deadline=None)
@given(a=st.floats(-3, 3), b=st.floats(-3, 3), c1=st.floats(-2, 2), c2=st.floats(-2, 2))
def test_conjugate_period_linearity(a, b, c1, c2):
    h1 = HarmonicRepresentation(0.3, c1, {1: (1.0, 0.0)}, 0.5)
    h2 = HarmonicRepresentation(-1.0, c2, {2: (0.0, 1.0j)}, 0.5)
    combo = h1.scale(a) + h2.scale(b)
    expected = a * rs.conjugate_period(h1) + b * rs.conjugate_period(h2)
    assert rs.conjugate_period(combo) == pytest.approx(expected, rel=1e-12, abs=1e-12)


# ------------------------------------------------------ analytic completion

def test_completion_of_outer_measure_exponentiates_cleanly():
    d = rs.make_annulus(math.exp(-1.0), 0.6)
    w1 = rs.harmonic_measure(d, 1)
    comp = rs.analytic_completion(w1)
    assert comp.period == pytest.approx(2j * np.pi)
    # exp(completion) is single-valued across the positive-axis cut
    above = complex(np.exp(comp(0.6 + 1e-12j)))
    below = complex(np.exp(comp(0.6 - 1e-12j)))
    assert above == pytest.approx(below, rel=1e-9)
    # completion = 1 + log z on this annulus
    z = 0.5 * np.exp(1.3j)
    assert comp(z) == pytest.approx(1.0 + log_cut(z), abs=1e-14)


def test_completion_real_part_is_the_function(dom):
    g = rs.green(dom, 0.66 + 0.12j, N=48)
    comp = rs.analytic_completion(g.corrector)
    rng = np.random.default_rng(5)
    z = rng.uniform(0.55, 0.95, 20) * np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
    assert np.max(np.abs(np.real(comp(z)) - g.corrector(z))) < 1e-12


def test_completion_single_valued_when_no_log(dom):
    N = 8
    outer = np.zeros(2 * N + 1, dtype=complex)
    outer[N + 2] = 0.5 - 0.25j
    outer[N - 2] = np.conj(outer[N + 2])
    h = solve_dirichlet(dom, outer, np.zeros(2 * N + 1), N)
    comp = rs.analytic_completion(h)
    assert comp.period == 0.0
    assert complex(comp(0.7 + 1e-14j)) == pytest.approx(complex(comp(0.7 - 1e-14j)), abs=1e-12)


# ------------------------------------------------------ point-mass kernels

def _radial_profile(dom, z, n):
    # mode-n solution with data cos(n theta) on outer, 0 on inner
    r = dom.inner_radius
    rho = abs(z)
    B = -(r ** (2 * n)) / (1 - r ** (2 * n))
    A = 1.0 - B
    return A * rho**n + B * rho**(-n)


def test_point_mass_kernel_pairs_like_harmonic_extension(dom):
    # (1/2pi) integral f(phi) p(z; phi) dphi must equal the harmonic extension
    # of boundary data f; by rotation equivariance p(z; phi) = p(z e^{-i phi}; 0).
    N = 32
    p0 = point_mass_kernel(dom, 1, 0.0, N)
    z = 0.77 * np.exp(0.4j)
    m = 1024
    phis = 2 * np.pi * np.arange(m) / m
    pairing = np.sum(np.cos(2 * phis) * p0(z * np.exp(-1j * phis))) / m
    expected = _radial_profile(dom, z, 2) * np.cos(2 * 0.4)
    assert pairing == pytest.approx(expected, abs=1e-12)


def test_point_mass_kernel_vanishes_on_other_circle(dom):
    p = point_mass_kernel(dom, 1, 0.3, 32)
    theta = 2 * np.pi * np.arange(64) / 64
    assert np.max(np.abs(p(0.5 * np.exp(1j * theta)))) < 1e-12
    q = point_mass_kernel(dom, 2, 0.3, 32)
    assert np.max(np.abs(q(np.exp(1j * theta)))) < 1e-12
