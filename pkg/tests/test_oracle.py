import math

import numpy as np
import pytest

from minstab import samples
from minstab.errors import CapacityError, GridTooCoarseError
from minstab.geometry import R3Rep, WEData
from minstab.oracle import (J0_SQUARED, DiskQuadrature, F_h_quadrature, F_h_quadrature_parts,
                            boundary_modes, jacobi_potential, monomial_integral_check,
                            rayleigh_min, rayleigh_r3)
from minstab.series import CoefficientSeries, default_n_max
from minstab.variational import F_h, F_h_parts, TestFunction

S = CoefficientSeries
PI = math.pi


@pytest.mark.parametrize("a, b, expected", [(0, 0, PI), (1, 0, 0.0), (3, 3, PI / 4)])
def test_monomial_examples(a, b, expected):
    assert abs(monomial_integral_check(a, b) - expected) <= 1e-12


def test_monomial_rejects_negative():
    with pytest.raises(ValueError):
        monomial_integral_check(-1, 0)


def test_default_rule_exact_to_twice_n_max():
    n_max = default_n_max()
    quad = DiskQuadrature.for_degree(0)
    assert quad.n_r >= n_max + 2 and quad.n_theta >= 4 * n_max + 4
    assert quad.exactness >= 2 * n_max + 2
    worst = 0.0
    for a in range(2 * n_max + 1):
        for b in range(2 * n_max + 1 - a):
            exact = 2 * PI / (a + b + 2) if a == b else 0.0
            worst = max(worst, abs(quad.integrate(
                lambda s, t: s ** (a + b) * np.exp(1j * (a - b) * t)) - exact))
    assert worst <= 1e-12


def test_quadrature_examples():
    phi = TestFunction.monomial(1, 1)
    assert F_h_quadrature(samples.enneper(), phi, 2.0) == pytest.approx(-1.5 * PI, abs=1e-8)
    assert F_h_quadrature(samples.plane(), phi, 0.7) == pytest.approx(2 * PI, abs=1e-8)
    zbar = WEData.from_coefficients([[1], [0]])  # boundary data e^{-i theta}: v = zbar
    assert F_h_quadrature(zbar, phi, 1.0) == pytest.approx(PI, abs=1e-12)


def test_boundary_modes_layout():
    modes, band = boundary_modes(S([1, 2, 3]), TestFunction(1, 2, 0.0, 1.0), 1.0)
    # (z^-1 + z^-2)(1 + 2z + 3z^2) = z^-2 + 3 z^-1 + 5 + 3 z
    assert band == 2
    assert np.allclose(modes, [1, 3, 5, 3, 0])


def test_quadrature_parts_match_closed_form(rng):
    d = samples.random_conformal(rng, 5, 3, 2)
    phi = TestFunction(2, 4, 1.1, -0.6)
    for r in (0.4, 1.0, 2.2):
        closed = F_h_parts(d, phi, r)
        quad = F_h_quadrature_parts(d, phi, r)
        assert np.allclose(quad, closed, rtol=1e-9, atol=1e-9)


def test_full_and_windowed_data_agree(rng):
    d = samples.random_conformal(rng, 4, 4, 3)
    phi = TestFunction(1, 3, 0.3, 1.4)
    for r in (0.3, 0.8, 1.1):
        full = F_h_quadrature(d, phi, r, window_only=False)
        assert full == pytest.approx(F_h_quadrature(d, phi, r), rel=1e-9, abs=1e-9)
        assert full == pytest.approx(F_h(d, phi, r), rel=1e-9, abs=1e-9)


def test_quadrature_capacity():
    d = WEData.from_coefficients([[1], [1j]], degree_cap=3)
    with pytest.raises(CapacityError):
        F_h_quadrature(d, TestFunction(1, 2), 1.0)


def test_jacobi_potential_enneper():
    z = np.array([0, 0.5, 1j, 2 - 1j])
    q = jacobi_potential(samples.enneper_rep(), z)
    assert np.allclose(q, 8 / (1 + np.abs(z) ** 2) ** 2)


def test_rayleigh_enneper_signs():
    rep = samples.enneper_rep()
    assert rayleigh_r3(rep, 0.5, (48, 64)) > 0
    assert rayleigh_r3(rep, 1.3, (48, 64)) < 0


def test_rayleigh_plane_is_dirichlet_eigenvalue():
    flat = R3Rep(S([1]), S([0.5]))
    r = 2.0
    assert rayleigh_r3(flat, r, (64, 64)) == pytest.approx(J0_SQUARED / r ** 2, rel=1e-3)


def test_rayleigh_single_flip_near_one():
    rep = samples.enneper_rep()
    radii = np.linspace(0.5, 1.5, 21)
    values = np.array([rayleigh_r3(rep, r, (32, 48), richardson=False) for r in radii])
    flips = np.flatnonzero(np.diff(np.sign(values)))
    assert flips.size == 1
    lo, hi = radii[flips[0]], radii[flips[0] + 1]
    assert lo - 0.05 <= 1.0 <= hi + 0.05


def test_rayleigh_grid_check():
    rep = R3Rep(S([1]), S([0] * 6 + [3]))
    with pytest.raises(GridTooCoarseError):
        rayleigh_r3(rep, 1.0, (4, 8))
    assert rayleigh_r3(rep, 1.0, (16, 32)) < 0


def test_rayleigh_arguments():
    rep = samples.enneper_rep()
    with pytest.raises(ValueError):
        rayleigh_r3(rep, 0.0)
    with pytest.raises(ValueError):
        rayleigh_min(rep, 1.0, 1, 8)
    assert rayleigh_r3(rep, 0.8, 24) == pytest.approx(rayleigh_r3(rep, 0.8, (24, 24)))
