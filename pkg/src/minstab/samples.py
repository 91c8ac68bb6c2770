"""Reference surfaces and random generators of conformal data."""

from __future__ import annotations

import numpy as np

from .geometry import R3Rep, WEData, from_r3
from .series import CoefficientSeries


def enneper_rep(degree_cap: int | None = None) -> R3Rep:
    """``f = 1``, ``g = z``."""
    return R3Rep(CoefficientSeries([1], degree_cap), CoefficientSeries([0, 1], degree_cap))


def enneper(degree_cap: int | None = None) -> WEData:
    return from_r3(enneper_rep(degree_cap))


def plane(degree_cap: int | None = None) -> WEData:
    """``alpha = (1, i)``: the identity map of C = R^2."""
    return WEData.from_coefficients([[1], [1j]], degree_cap=degree_cap)


def r4_two_jet(degree_cap: int | None = None) -> WEData:
    """``(1, i, 0, 0) + z (0, 0, 1, i)``: the holomorphic curve ``w -> (w, w^2/2)`` in C^2."""
    return WEData.from_coefficients([[1, 0], [1j, 0], [0, 1], [0, 1j]],
                                    degree_cap=degree_cap)


def _poly(rng: np.random.Generator, degree: int) -> np.ndarray:
    return rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_isotropic(rng: np.random.Generator, n: int, degree: int,
                     dim: int | None = None, degree_cap: int | None = None) -> WEData:
    """Holomorphic-up-to-rigid-motion data of the given polynomial degree.

    The jets live in the span of ``dim`` null vectors ``e_{2b} + i e_{2b+1}``
    built from a random orthonormal frame, so every Gram entry vanishes.
    """
    if dim is None:
        dim = n // 2
    if not 1 <= dim <= n // 2:
        raise ValueError("need 1 <= dim <= n // 2")
    frame = random_orthogonal(rng, n)
    nulls = [frame[:, 2 * b] + 1j * frame[:, 2 * b + 1] for b in range(dim)]
    coeffs = sum(np.outer(v, _poly(rng, degree)) for v in nulls)
    return WEData.from_coefficients(coeffs, rng.normal(size=n), degree_cap)


def random_conformal(rng: np.random.Generator, n: int, f_degree: int, g_degree: int,
                     degree_cap: int | None = None, rotate: bool = True) -> WEData:
    """Conformal data ``f ((1 - S)/2, i (1 + S)/2, g_1, ..., g_{n-2}) `` with ``S = sum g_l^2``.

    Multiplying by a random real orthogonal matrix keeps ``sum alpha_i^2 = 0``.
    Generic draws are not holomorphic up to rigid motion.
    """
    if n < 3:
        raise ValueError("need n >= 3 for non-planar conformal data")
    f = np.polynomial.polynomial
    F = _poly(rng, f_degree)
    gs = [_poly(rng, g_degree) for _ in range(n - 2)]
    S = sum(f.polymul(g, g) for g in gs)
    rows = [0.5 * f.polymul(F, f.polysub([1], S)),
            0.5j * f.polymul(F, f.polyadd([1], S))]
    rows += [f.polymul(F, g) for g in gs]
    width = max(len(r) for r in rows)
    A = np.zeros((n, width), dtype=complex)
    for i, row in enumerate(rows):
        A[i, :len(row)] = row
    if rotate:
        A = random_orthogonal(rng, n) @ A
    return WEData.from_coefficients(A, rng.normal(size=n), degree_cap)


def random_r3_rep(rng: np.random.Generator, f_degree: int, g_degree: int,
                  degree_cap: int | None = None) -> R3Rep:
    """Random ``(f, g)`` with ``f(0) != 0`` and ``g'(0) != 0``."""
    return R3Rep(CoefficientSeries(_poly(rng, f_degree), degree_cap),
                 CoefficientSeries(_poly(rng, g_degree), degree_cap))
