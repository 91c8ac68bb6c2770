"""Weierstrass-Enneper data of branched minimal immersions of the plane.

Conventions
-----------
``alphas[i]`` holds the Taylor coefficients of ``dh_i/dz``.  Because ``h_i`` is
real, ``dh_i = 2 Re(dh_i/dz dz)``, so the surface is reconstructed as

    h_i(z) = base_i + 2 Re( sum_j c_j^i z^(j+1) / (j+1) ).

Dropping the factor 2 (integrating ``Re(alpha_i)`` directly) would only scale
the surface globally.  Stability and holomorphicity verdicts do not see
global scalings, so nothing downstream depends on this choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CapacityError, InvalidRepresentationError
from .series import (CoefficientSeries, as_series, evaluate, multiply,
                     series_matrix)


@dataclass(frozen=True)
class WEData:
    """Weierstrass-Enneper data ``(alpha_1, ..., alpha_n)`` plus a base point.

    The conformality residual is computed once and stored; whether it is
    small enough is left to the caller (see :meth:`require_conformal`).
    """

    alphas: tuple
    base_point: np.ndarray = None
    residual: float = field(init=False, repr=False)

    def __post_init__(self):
        alphas = tuple(as_series(a) for a in self.alphas)
        if len(alphas) < 2:
            raise ValueError("ambient dimension n must be at least 2")
        if all(a.is_zero() for a in alphas):
            raise ValueError("at least one alpha_i must be nonzero")
        caps = {a.degree_cap for a in alphas}
        if len(caps) != 1:
            cap = min(caps)
            alphas = tuple(a.with_cap(cap) for a in alphas)
        base = (np.zeros(len(alphas)) if self.base_point is None
                else np.asarray(self.base_point, dtype=float).ravel())
        if base.shape != (len(alphas),):
            raise ValueError("base_point must have one entry per coordinate")
        base.setflags(write=False)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "base_point", base)
        object.__setattr__(self, "residual", _residual(alphas))

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def degree_cap(self) -> int:
        return self.alphas[0].degree_cap

    @property
    def degree(self) -> int:
        return max(a.degree for a in self.alphas)

    @cached_property
    def _jets(self) -> np.ndarray:
        out = series_matrix(self.alphas, self.degree_cap + 1).T
        out.setflags(write=False)
        return out

    def jets(self, N: int | None = None) -> np.ndarray:
        """Array of shape ``(N+1, n)`` whose row ``j`` is the vector ``c_j``.

        Rows beyond the degree cap are zero.
        """
        if N is None:
            N = self.degree_cap
        if N <= self.degree_cap:
            return self._jets[:N + 1].copy()
        out = np.zeros((N + 1, self.n), dtype=complex)
        out[:self.degree_cap + 1] = self._jets
        return out

    def scale(self) -> float:
        """Largest coefficient magnitude, used to make tolerances scale free."""
        return float(np.max(np.abs(self.jets())))

    def require_conformal(self, tol: float = 1e-10) -> "WEData":
        if self.residual > tol:
            raise ValueError(
                f"data is not conformal: residual {self.residual:.3e} > {tol:.1e}")
        return self

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence[complex]], base_point=None,
                          degree_cap: int | None = None) -> "WEData":
        """Build from one coefficient list per coordinate."""
        return cls(tuple(CoefficientSeries(r, degree_cap) for r in rows), base_point)


def _residual(alphas) -> float:
    top = max(float(np.max(np.abs(a.coeffs))) for a in alphas)
    total = np.zeros(alphas[0].degree_cap + 1, dtype=complex)
    for a in alphas:
        total += multiply(a, a, truncate=True).coeffs
    return float(np.max(np.abs(total))) / top ** 2


def conformality_residual(d: WEData) -> float:
    """``max_j |[z^j] sum_i alpha_i^2|`` divided by the squared largest coefficient."""
    return d.residual


@dataclass(frozen=True)
class R3Rep:
    """``(f, g)`` representation of a minimal immersion into R^3.

    ``f`` carries the coefficients ``b_j`` and ``g`` the coefficients ``a_j``;
    ``k`` is the order of vanishing of ``f`` and ``m`` the lowest positive
    index with ``a_m != 0`` (``None`` when ``g`` is constant).
    """

    f: CoefficientSeries
    g: CoefficientSeries

    def __post_init__(self):
        f, g = as_series(self.f), as_series(self.g)
        if f.is_zero():
            raise InvalidRepresentationError("f must not vanish identically")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @property
    def k(self) -> int:
        return self.f.order

    @property
    def m(self) -> int | None:
        nz = np.flatnonzero(self.g.coeffs[1:])
        return int(nz[0]) + 1 if nz.size else None


def from_r3(rep: R3Rep) -> WEData:
    """``(f(1-g^2)/2, i f(1+g^2)/2, f g)``; fails if ``f g^2`` overflows the cap."""
    f, g = rep.f, rep.g
    cap = min(f.degree_cap, g.degree_cap)
    if max(f.degree, 0) + 2 * max(g.degree, 0) > cap:
        raise CapacityError(
            f"deg f + 2 deg g = {f.degree + 2 * g.degree} exceeds cap {cap}")
    g2 = multiply(g, g, cap)
    fg2 = multiply(f, g2, cap)
    fg = multiply(f, g, cap)
    f = f.with_cap(cap)
    return WEData((CoefficientSeries(0.5 * (f - fg2).coeffs, cap),
                   CoefficientSeries(0.5j * (f + fg2).coeffs, cap),
                   fg))


def surface_point(d: WEData, z) -> np.ndarray:
    """Point(s) of the surface; shape ``(n,)`` for scalar ``z`` else ``z.shape + (n,)``."""
    zz = np.asarray(z, dtype=complex)
    cap = d.degree_cap
    weights = 1.0 / np.arange(1, cap + 2)
    out = []
    for a in d.alphas:
        integral = zz * np.polynomial.polynomial.polyval(zz, a.coeffs * weights)
        out.append(2.0 * integral.real)
    pts = np.moveaxis(np.array(out), 0, -1)
    return pts + d.base_point


def gauss_map(d: WEData, z: complex, rel_tol: float = 1e-12) -> np.ndarray:
    """Canonical representative of ``[alpha_1(z) : ... : alpha_n(z)]``.

    Unit Euclidean norm, first nonzero entry rotated onto the positive real
    axis.  Raises ``ValueError`` where every ``alpha_i`` vanishes.
    """
    v = np.array([evaluate(a, z) for a in d.alphas])
    norm = np.linalg.norm(v)
    if norm <= rel_tol * max(d.scale(), 1e-300):
        raise ValueError(f"all alpha_i vanish at z={z}; Gauss map undefined")
    v = v / norm
    lead = v[np.flatnonzero(np.abs(v) > rel_tol)[0]]
    return v * (abs(lead) / lead)


def twist(d: WEData, f) -> WEData:
    """Multiply every ``alpha_i`` by the holomorphic function ``f``."""
    f = as_series(f)
    if f.is_zero():
        raise ValueError("twist function must not vanish identically")
    cap = min(d.degree_cap, f.degree_cap)
    return WEData(tuple(multiply(a, f, cap) for a in d.alphas), d.base_point)


def spherical_area_coefficient(rep: R3Rep) -> float:
    """Leading coefficient ``4 pi |g'(0)|^2 / (1 + |g(0)|^2)^2`` of the Gauss-image area."""
    a0, a1 = rep.g[0], rep.g[1]
    return 4.0 * np.pi * abs(a1) ** 2 / (1.0 + abs(a0) ** 2) ** 2
