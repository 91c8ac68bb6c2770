"""Independent numerical checks for the closed forms.

Two routes that share no algebra with :mod:`minstab.variational`:

* Disk quadrature of the functional.  The boundary values of
  ``phi * alpha(r .)`` are expanded in Fourier modes, the harmonic extension
  is differentiated in polar coordinates and the two integrals
  are evaluated with tensor Gauss-Legendre (radius) x trapezoid (angle)
  quadrature, which is exact on the polynomial integrands that occur.
* A finite-difference Jacobi operator for surfaces in R^3.  The minimum of
  ``(int |grad u|^2 - q u^2) / int u^2`` over Dirichlet functions on the disk
  of radius ``r`` is negative exactly when that piece of surface is unstable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import CapacityError, GridTooCoarseError
from .geometry import R3Rep, WEData
from .series import default_n_max, derivative, evaluate, rescale_lemma

J0_SQUARED = 5.783185962946784  # first zero of J_0, squared


@dataclass(frozen=True)
class DiskQuadrature:
    """Product rule on the unit disk in polar coordinates.

    Exact for ``z^a zbar^b`` whenever ``a + b <= 2 n_r - 2`` and
    ``|a - b| < n_theta``.
    """

    n_r: int
    n_theta: int

    @classmethod
    def for_degree(cls, degree: int) -> "DiskQuadrature":
        """Smallest default-sized rule exact up to total degree ``2 * degree + 2``."""
        base = default_n_max()
        deg = max(degree, base)
        return cls(deg + 2, 4 * deg + 4)

    @property
    def exactness(self) -> int:
        return 2 * self.n_r - 2

    def nodes(self):
        """``(s, ws, theta, wt)``: radial nodes and weights (Jacobian included), angles and weights."""
        return _nodes(self.n_r, self.n_theta)

    def integrate(self, f):
        """Integrate ``f(s, theta)`` (broadcast on an ``(n_r, n_theta)`` grid)."""
        s, ws, theta, wt = self.nodes()
        vals = f(s[:, None], theta[None, :])
        return np.einsum("i,ij,j->", ws, vals, wt)


@lru_cache(maxsize=32)
def _nodes(n_r: int, n_theta: int):
    x, w = np.polynomial.legendre.leggauss(n_r)
    s = 0.5 * (x + 1.0)
    ws = 0.5 * w * s  # includes the polar Jacobian
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    wt = np.full(n_theta, 2.0 * math.pi / n_theta)
    for a in (s, ws, theta, wt):
        a.setflags(write=False)
    return s, ws, theta, wt


def monomial_integral_check(a: int, b: int, quad: DiskQuadrature | None = None) -> complex:
    """Quadrature of ``int_D z^a zbar^b dxdy`` (real up to rounding)."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    quad = quad or DiskQuadrature.for_degree(max(a, b))
    return complex(quad.integrate(
        lambda s, t: s ** (a + b) * np.exp(1j * (a - b) * t)))


def boundary_modes(alpha, phi, r: float, top: int | None = None):
    """Fourier modes of ``phi * alpha(r .)`` on the unit circle.

    Computed as a Laurent product.  Returns ``(modes, band)`` with
    ``modes[band + p]`` the coefficient of ``e^{i p theta}``, ``|p| <= band``.
    ``top`` limits the Taylor coefficients of ``alpha`` that are used.
    """
    c = rescale_lemma(alpha, r).coeffs
    deg = max(int(np.flatnonzero(c)[-1]) if np.any(c) else 0, 0)
    if top is not None:
        deg = min(deg, top)
    reach = phi.reach
    band = max(deg, reach)
    pole = np.zeros(reach + 1, dtype=complex)  # exponents -reach..0
    for order, coef in phi.laurent().items():
        pole[reach + order] += coef
    prod = np.convolve(pole, c[:deg + 1])  # exponents -reach..deg
    modes = np.zeros(2 * band + 1, dtype=complex)
    modes[band - reach:band - reach + prod.size] = prod
    return modes, band


def extension_integrals(modes: np.ndarray, quad: DiskQuadrature) -> tuple[float, float]:
    """``(Re int v_z v_zbar, int |v_zbar|^2)`` for the harmonic extension of ``modes``."""
    band = modes.size // 2
    p = np.arange(-band, band + 1)
    ap = np.abs(p)
    s, ws, theta, wt = quad.nodes()
    S = s[:, None, None]
    E = np.exp(1j * p[None, None, :] * theta[None, :, None])
    # d/ds and (1/s) d/dtheta of sum_p d_p s^|p| e^{ip theta}
    with np.errstate(divide="ignore", invalid="ignore"):
        radial = np.where(ap > 0, ap * S ** (ap - 1), 0.0)
    v_s = np.sum(modes * radial * E, axis=-1)
    v_t_over_s = np.sum(modes * 1j * p * np.where(ap > 0, S ** (ap - 1), 0.0) * E, axis=-1)
    c, sn = np.cos(theta)[None, :], np.sin(theta)[None, :]
    v_x = c * v_s - sn * v_t_over_s
    v_y = sn * v_s + c * v_t_over_s
    v_z = 0.5 * (v_x - 1j * v_y)
    v_zb = 0.5 * (v_x + 1j * v_y)
    cross = np.einsum("i,ij,j->", ws, (v_z * v_zb).real, wt)
    dirichlet = np.einsum("i,ij,j->", ws, np.abs(v_zb) ** 2, wt)
    return float(cross), float(dirichlet)


def F_h_quadrature_parts(d: WEData, phi, r: float, quad: DiskQuadrature | None = None,
                         window_only: bool = True) -> tuple[float, float]:
    """Quadrature ``(cross, dirichlet)`` parts of ``F_h``, summed over coordinates.

    With ``window_only`` (the default) only the Taylor coefficients
    ``c_0 .. c_{2 * reach}`` enter the boundary data.  Higher ones only feed
    analytic modes above the pole order, which cannot pair with any
    antianalytic mode, so the exact value is unchanged.  Keeping them at large
    ``r`` leaves rounding noise of size ``eps * |v_z|`` in ``v_zbar`` that
    swamps the result; the full path is still available for comparison.
    """
    reach = phi.reach
    if 2 * reach > d.degree_cap:
        raise CapacityError(
            f"needs Taylor coefficients up to index {2 * reach}, data is truncated at "
            f"{d.degree_cap}")
    top = 2 * reach if window_only else None
    parts = [boundary_modes(alpha, phi, r, top) for alpha in d.alphas]
    band = max(b for _, b in parts)
    quad = quad or DiskQuadrature.for_degree(band)
    cross = dirichlet = 0.0
    for modes, b in parts:
        c, dd = extension_integrals(modes, quad)
        cross += c
        dirichlet += dd
    return cross, dirichlet


def F_h_quadrature(d: WEData, phi, r: float, quad: DiskQuadrature | None = None,
                   window_only: bool = True) -> float:
    cross, dirichlet = F_h_quadrature_parts(d, phi, r, quad, window_only)
    return cross + dirichlet


def jacobi_potential(rep: R3Rep, z):
    """``|A|^2`` in conformal coordinates: ``8 |g'|^2 / (1 + |g|^2)^2``.

    This is twice the pulled-back spherical area density, since
    ``|A|^2 = -2K`` and ``-K dA`` is the Gauss-image area element.
    """
    g = evaluate(rep.g, z)
    gp = evaluate(derivative(rep.g), z)
    return 8.0 * np.abs(gp) ** 2 / (1.0 + np.abs(g) ** 2) ** 2


def _assemble(rep: R3Rep, r: float, n_r: int, n_theta: int):
    h = r / n_r
    dt = 2.0 * math.pi / n_theta
    s = h * np.arange(n_r + 1)
    n = 1 + (n_r - 1) * n_theta
    idx = lambda i, j: 1 + (i - 1) * n_theta + (j % n_theta)  # noqa: E731
    rows, cols, vals = [], [], []
    diag = np.zeros(n)
    mass = np.zeros(n)
    mass[0] = math.pi * (h / 2) ** 2

    def couple(a, b, w):
        rows.extend((a, b))
        cols.extend((b, a))
        vals.extend((-w, -w))
        diag[a] += w
        diag[b] += w

    for j in range(n_theta):
        couple(0, idx(1, j), dt / 2)
    for i in range(1, n_r):
        w_ang = h / (s[i] * dt)
        w_out = (s[i] + h / 2) * dt / h
        for j in range(n_theta):
            a = idx(i, j)
            mass[a] = s[i] * h * dt
            couple(a, idx(i, j + 1), w_ang)
            if i + 1 < n_r:
                couple(a, idx(i + 1, j), w_out)
            else:
                diag[a] += w_out  # Dirichlet boundary
    theta = dt * np.arange(n_theta)
    z = np.concatenate([[0j], (s[1:n_r, None] * np.exp(1j * theta)[None, :]).ravel()])
    q = jacobi_potential(rep, z)
    K = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsc()
    K = K + sp.diags(diag - q * mass)
    return K.tocsc(), mass, float(np.max(q))


def _lowest_eigenvalue(K, mass, q_max, tol=1e-8, max_iter=1000):
    # inverse iteration shifted below the spectrum (K >= -q_max M)
    shift = -(q_max + 1.0)
    M = sp.diags(mass)
    lu = spla.splu((K - shift * M).tocsc())
    x = np.ones(K.shape[0])
    lam = None
    for _ in range(max_iter):
        x = lu.solve(mass * x)
        x /= math.sqrt(float(np.dot(x, mass * x)))
        new = float(x @ (K @ x))
        if lam is not None and abs(new - lam) < tol * max(1.0, abs(new)):
            return new
        lam = new
    return lam


def rayleigh_min(rep: R3Rep, r: float, n_r: int, n_theta: int) -> float:
    """Lowest discrete Jacobi eigenvalue on the disk of radius ``r`` (one grid)."""
    if n_r < 2 or n_theta < 4:
        raise ValueError("grid needs n_r >= 2 and n_theta >= 4")
    K, mass, q_max = _assemble(rep, r, n_r, n_theta)
    return _lowest_eigenvalue(K, mass, q_max)


def rayleigh_r3(rep: R3Rep, r: float, grid_size=(200, 256), richardson: bool = True) -> float:
    """Estimate ``min (int |grad u|^2 - q u^2) / int u^2`` over Dirichlet ``u`` on ``D_r``.

    A negative value certifies that the surface restricted to ``D_r`` is
    unstable.  With ``richardson`` set the estimate is compared with the
    extrapolation from a half-resolution grid; a gap above 10% of
    ``max(|extrapolated|, j0^2 / r^2)`` raises :class:`GridTooCoarseError`.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    if isinstance(grid_size, int):
        grid_size = (grid_size, grid_size)
    n_r, n_theta = grid_size
    fine = rayleigh_min(rep, r, n_r, n_theta)
    if richardson:
        coarse = rayleigh_min(rep, r, max(n_r // 2, 2), max(n_theta // 2, 4))
        extrap = (4.0 * fine - coarse) / 3.0
        ref = max(abs(extrap), J0_SQUARED / r ** 2)
        if abs(fine - extrap) > 0.1 * ref:
            raise GridTooCoarseError(
                f"grid {n_r}x{n_theta} estimate {fine:.4g} vs extrapolated {extrap:.4g}")
    return fine
