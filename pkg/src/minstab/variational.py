"""Destabilising variations from the closed-form disk functional.

For a complex function ``v`` on the unit disk set

    F(v) = Re int_D v_z v_zbar dxdy + int_D |v_zbar|^2 dxdy.

If ``v`` is the harmonic extension of a boundary Laurent polynomial
``sum_p d_p e^{i p theta}``, write ``u_p = d_p`` and ``w_p = d_{-p}`` for
``p >= 1``.  Then ``v = const + sum u_p z^p + sum w_p zbar^p`` and, because
``int_D z^a zbar^b = 2 pi / (a + b + 2)`` when ``a == b`` and zero otherwise,

    F(v) = pi * sum_{p>=1} p * (Re(u_p w_p) + |w_p|^2).

Every formula in this module is an exact consequence of that identity
applied to the boundary values of ``phi * alpha_i(r z)`` with the test
functions ``phi(z) = z^-k + y e^{i theta} z^-m`` (or ``gamma z^-m``).
Summing over coordinates gives ``F_h``; a negative value shows that the
restriction of the surface to the disk of radius ``r`` is unstable.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import CapacityError, InvalidRepresentationError
from .geometry import R3Rep, WEData
from .isotropy import DEFAULT_TOL, ek_matrix, gram, jet_scale
from .roots import cauchy_bound, smallest_positive_root
from .series import rescale_lemma

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TestFunction:
    """``z^-k + y e^{i theta} z^-m``, or ``gamma z^-m`` with ``gamma = y e^{i theta}``."""

    k: int
    m: int
    theta: float = 0.0
    y: float = 1.0
    one_term: bool = False

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive integers")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)
        object.__setattr__(self, "y", float(self.y))

    @classmethod
    def monomial(cls, gamma: complex, m: int) -> "TestFunction":
        gamma = complex(gamma)
        return cls(m, m, math.atan2(gamma.imag, gamma.real), abs(gamma), one_term=True)

    @property
    def gamma(self) -> complex:
        return self.y * complex(math.cos(self.theta), math.sin(self.theta))

    @property
    def reach(self) -> int:
        """Largest pole order."""
        return self.m if self.one_term else max(self.k, self.m)

    def laurent(self) -> dict:
        """Negative-power coefficients ``{-order: coefficient}``."""
        if self.one_term:
            return {-self.m: self.gamma}
        out = {-self.k: 1.0 + 0j}
        out[-self.m] = out.get(-self.m, 0j) + self.gamma
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(c * z ** p for p, c in self.laurent().items())


def _require(d: WEData, index: int) -> None:
    if index > d.degree_cap:
        raise CapacityError(
            f"needs Taylor coefficients up to index {index}, data is truncated at "
            f"{d.degree_cap}")


def boundary_laurent(alpha, phi: TestFunction, r: float) -> np.ndarray:
    """Laurent coefficients of ``phi * alpha(r .)`` on the circle, exponents ``-J..J``.

    ``J = phi.reach``; terms of higher positive exponent are dropped because
    they never meet a nonzero antianalytic partner in the functional.
    """
    J = phi.reach
    c = rescale_lemma(alpha, r)
    out = np.zeros(2 * J + 1, dtype=complex)
    for order, coef in phi.laurent().items():
        # exponent p receives coef * c_{p - order}
        out += coef * c.window(-J - order, J - order)
    return out


def poisson_coeffs(d) -> tuple[np.ndarray, np.ndarray]:
    """Split boundary Laurent data into harmonic-extension coefficients.

    ``d`` has odd length ``2J+1`` with ``d[J]`` the constant mode.  Returns
    ``(u, w)`` of length ``J+1``: ``u[p]`` multiplies ``z^p`` (``u[0] = 0``)
    and ``w[p]`` multiplies ``zbar^p``, with ``w[0] = d_0`` carrying the
    constant.
    """
    d = np.asarray(d, dtype=complex)
    if d.size % 2 != 1:
        raise ValueError("boundary coefficients must have odd length 2J+1")
    J = d.size // 2
    u = np.zeros(J + 1, dtype=complex)
    u[1:] = d[J + 1:]
    w = d[J::-1].copy()
    return u, w


def f_functional_closed(u, w) -> float:
    """``pi * sum_{p>=1} p (Re(u_p w_p) + |w_p|^2)``."""
    u = np.asarray(u, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = max(u.size, w.size)
    uu = np.zeros(n, dtype=complex)
    ww = np.zeros(n, dtype=complex)
    uu[:u.size], ww[:w.size] = u, w
    p = np.arange(n)
    return float(math.pi * np.sum(p * ((uu * ww).real + np.abs(ww) ** 2)))


def boundary_matrix(d: WEData, phi: TestFunction, r: float) -> np.ndarray:
    """:func:`boundary_laurent` for all coordinates at once, shape ``(2J+1, n)``."""
    J = phi.reach
    _require(d, 2 * J)
    if not r > 0:
        raise ValueError(f"rescaling radius must be positive, got {r}")
    C = d.jets(2 * J) * (float(r) ** np.arange(2 * J + 1))[:, None]
    padded = np.zeros((4 * J + 1, d.n), dtype=complex)
    padded[J:3 * J + 1] = C  # padded[J + j] = c_j r^j
    out = np.zeros((2 * J + 1, d.n), dtype=complex)
    for order, coef in phi.laurent().items():
        # exponent p receives coef * c_{p - order}, p = -J..J
        out += coef * padded[-order:-order + 2 * J + 1]
    return out


def F_h_parts(d: WEData, phi: TestFunction, r: float) -> tuple[float, float]:
    """``(cross, dirichlet)``: the two integrals of the functional summed over coordinates."""
    B = boundary_matrix(d, phi, r)
    J = phi.reach
    u, w = B[J + 1:], B[J - 1::-1]  # exponents 1..J and -1..-J
    p = np.arange(1, J + 1)[:, None]
    cross = math.pi * float(np.sum(p * (u * w).real))
    dirichlet = math.pi * float(np.sum(p * (w.real ** 2 + w.imag ** 2)))
    return cross, dirichlet


def F_h(d: WEData, phi: TestFunction, r: float) -> float:
    """Closed-form ``F_h`` of the disk rescaling ``z -> h(r z)``.

    The sum over coordinates of :func:`f_functional_closed` applied to the
    boundary data of ``phi * alpha_i(r .)``.
    """
    cross, dirichlet = F_h_parts(d, phi, r)
    return cross + dirichlet


def c_criterion(d: WEData, gamma: complex, m: int, r: float) -> float:
    """``sum_i sum_{j<m} (m-j) (Re(gamma^2 c_j c_{2m-j}) + |gamma c_j|^2)`` on rescaled data.

    Equals ``F_h`` for ``phi = gamma z^-m`` divided by ``pi``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    _require(d, 2 * m)
    gamma = complex(gamma)
    total = 0.0
    for alpha in d.alphas:
        c = rescale_lemma(alpha, r).window(0, 2 * m)
        j = np.arange(m)
        total += float(np.sum((m - j) * ((gamma ** 2 * c[j] * c[2 * m - j]).real
                                          + np.abs(gamma * c[j]) ** 2)))
    return total


def one_term_poly(d: WEData, gamma: complex, m: int) -> np.ndarray:
    """Coefficients in ``r`` (ascending) of ``F_h(gamma z^-m)``."""
    _require(d, 2 * m)
    C = d.jets(2 * m)
    gamma = complex(gamma)
    out = np.zeros(2 * m + 1)
    for j in range(m):
        out[2 * m] += (m - j) * (gamma ** 2 * np.dot(C[j], C[2 * m - j])).real
        out[2 * j] += (m - j) * abs(gamma) ** 2 * float(np.vdot(C[j], C[j]).real)
    return math.pi * out


@dataclass(frozen=True)
class QuadraticProfile:
    """``F_h(phi_{k,m,theta,y}) = y^2 P(r) + y Q(r) + T(r)`` with ascending coefficients in ``r``.

    ``deg P <= 2m`` and ``deg Q <= k + m``.  ``T`` has degree at most ``2k``,
    and at most ``2k - 2`` once the Gram entries of total degree ``2k`` vanish.
    """

    P: np.ndarray
    Q: np.ndarray
    T: np.ndarray
    k: int
    m: int
    theta: float

    def __call__(self, y: float, r: float) -> float:
        return (y * y * npoly.polyval(r, self.P) + y * npoly.polyval(r, self.Q)
                + npoly.polyval(r, self.T))

    def discriminant_poly(self) -> np.ndarray:
        return npoly.polysub(npoly.polymul(self.Q, self.Q),
                             4.0 * npoly.polymul(self.P, self.T))

    def discriminant(self, r):
        return npoly.polyval(r, self.discriminant_poly())


def quadratic_profile(d: WEData, k: int, m: int, theta: float) -> QuadraticProfile:
    """Collect ``F_h(phi_{k,m,theta,y})`` by powers of ``y`` and ``r``.

    With ``A_p = c_{p+k} r^{p+k}`` and ``B_p = e^{i theta} c_{p+m} r^{p+m}`` the
    boundary coefficient of ``e^{i p theta}`` is ``A_p + y B_p``.  Expanding
    the closed form gives, summed over coordinates and ``p >= 1``,

    - ``P``: ``p (Re(B_p B_-p) + |B_-p|^2)``
    - ``Q``: ``p (Re(A_p B_-p + B_p A_-p) + 2 Re(A_-p conj(B_-p)))``
    - ``T``: ``p (Re(A_p A_-p) + |A_-p|^2)``
    """
    if not 1 <= k <= m:
        raise ValueError("quadratic_profile expects 1 <= k <= m")
    _require(d, 2 * m)
    C = d.jets(2 * m)
    e = complex(math.cos(theta), math.sin(theta))

    def g(a, b):
        return complex(np.dot(C[a], C[b])) if 0 <= a <= 2 * m and 0 <= b <= 2 * m else 0j

    def herm(a, b):
        return complex(np.vdot(C[b], C[a])) if a >= 0 and b >= 0 else 0j

    P = np.zeros(2 * m + 1)
    Q = np.zeros(2 * m + 1)
    T = np.zeros(2 * m + 1)
    for p in range(1, m + 1):
        P[2 * m] += p * (e * e * g(m + p, m - p)).real
        P[2 * (m - p)] += p * herm(m - p, m - p).real
        Q[k + m] += p * (e * (g(p + k, m - p) + g(p + m, k - p))).real
        if p <= k:
            Q[k + m - 2 * p] += 2 * p * (herm(k - p, m - p) * e.conjugate()).real
    for p in range(1, k + 1):
        T[2 * k] += p * g(k + p, k - p).real
        T[2 * (k - p)] += p * herm(k - p, k - p).real
    return QuadraticProfile(math.pi * P, math.pi * Q, math.pi * T, k, m, theta % TWO_PI)


@dataclass(frozen=True)
class DestabCertificate:
    """A test function and radius with ``F_h < 0``."""

    phi: TestFunction
    r: float
    value: float
    verified_by_oracle: bool = False
    oracle_value: float | None = None
    N: int | None = None
    E: complex | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "k": self.phi.k, "m": self.phi.m, "theta": self.phi.theta, "y": self.phi.y,
            "one_term": self.phi.one_term, "r": self.r, "value": self.value,
            "verified_by_oracle": self.verified_by_oracle,
            "oracle_value": self.oracle_value, "N": self.N,
        }


_STEPS = (1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)


def _first_positive(poly: np.ndarray, r_hi: float, n_grid: int) -> float | None:
    """Grid scan then bisection for the first ``r`` in ``(0, r_hi]`` where ``poly > 0``."""
    grid = np.geomspace(r_hi * 1e-4, r_hi, n_grid)
    vals = npoly.polyval(grid, poly)
    hits = np.flatnonzero(vals > 0)
    if hits.size == 0:
        return None
    i = int(hits[0])
    if i == 0:
        return float(grid[0])
    lo, hi = float(grid[i - 1]), float(grid[i])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if npoly.polyval(mid, poly) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def _best_y(prof: QuadraticProfile, r: float) -> float:
    P = npoly.polyval(r, prof.P)
    Q = npoly.polyval(r, prof.Q)
    T = npoly.polyval(r, prof.T)
    delta = Q * Q - 4 * P * T
    if P > 0:
        return -Q / (2 * P)
    if P < 0:
        return -Q / (2 * P) + math.sqrt(max(delta, 0.0)) / abs(P) + 1.0
    return -math.copysign(1.0 + abs(T) / max(abs(Q), 1e-300), Q) if Q != 0 else 0.0


def _margin(scale: float, r: float, reach: int) -> float:
    return 1e-9 * scale * max(1.0, r) ** (2 * reach)


def _certify_two_term(d, k, m, E, r_max, n_grid, scale):
    theta = (-math.atan2(E.imag, E.real)) % TWO_PI
    prof = quadratic_profile(d, k, m, theta)
    delta = prof.discriminant_poly()
    r_hi = r_max if r_max is not None else 1.01 * max(cauchy_bound(delta), 1.0)
    r_c = _first_positive(delta, r_hi, n_grid)
    if r_c is None:
        return None
    for step in _STEPS:
        r = r_c * (1 + step)
        if r_max is not None and r > r_max:
            r = r_max
        y = _best_y(prof, r)
        phi = TestFunction(k, m, theta, y)
        value = F_h(d, phi, r)
        if value < -_margin(scale, r, m):
            return phi, r, value
        if r_max is not None and r >= r_max:
            break
    return None


def _certify_one_term(d, m, S, r_max, scale):
    # unit gamma with Re(gamma^2 S) = -|S|
    gamma = complex(math.cos((math.pi - math.atan2(S.imag, S.real)) / 2),
                    math.sin((math.pi - math.atan2(S.imag, S.real)) / 2))
    poly = one_term_poly(d, gamma, m)
    r_c = smallest_positive_root(poly)
    if r_c is None:
        return None
    for step in _STEPS:
        r = r_c * (1 + step)
        if r_max is not None and r > r_max:
            r = r_max
        phi = TestFunction.monomial(gamma, m)
        value = F_h(d, phi, r)
        if value < -_margin(scale, r, m):
            return phi, r, value
        if r_max is not None and r >= r_max:
            break
    return None


def destab_search(d: WEData, k_max: int | None = None, m_max: int | None = None,
                  r_max: float | None = None, n_grid: int = 200, tol: float = DEFAULT_TOL,
                  verify: bool = True) -> DestabCertificate | None:
    """Look for an explicit destabilising test function.

    Total degrees ``N = k + m`` are scanned in ascending order.  At the first
    ``N`` whose Gram row ``a_j = g(c_j, c_{N-j})`` is nonzero, the weighted sums
    ``E_k`` are formed and the first ``k >= 1`` with ``E_k != 0`` is used:

    - ``k < m``: ``theta = -arg E_k`` makes the ``r^N`` coefficient of ``Q``
      positive, so the discriminant ``Q^2 - 4PT`` eventually turns positive.
      The first such radius is bracketed on a geometric grid and bisected;
      ``y`` minimises the quadratic (or runs off to infinity when ``P < 0``).
    - ``k == m``: the two poles merge and the one-term function ``gamma z^-m``
      with ``Re(gamma^2 E_m) < 0`` is used instead.

    The radius is pushed slightly past the threshold until ``F_h`` is clearly
    negative.  Returns ``None`` when every Gram entry within the bounds
    vanishes.  Certificates are re-evaluated by disk quadrature when
    ``verify`` is set.
    """
    cap = d.degree_cap
    half = cap // 2
    m_max = half if m_max is None else m_max
    k_max = m_max if k_max is None else k_max
    if m_max > half or k_max > half:
        raise CapacityError(f"search bounds must not exceed {half} (cap {cap})")
    n_top = min(k_max + m_max, cap)
    table = gram(d, n_top)
    scale = jet_scale(d)
    thresh = tol * scale
    for N in range(1, n_top + 1):
        row = table.antidiagonal(N)
        if np.max(np.abs(row)) <= thresh:
            continue
        E = ek_matrix(N) @ row
        for k in range(1, N // 2 + 1):
            m = N - k
            if k > k_max or m > m_max or abs(E[k]) <= thresh * N:
                continue
            if k == m:
                found = _certify_one_term(d, m, complex(E[k]) / 2, r_max, scale)
            else:
                found = _certify_two_term(d, k, m, complex(E[k]), r_max, n_grid, scale)
            if found is None:
                log.debug("no certificate at N=%d k=%d", N, k)
                continue
            phi, r, value = found
            cert = DestabCertificate(phi, r, value, N=N, E=complex(E[k]))
            return _verify(d, cert) if verify else cert
    return None


def _verify(d: WEData, cert: DestabCertificate, rtol: float = 1e-6) -> DestabCertificate:
    from .oracle import F_h_quadrature

    q = F_h_quadrature(d, cert.phi, cert.r)
    ok = abs(q - cert.value) <= rtol * max(1.0, abs(cert.value)) and q < 0
    if not ok:
        log.warning("quadrature disagrees with closed form: %r vs %r", q, cert.value)
    return DestabCertificate(cert.phi, cert.r, cert.value, ok, q, cert.N, cert.E)


@dataclass(frozen=True)
class RadiusResult:
    """Destabilisation radius bound for an R^3 immersion given by ``(f, g)``.

    ``poly`` holds ascending coefficients of the polynomial in ``r`` whose
    smallest positive root is ``r0``; ``gamma`` realises the bound with the
    one-term test function ``gamma z^-(k+m)``.
    """

    r0: float
    poly: np.ndarray
    fast_path: float | None
    gamma: complex
    k: int
    m: int


def radius_poly(rep: R3Rep) -> np.ndarray:
    """``-m |b_k a_m|^2 r^2m + sum_{j<m} (m-j) |b_{k+j}|^2 (1+|a_0|^2)^2 r^2j``."""
    m, k = rep.m, rep.k
    if m is None:
        raise InvalidRepresentationError("g is constant: no index m with a_m != 0")
    a0, am, bk = rep.g[0], rep.g[m], rep.f[k]
    out = np.zeros(2 * m + 1)
    out[2 * m] = -m * abs(bk * am) ** 2
    for j in range(m):
        out[2 * j] += (m - j) * abs(rep.f[k + j]) ** 2 * (1 + abs(a0) ** 2) ** 2
    return out


def radius_r3(rep: R3Rep) -> RadiusResult:
    poly = radius_poly(rep)
    r0 = smallest_positive_root(poly)
    if r0 is None:  # impossible for valid data: P(0) > 0 and P -> -inf
        raise InvalidRepresentationError("radius polynomial has no positive root")
    m, k = rep.m, rep.k
    target = (rep.f[k] ** 2 * rep.g[m] ** 2).conjugate()
    gamma = complex(np.sqrt(target / abs(target)))
    fast = None
    if m == 1:
        fast = (1 + abs(rep.g[0]) ** 2) / abs(rep.g[1])
    return RadiusResult(float(r0), poly, fast, gamma, k, m)


def radius_certificate(rep: R3Rep, result: RadiusResult | None = None,
                       verify: bool = True) -> DestabCertificate | None:
    """One-term certificate ``gamma z^-(k+m)`` just beyond the radius bound.

    ``F_h`` of this test function equals ``(pi / 2) r^2k P_m(r)``, so it turns
    negative right after ``r0``.  Returns ``None`` when the data's cap is too
    small to evaluate it.
    """
    from .geometry import from_r3

    result = result or radius_r3(rep)
    d = from_r3(rep)
    order = result.k + result.m
    if 2 * order > d.degree_cap:
        return None
    phi = TestFunction.monomial(result.gamma, order)
    scale = jet_scale(d)
    for step in _STEPS:
        r = result.r0 * (1 + step)
        value = F_h(d, phi, r)
        if value < -_margin(scale, r, order):
            cert = DestabCertificate(phi, r, value, N=2 * order)
            return _verify(d, cert) if verify else cert
    return None
