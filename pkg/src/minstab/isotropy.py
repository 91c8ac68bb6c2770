"""Holomorphicity up to rigid motion, read off from the holomorphic jets.

Write ``dh/dz = sum_j c_j z^j`` with ``c_j`` in C^n and let
``g(u, v) = sum_i u_i v_i`` be the complex bilinear (not Hermitian) form.
The immersion is holomorphic for an orthogonal complex structure on an
affine subspace exactly when every ``g(c_m, c_k)`` vanishes.  In that case
the span ``L`` of the jets is isotropic and ``W = Re(L) + Im(L)`` carries a
complex structure ``J`` with ``L`` as its ``i``-eigenspace.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NotIsotropicError
from .geometry import WEData

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class GramTable:
    """``G[m, k] = g(c_m, c_k)`` for ``0 <= m, k <= N`` (exactly symmetric)."""

    G: np.ndarray
    N: int

    def antidiagonal(self, s: int) -> np.ndarray:
        """Row ``a_j = G[j, s-j]`` for ``j = 0..s`` (requires ``s <= N``)."""
        if s > self.N:
            raise ValueError(f"total degree {s} exceeds table size {self.N}")
        j = np.arange(s + 1)
        return self.G[j, s - j]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.G)))


def gram(d: WEData, N: int | None = None) -> GramTable:
    if N is None:
        N = d.degree_cap
    if N > d.degree_cap:
        raise ValueError(f"N={N} exceeds the data's degree cap {d.degree_cap}")
    C = d.jets(N)
    G = C @ C.T
    upper = np.triu(G)
    G = upper + np.triu(upper, 1).T
    G.setflags(write=False)
    return GramTable(G, N)


def jet_scale(d: WEData, N: int | None = None) -> float:
    """``(max_j |c_j|)^2`` with the Euclidean norm on C^n."""
    C = d.jets(N)
    return float(np.max(np.linalg.norm(C, axis=1))) ** 2


@dataclass(frozen=True)
class Isotropic:
    N: int
    max_abs: float


@dataclass(frozen=True)
class Violation:
    m: int
    k: int
    value: complex


def holomorphy_check(d: WEData, N: int | None = None, tol: float = DEFAULT_TOL):
    """Return :class:`Isotropic` or the first :class:`Violation`.

    Entries are scanned by total degree ``m + k`` ascending, then ``m``
    ascending with ``m <= k``.  An entry counts as zero when its modulus is at
    most ``tol * (max_j |c_j|)^2``.
    """
    table = gram(d, N)
    thresh = tol * jet_scale(d, table.N)
    for s in range(2 * table.N + 1):
        for m in range(max(0, s - table.N), s // 2 + 1):
            value = table.G[m, s - m]
            if abs(value) > thresh:
                return Violation(m, s - m, complex(value))
    return Isotropic(table.N, table.max_abs())


@dataclass(frozen=True)
class ComplexStructureJ:
    """Orthogonal complex structure on ``W`` in the basis ``basis`` (columns).

    ``matrix`` acts on coordinates with respect to ``basis``; the affine
    subspace containing the surface is ``translate + W``.
    """

    basis: np.ndarray
    matrix: np.ndarray
    translate: np.ndarray
    condition: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def metric(self) -> np.ndarray:
        """Euclidean Gram matrix of the basis vectors."""
        return self.basis.T @ self.basis

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply ``J`` to ambient vectors lying in ``W``."""
        coords = np.linalg.lstsq(self.basis, np.asarray(x, dtype=float), rcond=None)[0]
        return self.basis @ (self.matrix @ coords)

    def residuals(self, jets: np.ndarray) -> dict:
        """Max entrywise defects of ``J^2 = -I``, ``J^T M J = M`` and the eigenspace condition."""
        J, M = self.matrix, self.metric()
        eig = max((np.max(np.abs(self.apply(c.real) + c.imag)) for c in jets), default=0.0)
        return {
            "square": float(np.max(np.abs(J @ J + np.eye(self.dim)))),
            "orthogonal": float(np.max(np.abs(J.T @ M @ J - M))),
            "eigenspace": float(eig),
        }


def independent_jets(jets: np.ndarray, threshold: float = 1e-10) -> list[int]:
    """Greedy pivoting: indices of a maximal independent subset of the rows.

    A row joins the subset when its residual after projecting out the rows
    already chosen exceeds ``threshold`` times the largest row norm.
    """
    norms = np.linalg.norm(jets, axis=1)
    top = float(np.max(norms)) if norms.size else 0.0
    if top == 0.0:
        return []
    chosen, Q = [], np.zeros((jets.shape[1], 0), dtype=complex)
    for j, c in enumerate(jets):
        res = c - Q @ (Q.conj().T @ c)
        res = res - Q @ (Q.conj().T @ res)
        nr = np.linalg.norm(res)
        if nr > threshold * top:
            chosen.append(j)
            Q = np.column_stack([Q, res / nr])
    return chosen


def construct_J(d: WEData, N: int | None = None, tol: float = DEFAULT_TOL) -> ComplexStructureJ:
    """Build ``J`` with ``J Re(x) = -Im(x)`` for every ``x`` in the jet span ``L``.

    Raises :class:`NotIsotropicError` unless :func:`holomorphy_check` passes.
    """
    verdict = holomorphy_check(d, N, tol)
    if isinstance(verdict, Violation):
        raise NotIsotropicError(
            f"g(c_{verdict.m}, c_{verdict.k}) = {verdict.value:.3e} is not zero")
    jets = d.jets(verdict.N)
    lifts = jets[independent_jets(jets)]
    basis = np.column_stack([part for l in lifts for part in (l.real, l.imag)])
    # real-part system: Re(sum lam_b l_b) = u with lam_b = s_b + i t_b
    real_sys = np.column_stack([part for l in lifts for part in (l.real, -l.imag)])
    cond = float(np.linalg.cond(real_sys))
    if cond > 1e8:
        warnings.warn(f"lift system is ill-conditioned (cond={cond:.2e})", RuntimeWarning)
    st = np.linalg.lstsq(real_sys, basis, rcond=None)[0]
    s, t = st[0::2], st[1::2]
    imag_part = lifts.imag.T @ s + lifts.real.T @ t
    J = np.linalg.lstsq(basis, -imag_part, rcond=None)[0]
    return ComplexStructureJ(basis, J, d.base_point.copy(), cond)


def ek_matrix(N: int) -> np.ndarray:
    """Matrix sending ``(a_0..a_N)`` to ``(E_0..E_{N//2})``.

    ``E_k = sum_{j<k} (k-j) a_j + sum_{j<N-k} (N-k-j) a_j``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    M = np.zeros((N // 2 + 1, N + 1))
    for k in range(N // 2 + 1):
        j = np.arange(k)
        M[k, j] += k - j
        j = np.arange(N - k)
        M[k, j] += N - k - j
    return M


def ek_values(a, N: int | None = None) -> np.ndarray:
    """``E_0..E_{N//2}`` for a symmetric vector ``a`` (``a_j = a_{N-j}``)."""
    a = np.asarray(a, dtype=complex)
    if N is None:
        N = a.size - 1
    if a.size != N + 1:
        raise ValueError(f"expected {N + 1} entries, got {a.size}")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if not np.allclose(a, a[::-1], rtol=0, atol=1e-12 * max(scale, 1e-300)):
        raise ValueError("input must satisfy a_j = a_{N-j}")
    return ek_matrix(N) @ a


def symmetric_ek_matrix(N: int) -> np.ndarray:
    """:func:`ek_matrix` restricted to symmetric vectors, parametrised by ``a_0..a_{N//2}``."""
    S = np.zeros((N + 1, N // 2 + 1))
    for j in range(N + 1):
        S[j, min(j, N - j)] = 1.0
    return ek_matrix(N) @ S


def symmetric_vanishing_sigma(N: int) -> float:
    """Smallest singular value of :func:`symmetric_ek_matrix`."""
    return float(np.linalg.svd(symmetric_ek_matrix(N), compute_uv=False)[-1])


def symmetric_vanishing_solve(N: int, threshold: float = 1e-8) -> bool:
    """True when ``E_k = 0`` for all ``k`` forces a symmetric ``a`` to vanish."""
    return symmetric_vanishing_sigma(N) > threshold
