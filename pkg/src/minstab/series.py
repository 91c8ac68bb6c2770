"""Truncated complex power series.

A :class:`CoefficientSeries` stores the Taylor coefficients ``c_0, ..., c_N``
of a holomorphic function near the origin together with an explicit
truncation degree ``N`` (the *degree cap*).  Every coefficient with index in
``[0, N]`` is known exactly; indices outside that window read as zero.

Operations never extend or shrink the cap behind the caller's back.  When a
result would need a coefficient beyond the cap, :class:`CapacityError` is
raised instead of silently dropping it.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import CapacityError

DEFAULT_N_MAX = 32
N_MAX_ENV = "MINSTAB_N_MAX"

ComplexLike = Union[complex, float, int]


def default_n_max() -> int:
    """Global truncation degree, overridable through ``MINSTAB_N_MAX``."""
    raw = os.environ.get(N_MAX_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_N_MAX
    value = int(raw)
    if value < 0:
        raise ValueError(f"{N_MAX_ENV} must be a non-negative integer, got {raw!r}")
    return value


class CoefficientSeries:
    """Immutable truncated power series ``sum_j c_j z^j`` for ``0 <= j <= cap``.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients in increasing degree.  Shorter inputs are zero padded
        up to ``degree_cap``.
    degree_cap : int, optional
        Truncation degree.  Defaults to :func:`default_n_max`.

    Raises
    ------
    CapacityError
        If a nonzero coefficient sits above ``degree_cap``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[ComplexLike], degree_cap: int | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if degree_cap is None:
            degree_cap = default_n_max()
        degree_cap = int(degree_cap)
        if degree_cap < 0:
            raise ValueError("degree_cap must be >= 0")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if c.size > degree_cap + 1:
            if np.any(c[degree_cap + 1:] != 0):
                raise CapacityError(
                    f"series has nonzero coefficients above degree cap {degree_cap}")
            c = c[:degree_cap + 1]
        buf = np.zeros(degree_cap + 1, dtype=complex)
        buf[:c.size] = c
        buf.setflags(write=False)
        self._c = buf

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of length ``degree_cap + 1``."""
        return self._c

    @property
    def degree_cap(self) -> int:
        return self._c.size - 1

    @property
    def degree(self) -> int:
        """Index of the highest nonzero coefficient, or -1 for the zero series."""
        nz = np.flatnonzero(self._c)
        return int(nz[-1]) if nz.size else -1

    @property
    def order(self) -> int:
        """Index of the lowest nonzero coefficient, or -1 for the zero series."""
        nz = np.flatnonzero(self._c)
        return int(nz[0]) if nz.size else -1

    def is_zero(self) -> bool:
        return not np.any(self._c)

    def __getitem__(self, j: int) -> complex:
        if 0 <= j <= self.degree_cap:
            return complex(self._c[j])
        return 0j

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for indices ``lo..hi`` inclusive, zero outside the cap."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        a, b = max(lo, 0), min(hi, self.degree_cap)
        if a <= b:
            out[a - lo:b - lo + 1] = self._c[a:b + 1]
        return out

    def with_cap(self, degree_cap: int) -> "CoefficientSeries":
        """Same coefficients under a different cap (raises if that would drop data)."""
        return CoefficientSeries(self._c, degree_cap)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientSeries):
            return NotImplemented
        return self.degree_cap == other.degree_cap and np.array_equal(self._c, other._c)

    def __hash__(self) -> int:
        return hash((self.degree_cap, self._c.tobytes()))

    def allclose(self, other: "CoefficientSeries", rtol: float = 1e-12,
                 atol: float = 0.0) -> bool:
        n = max(self.degree_cap, other.degree_cap)
        return np.allclose(self.window(0, n), other.window(0, n), rtol=rtol, atol=atol)

    def __repr__(self) -> str:
        d = self.degree
        shown = ", ".join(f"{c:.6g}" for c in self._c[:max(d, 0) + 1])
        return f"CoefficientSeries([{shown}], degree_cap={self.degree_cap})"

    def __add__(self, other: "CoefficientSeries") -> "CoefficientSeries":
        cap = min(self.degree_cap, other.degree_cap)
        return CoefficientSeries(self.window(0, cap) + other.window(0, cap), cap)

    def __sub__(self, other: "CoefficientSeries") -> "CoefficientSeries":
        cap = min(self.degree_cap, other.degree_cap)
        return CoefficientSeries(self.window(0, cap) - other.window(0, cap), cap)

    def __neg__(self) -> "CoefficientSeries":
        return CoefficientSeries(-self._c, self.degree_cap)

    def scale(self, factor: ComplexLike) -> "CoefficientSeries":
        return CoefficientSeries(complex(factor) * self._c, self.degree_cap)


def as_series(obj, degree_cap: int | None = None) -> CoefficientSeries:
    if isinstance(obj, CoefficientSeries):
        return obj if degree_cap is None else obj.with_cap(degree_cap)
    return CoefficientSeries(obj, degree_cap)


def multiply(a: CoefficientSeries, b: CoefficientSeries, cap: int | None = None,
             truncate: bool = False) -> CoefficientSeries:
    """Cauchy product truncated at ``cap``.

    ``cap`` defaults to, and may not exceed, ``min(a.degree_cap, b.degree_cap)``
    since higher product coefficients depend on unknown input coefficients.
    Unless ``truncate`` is set, nonzero product terms above ``cap`` raise
    :class:`CapacityError`.
    """
    limit = min(a.degree_cap, b.degree_cap)
    if cap is None:
        cap = limit
    if cap > limit:
        raise CapacityError(f"product cap {cap} exceeds input caps (min {limit})")
    da, db = max(a.degree, 0), max(b.degree, 0)
    full = np.convolve(a.coeffs[:da + 1], b.coeffs[:db + 1])
    if not truncate and np.any(full[cap + 1:] != 0):
        raise CapacityError(
            f"product has degree {da + db} which exceeds the cap {cap}")
    return CoefficientSeries(full[:cap + 1], cap)


def evaluate(s: CoefficientSeries, z):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array)."""
    d = max(s.degree, 0)
    out = npoly.polyval(np.asarray(z, dtype=complex), s.coeffs[:d + 1])
    return complex(out) if np.ndim(out) == 0 else out


def derivative(s: CoefficientSeries) -> CoefficientSeries:
    """Termwise derivative; the cap drops by one (floored at zero)."""
    n = s.degree_cap
    if n == 0:
        return CoefficientSeries([0], 0)
    j = np.arange(1, n + 1)
    return CoefficientSeries(j * s.coeffs[1:], n - 1)


def antiderivative(s: CoefficientSeries) -> CoefficientSeries:
    """Antiderivative with zero constant term; the cap grows by exactly one."""
    n = s.degree_cap
    out = np.zeros(n + 2, dtype=complex)
    out[1:] = s.coeffs / np.arange(1, n + 2)
    return CoefficientSeries(out, n + 1)


def rescale_lemma(s: CoefficientSeries, r: float) -> CoefficientSeries:
    """Coefficient ``j`` becomes ``c_j r**j``.

    This is the normalisation used for the disk functional.  The derivative
    of ``z -> h(r z)`` would carry one more factor of ``r``; that global factor
    multiplies every value of the functional by ``r**2`` and never changes
    its sign, so it is left out on purpose.
    """
    if not r > 0:
        raise ValueError(f"rescaling radius must be positive, got {r}")
    powers = float(r) ** np.arange(s.degree_cap + 1)
    return CoefficientSeries(s.coeffs * powers, s.degree_cap)


def series_matrix(series: Sequence[CoefficientSeries], n_terms: int) -> np.ndarray:
    """Stack coefficients ``0..n_terms-1`` of each series as rows of an array."""
    return np.array([s.window(0, n_terms - 1) for s in series])
